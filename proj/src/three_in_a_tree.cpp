#include "stf/three_in_a_tree.hpp"

#include <algorithm>
#include <bit>

#include "stf/errors.hpp"
#include "stf/random.hpp"

namespace stf {

namespace {

struct Budget {
    long left;
    bool exhausted = false;
    bool spend() {
        if (--left < 0) exhausted = true;
        return !exhausted;
    }
};

enum class Verdict { found, none, unknown };

// ---------------------------------------------------------------------------
// Induced trees. A minimal induced tree through three terminals is a center c
// with induced legs to the terminals (two legs when c is itself a terminal).

struct TreeSearch {
    const Graph& g;
    const VertexSet& comp;
    const VertexSet& term;
    Budget& budget;
    int n;
    int center = -1;
    int need = 0;
    VertexSet tree;
    std::vector<int> leg_heads, leg_ends;

    TreeSearch(const Graph& g_, const VertexSet& comp_, const VertexSet& term_, Budget& b)
        : g(g_), comp(comp_), term(term_), budget(b), n(g_.size()) {}

    // Vertices that may join the leg currently ending at cur.
    VertexSet open_region(int cur) const {
        VertexSet blocked(n);
        for (int x : tree)
            if (x != cur) blocked |= closed_neighborhood(g, x);
        return comp - blocked;
    }

    // Extension candidates of cur, nearest to a free terminal first; those
    // that cannot reach one are dropped.
    std::vector<int> candidates(int cur) const {
        const VertexSet region = open_region(cur);
        VertexSet todo = g.neighbors(cur) & region;
        std::vector<int> out;
        VertexSet seen = term & region, layer = seen;
        while (layer.any() && todo.any()) {
            for (int x : layer & todo) out.push_back(x);
            todo -= layer;
            VertexSet next(n);
            for (int x : layer) next |= g.neighbors(x);
            layer = (next & region) - seen;
            seen |= layer;
        }
        return out;
    }

    bool extend(int cur) {
        if (!budget.spend()) return false;
        if (term.test(cur)) {
            leg_ends.push_back(cur);
            if (next_leg()) return true;
            leg_ends.pop_back();
            return false;
        }
        for (int x : candidates(cur)) {
            tree.set(x);
            if (extend(x)) return true;
            tree.reset(x);
            if (budget.exhausted) return false;
        }
        return false;
    }

    bool next_leg() {
        if (static_cast<int>(leg_ends.size()) == need) return true;
        VertexSet blocked(n);
        for (int x : tree)
            if (x != center) blocked |= closed_neighborhood(g, x);
        VertexSet heads = (g.neighbors(center) & comp) - blocked;
        int after = leg_heads.empty() ? -1 : leg_heads.back();
        for (int h : heads) {
            if (h <= after) continue;
            leg_heads.push_back(h);
            tree.set(h);
            if (extend(h)) return true;
            tree.reset(h);
            leg_heads.pop_back();
            if (budget.exhausted) return false;
        }
        return false;
    }

    Verdict run(std::optional<TreeCertificate>& out) {
        for (int c : comp) {
            center = c;
            need = term.test(c) ? 2 : 3;
            if ((term & comp).count() - (term.test(c) ? 1 : 0) < need) continue;
            tree = VertexSet(n);
            tree.set(c);
            leg_heads.clear();
            leg_ends.clear();
            if (next_leg()) {
                TreeCertificate cert;
                cert.tree = tree;
                std::vector<int> ts = leg_ends;
                if (term.test(c)) ts.push_back(c);
                std::sort(ts.begin(), ts.end());
                for (int i = 0; i < 3; ++i) cert.terminals[i] = ts[i];
                out = cert;
                return Verdict::found;
            }
            if (budget.exhausted) return Verdict::unknown;
        }
        return Verdict::none;
    }
};

// Deletes vertices one at a time, in the given order, while the three
// terminals stay connected. The minimal result is often already a tree.
std::optional<TreeCertificate> shrink_to_tree(const Graph& g, const VertexSet& comp, const std::array<int, 3>& ts,
                                              const std::vector<int>& order) {
    const int n = g.size();
    auto joined = [&](const VertexSet& s) {
        VertexSet seen(n, {ts[0]}), frontier = seen;
        while (frontier.any()) {
            VertexSet next(n);
            for (int x : frontier) next |= g.neighbors(x);
            frontier = (next & s) - seen;
            seen |= frontier;
        }
        return seen.test(ts[1]) && seen.test(ts[2]) ? std::optional<VertexSet>(seen) : std::nullopt;
    };
    auto start = joined(comp);
    if (!start) return std::nullopt;
    VertexSet s = *start;
    for (int v : order) {
        if (!s.test(v) || v == ts[0] || v == ts[1] || v == ts[2]) continue;
        s.reset(v);
        if (auto r = joined(s))
            s = *r;
        else
            s.set(v);
    }
    if (!is_induced_tree(g, s)) return std::nullopt;
    return TreeCertificate{s, ts};
}

// Shortest path from c to z inside allowed whose vertices after the second
// avoid N[c]. Empty when there is none.
std::vector<int> leg_from(const Graph& g, const VertexSet& allowed, int c, int z) {
    const int n = g.size();
    const VertexSet near = closed_neighborhood(g, c);
    std::vector<int> parent(n, -1);
    VertexSet seen(n, {c});
    std::vector<int> queue{c};
    for (std::size_t i = 0; i < queue.size(); ++i) {
        const int u = queue[i];
        VertexSet next = (g.neighbors(u) & allowed) - seen;
        if (u != c) next -= near;
        for (int w : next) {
            seen.set(w);
            parent[w] = u;
            if (w == z) {
                std::vector<int> path{z};
                while (path.back() != c) path.push_back(parent[path.back()]);
                std::reverse(path.begin(), path.end());
                return path;
            }
            queue.push_back(w);
        }
    }
    return {};
}

// Tries every vertex as the branching point and grows greedy shortest legs
// to the terminals, each one avoiding the neighbourhoods of the earlier ones.
std::optional<TreeCertificate> greedy_legs(const Graph& g, const VertexSet& comp, const std::array<int, 3>& ts) {
    static constexpr std::array<std::array<int, 3>, 6> perms{
        {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
    const int n = g.size();
    for (int c : comp) {
        for (const auto& p : perms) {
            VertexSet tree(n, {c});
            VertexSet allowed = comp;
            bool ok = true;
            for (int i : p) {
                const int z = ts[i];
                if (z == c) continue;
                if (!allowed.test(z)) {
                    ok = false;
                    break;
                }
                auto leg = leg_from(g, allowed, c, z);
                if (leg.empty()) {
                    ok = false;
                    break;
                }
                VertexSet body(n);
                for (std::size_t k = 1; k < leg.size(); ++k) body.set(leg[k]);
                tree |= body;
                allowed -= closed_neighborhood(g, body);
            }
            if (ok && is_induced_tree(g, tree)) return TreeCertificate{tree, ts};
        }
    }
    return std::nullopt;
}

std::optional<TreeCertificate> quick_tree(const Graph& g, const VertexSet& comp, const VertexSet& term) {
    const std::vector<int> zs = term.to_vector();
    std::vector<std::vector<int>> orders;
    std::vector<int> asc = comp.to_vector();
    orders.push_back(asc);
    orders.emplace_back(asc.rbegin(), asc.rend());
    std::vector<int> by_degree = asc;
    std::stable_sort(by_degree.begin(), by_degree.end(),
                     [&](int a, int b) { return (g.neighbors(a) & comp).count() > (g.neighbors(b) & comp).count(); });
    orders.push_back(by_degree);
    Rng rng(0x5eed);
    for (int k = 0; k < 4; ++k) {
        rng.shuffle(asc);
        orders.push_back(asc);
    }
    const int z = static_cast<int>(zs.size());
    for (int a = 0; a < z; ++a)
        for (int b = a + 1; b < z; ++b)
            for (int c = b + 1; c < z; ++c)
                if (auto t = greedy_legs(g, comp, {zs[a], zs[b], zs[c]})) return t;
    for (const auto& order : orders)
        for (int a = 0; a < z; ++a)
            for (int b = a + 1; b < z; ++b)
                for (int c = b + 1; c < z; ++c)
                    if (auto t = shrink_to_tree(g, comp, {zs[a], zs[b], zs[c]}, order)) return t;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Decompositions, built by placing vertices one at a time in BFS order. Side
// memberships are added lazily, only when an edge of g needs them. An H-vertex
// is fresh when it is the unsided end of a single strip; fresh ends may later
// be identified with other H-vertices.

struct State {
    std::vector<char> locked, dead;
    std::vector<int> lock_term;
    std::vector<VertexSet> eta;
    std::vector<std::vector<int>> inc;
    std::vector<std::array<int, 2>> ends;  // {-1,-1} for a removed strip
    std::vector<VertexSet> all, side0, side1;
    std::vector<std::array<int, 3>> tris;
    std::vector<VertexSet> tset;
    std::vector<signed char> kind;  // 0 unplaced, 1 eta(x), 2 strip, 3 triangle
    std::vector<int> id;
    VertexSet placed;
};

class Builder {
public:
    Builder(const Graph& g, const VertexSet& comp, const VertexSet& term, Budget& budget)
        : g_(g), comp_(comp), term_(term), budget_(budget), n_(g.size()) {}

    Verdict run(Esd& out) {
        order_.clear();
        int root = (comp_ & term_).first();
        VertexSet seen(n_);
        seen.set(root);
        order_.push_back(root);
        for (std::size_t i = 0; i < order_.size(); ++i)
            for (int x : g_.neighbors(order_[i]) & comp_)
                if (!seen.test(x)) {
                    seen.set(x);
                    order_.push_back(x);
                }
        State s;
        s.kind.assign(n_, 0);
        s.id.assign(n_, -1);
        s.placed = VertexSet(n_);
        int leaf = new_h(s), far = new_h(s);
        int e = add_e(s, leaf, far);
        s.locked[leaf] = 1;
        s.lock_term[leaf] = root;
        place_e(s, root, e);
        side(s, e, leaf).set(root);
        if (dfs(1, s)) {
            out = assemble(*result_);
            return Verdict::found;
        }
        return budget_.exhausted ? Verdict::unknown : Verdict::none;
    }

private:
    const Graph& g_;
    const VertexSet& comp_;
    const VertexSet& term_;
    Budget& budget_;
    int n_;
    std::vector<int> order_;
    std::optional<State> result_;

    // -- structure helpers ---------------------------------------------------

    int new_h(State& s) {
        s.locked.push_back(0);
        s.dead.push_back(0);
        s.lock_term.push_back(-1);
        s.eta.emplace_back(n_);
        s.inc.emplace_back();
        return static_cast<int>(s.eta.size()) - 1;
    }
    static int other(const State& s, int e, int h) { return s.ends[e][0] == h ? s.ends[e][1] : s.ends[e][0]; }
    static bool has_end(const State& s, int e, int h) { return s.ends[e][0] == h || s.ends[e][1] == h; }
    static VertexSet& side(State& s, int e, int h) { return s.ends[e][0] == h ? s.side0[e] : s.side1[e]; }
    static const VertexSet& side(const State& s, int e, int h) {
        return s.ends[e][0] == h ? s.side0[e] : s.side1[e];
    }
    static int edge_between(const State& s, int a, int b) {
        for (int e : s.inc[a])
            if (other(s, e, a) == b) return e;
        return -1;
    }
    static bool is_fresh(const State& s, int e, int h) {
        return has_end(s, e, h) && s.inc[h].size() == 1 && !s.locked[h] && side(s, e, h).empty();
    }

    void add_triangles_for(State& s, int a, int b) {
        for (int e : s.inc[a]) {
            int c = other(s, e, a);
            if (c == b || edge_between(s, c, b) == -1) continue;
            std::array<int, 3> t{a, b, c};
            std::sort(t.begin(), t.end());
            if (std::find(s.tris.begin(), s.tris.end(), t) != s.tris.end()) continue;
            s.tris.push_back(t);
            s.tset.emplace_back(n_);
        }
    }

    int add_e(State& s, int a, int b) {
        s.ends.push_back({a, b});
        s.all.emplace_back(n_);
        s.side0.emplace_back(n_);
        s.side1.emplace_back(n_);
        int e = static_cast<int>(s.ends.size()) - 1;
        s.inc[a].push_back(e);
        s.inc[b].push_back(e);
        add_triangles_for(s, a, b);
        return e;
    }

    // Identifies the fresh end f of its strip with h.
    bool merge(State& s, int f, int h) {
        if (f == h || s.dead[h] || s.locked[h] || s.inc[f].size() != 1) return false;
        int e = s.inc[f][0];
        if (!is_fresh(s, e, f)) return false;
        int a = other(s, e, f);
        if (a == h || edge_between(s, a, h) != -1) return false;
        (s.ends[e][0] == f ? s.ends[e][0] : s.ends[e][1]) = h;
        s.inc[f].clear();
        s.inc[h].push_back(e);
        s.dead[f] = 1;
        for (int x : s.eta[f]) s.id[x] = h;
        s.eta[h] |= s.eta[f];
        s.eta[f].clear();
        add_triangles_for(s, a, h);
        return true;
    }

    // Joins strips e1 and e2 through their fresh ends into one strip.
    bool unify(State& s, int e1, int f1, int e2, int f2) {
        if (!is_fresh(s, e1, f1) || !is_fresh(s, e2, f2)) return false;
        if (s.eta[f1].any() || s.eta[f2].any()) return false;
        int a1 = other(s, e1, f1), a2 = other(s, e2, f2);
        if (a1 == a2 || edge_between(s, a1, a2) != -1) return false;
        const VertexSet moved_side = side(s, e2, a2);
        const VertexSet moved = s.all[e2];
        for (int x : moved) s.id[x] = e1;
        auto& ia2 = s.inc[a2];
        ia2.erase(std::find(ia2.begin(), ia2.end(), e2));
        s.inc[f2].clear();
        s.ends[e2] = {-1, -1};
        s.all[e2].clear();
        s.side0[e2].clear();
        s.side1[e2].clear();
        (s.ends[e1][0] == f1 ? s.ends[e1][0] : s.ends[e1][1]) = a2;
        s.inc[f1].clear();
        s.dead[f1] = s.dead[f2] = 1;
        ia2.push_back(e1);
        s.all[e1] |= moved;
        side(s, e1, a2) = moved_side;
        add_triangles_for(s, a1, a2);
        return true;
    }

    static void place_v(State& s, int v, int h) {
        s.kind[v] = 1;
        s.id[v] = h;
        s.eta[h].set(v);
        s.placed.set(v);
    }
    static void place_e(State& s, int v, int e) {
        s.kind[v] = 2;
        s.id[v] = e;
        s.all[e].set(v);
        s.placed.set(v);
    }
    static void place_t(State& s, int v, int t) {
        s.kind[v] = 3;
        s.id[v] = t;
        s.tset[t].set(v);
        s.placed.set(v);
    }
    static bool promote(State& s, int x, int h) {
        if (s.kind[x] != 2) return false;
        int e = s.id[x];
        if (!has_end(s, e, h)) return false;
        if (s.locked[h] && s.lock_term[h] != x) return false;
        side(s, e, h).set(x);
        return true;
    }

    VertexSet sides_at(const State& s, int h) const {
        VertexSet out(n_);
        for (int e : s.inc[h]) out |= side(s, e, h);
        return out;
    }
    bool tri_has_edge(const State& s, int t, int e) const {
        const auto& c = s.tris[t];
        auto in = [&](int h) { return h == c[0] || h == c[1] || h == c[2]; };
        return in(s.ends[e][0]) && in(s.ends[e][1]);
    }

    VertexSet allowed_of(const State& s, int u, VertexSet* required = nullptr) const {
        VertexSet out(n_);
        if (s.kind[u] == 1) {
            int h = s.id[u];
            out = s.eta[h] | sides_at(s, h);
        } else if (s.kind[u] == 2) {
            int e = s.id[u];
            out = s.all[e];
            int flags = 0;
            for (int i = 0; i < 2; ++i) {
                int h = s.ends[e][i];
                if (!(i == 0 ? s.side0[e] : s.side1[e]).test(u)) continue;
                ++flags;
                VertexSet at = sides_at(s, h);
                out |= at | s.eta[h];
                if (required) *required |= at - s.all[e];
            }
            if (flags == 2)
                for (std::size_t t = 0; t < s.tris.size(); ++t)
                    if (tri_has_edge(s, static_cast<int>(t), e)) out |= s.tset[t];
        } else if (s.kind[u] == 3) {
            int t = s.id[u];
            out = s.tset[t];
            const auto& c = s.tris[t];
            for (int i = 0; i < 3; ++i) {
                int e = edge_between(s, c[i], c[(i + 1) % 3]);
                out |= s.side0[e] & s.side1[e];
            }
        }
        return out;
    }

    bool consistent(const State& s) const {
        for (int u : s.placed) {
            VertexSet req(n_);
            VertexSet ok = allowed_of(s, u, &req);
            if (!((g_.neighbors(u) & s.placed).subset_of(ok))) return false;
            if (!req.subset_of(g_.neighbors(u))) return false;
        }
        return true;
    }

    // -- search ----------------------------------------------------------------

    bool dfs(std::size_t k, State& s) {
        if (!budget_.spend()) return false;
        if (k == order_.size()) {
            result_ = s;
            return true;
        }
        const int v = order_[k];
        std::vector<int> nbrs = (g_.neighbors(v) & s.placed).to_vector();
        int pivot = -1;
        for (int u : nbrs)
            if (pivot == -1 || k_index(u) < k_index(pivot)) pivot = u;
        std::vector<int> rest;
        for (int u : nbrs)
            if (u != pivot) rest.push_back(u);
        std::vector<State> cands;
        if (term_.test(v))
            terminal_candidates(s, v, pivot, cands);
        else
            candidates(s, v, pivot, cands);
        for (auto& c : cands) {
            if (satisfy(c, v, rest, 0, k)) return true;
            if (budget_.exhausted) return false;
        }
        return false;
    }

    std::size_t k_index(int v) const {
        return static_cast<std::size_t>(std::find(order_.begin(), order_.end(), v) - order_.begin());
    }

    bool satisfy(State& s, int v, const std::vector<int>& rest, std::size_t i, std::size_t k) {
        if (!budget_.spend()) return false;
        if (i == rest.size()) {
            if (!consistent(s)) return false;
            return dfs(k + 1, s);
        }
        const int w = rest[i];
        if (allowed_of(s, v).test(w)) return satisfy(s, v, rest, i + 1, k);
        std::vector<State> opts;
        pair_options(s, v, w, opts);
        for (auto& o : opts) {
            if (satisfy(o, v, rest, i + 1, k)) return true;
            if (budget_.exhausted) return false;
        }
        return false;
    }

    void pair_options(const State& s, int v, int w, std::vector<State>& out) {
        const int kv = s.kind[v], kw = s.kind[w];
        if (kv == 2 && kw == 2) {
            const int ev = s.id[v], ew = s.id[w];
            for (int h : s.ends[ev])
                if (has_end(s, ew, h)) {
                    State c = s;
                    if (promote(c, v, h) && promote(c, w, h)) out.push_back(std::move(c));
                    return;
                }
            for (int r = 0; r < 2; ++r) {
                const int ea = r == 0 ? ev : ew, eb = r == 0 ? ew : ev;
                for (int f : s.ends[ea]) {
                    if (!is_fresh(s, ea, f)) continue;
                    for (int h : s.ends[eb]) {
                        State c = s;
                        if (merge(c, f, h) && promote(c, v, h) && promote(c, w, h)) out.push_back(std::move(c));
                    }
                }
            }
            for (int f1 : s.ends[ev])
                for (int f2 : s.ends[ew]) {
                    State c = s;
                    if (unify(c, ev, f1, ew, f2)) out.push_back(std::move(c));
                }
        } else if (kv == 2 && kw == 1) {
            const int ev = s.id[v], h = s.id[w];
            if (has_end(s, ev, h)) {
                State c = s;
                if (promote(c, v, h)) out.push_back(std::move(c));
                return;
            }
            for (int f : s.ends[ev]) {
                State c = s;
                if (merge(c, f, h) && promote(c, v, h)) out.push_back(std::move(c));
            }
        } else if (kv == 1 && kw == 2) {
            const int ew = s.id[w], h = s.id[v];
            if (has_end(s, ew, h)) {
                State c = s;
                if (promote(c, w, h)) out.push_back(std::move(c));
                return;
            }
            for (int f : s.ends[ew]) {
                State c = s;
                if (merge(c, f, h) && promote(c, w, h)) out.push_back(std::move(c));
            }
        } else if (kv == 2 && kw == 3) {
            if (tri_has_edge(s, s.id[w], s.id[v])) {
                State c = s;
                const auto en = s.ends[s.id[v]];
                if (promote(c, v, en[0]) && promote(c, v, en[1])) out.push_back(std::move(c));
            }
        } else if (kv == 3 && kw == 2) {
            if (tri_has_edge(s, s.id[v], s.id[w])) {
                State c = s;
                const auto en = s.ends[s.id[w]];
                if (promote(c, w, en[0]) && promote(c, w, en[1])) out.push_back(std::move(c));
            }
        }
    }

    // Strips with a fresh end, other than those touching h.
    std::vector<std::pair<int, int>> fresh_strips_away_from(const State& s, int h) const {
        std::vector<std::pair<int, int>> out;
        for (int e = 0; e < static_cast<int>(s.ends.size()); ++e) {
            if (s.ends[e][0] < 0 || has_end(s, e, h)) continue;
            for (int f : s.ends[e])
                if (is_fresh(s, e, f)) out.emplace_back(e, f);
        }
        return out;
    }

    // Hubs of u's strip, sided ends first.
    std::vector<int> hubs_of(const State& s, int u) const {
        const int e = s.id[u];
        std::vector<int> hs;
        for (int i = 0; i < 2; ++i)
            if ((i == 0 ? s.side0[e] : s.side1[e]).test(u)) hs.push_back(s.ends[e][i]);
        for (int i = 0; i < 2; ++i)
            if (std::find(hs.begin(), hs.end(), s.ends[e][i]) == hs.end()) hs.push_back(s.ends[e][i]);
        return hs;
    }

    // v joins a strip at hub h next to u (u already prepared by the caller).
    void strip_moves_at(const State& base, int v, int h, int skip_edge, std::vector<State>& out) {
        if (base.locked[h]) return;
        {
            State c = base;
            int f = new_h(c);
            int e = add_e(c, h, f);
            place_e(c, v, e);
            side(c, e, h).set(v);
            out.push_back(std::move(c));
        }
        for (int e : base.inc[h]) {
            if (e == skip_edge) continue;
            State c = base;
            place_e(c, v, e);
            side(c, e, h).set(v);
            out.push_back(std::move(c));
        }
        for (auto [e, f] : fresh_strips_away_from(base, h)) {
            if (e == skip_edge) continue;
            State c = base;
            if (!merge(c, f, h)) continue;
            place_e(c, v, e);
            side(c, e, h).set(v);
            out.push_back(std::move(c));
        }
    }

    void candidates(const State& s, int v, int u, std::vector<State>& out) {
        if (s.kind[u] == 1) {
            const int h = s.id[u];
            strip_moves_at(s, v, h, -1, out);
            State c = s;
            place_v(c, v, h);
            out.push_back(std::move(c));
        } else if (s.kind[u] == 2) {
            const int e = s.id[u];
            const auto hs = hubs_of(s, u);
            for (int h : hs) {
                State c = s;
                if (!promote(c, u, h)) continue;
                strip_moves_at(c, v, h, e, out);
            }
            {
                State c = s;
                place_e(c, v, e);
                out.push_back(std::move(c));
            }
            for (int h : hs) {
                State c = s;
                if (!promote(c, u, h)) continue;
                place_v(c, v, h);
                out.push_back(std::move(c));
            }
            for (int t = 0; t < static_cast<int>(s.tris.size()); ++t) {
                if (!tri_has_edge(s, t, e)) continue;
                State c = s;
                if (!promote(c, u, s.ends[e][0]) || !promote(c, u, s.ends[e][1])) continue;
                place_t(c, v, t);
                out.push_back(std::move(c));
            }
        } else if (s.kind[u] == 3) {
            const int t = s.id[u];
            {
                State c = s;
                place_t(c, v, t);
                out.push_back(std::move(c));
            }
            const auto& cr = s.tris[t];
            for (int i = 0; i < 3; ++i) {
                int e = edge_between(s, cr[i], cr[(i + 1) % 3]);
                State c = s;
                place_e(c, v, e);
                c.side0[e].set(v);
                c.side1[e].set(v);
                out.push_back(std::move(c));
            }
        }
    }

    static bool lockable(const State& s, int e, int f) {
        return has_end(s, e, f) && s.inc[f].size() == 1 && !s.locked[f] && side(s, e, f).empty();
    }

    // A terminal goes into a strip whose other end is a new or fresh leaf locked to it.
    void terminal_moves_at(const State& base, int z, int h, int skip_edge, std::vector<State>& out) {
        if (base.locked[h]) return;
        {
            State c = base;
            int leaf = new_h(c);
            int e = add_e(c, leaf, h);
            c.locked[leaf] = 1;
            c.lock_term[leaf] = z;
            place_e(c, z, e);
            side(c, e, h).set(z);
            side(c, e, leaf).set(z);
            out.push_back(std::move(c));
        }
        for (int e : base.inc[h]) {
            if (e == skip_edge) continue;
            int f = other(base, e, h);
            if (!lockable(base, e, f)) continue;
            State c = base;
            c.locked[f] = 1;
            c.lock_term[f] = z;
            place_e(c, z, e);
            side(c, e, h).set(z);
            side(c, e, f).set(z);
            out.push_back(std::move(c));
        }
    }

    void terminal_candidates(const State& s, int z, int u, std::vector<State>& out) {
        if (s.kind[u] == 1) {
            terminal_moves_at(s, z, s.id[u], -1, out);
        } else if (s.kind[u] == 2) {
            const int e = s.id[u];
            for (int h : hubs_of(s, u)) {
                State c = s;
                if (!promote(c, u, h)) continue;
                terminal_moves_at(c, z, h, e, out);
            }
            for (int f : s.ends[e]) {
                if (!lockable(s, e, f)) continue;
                State c = s;
                c.locked[f] = 1;
                c.lock_term[f] = z;
                place_e(c, z, e);
                side(c, e, f).set(z);
                out.push_back(std::move(c));
            }
        }
    }

    Esd assemble(const State& s) const {
        Esd esd(n_);
        std::vector<int> map(s.eta.size(), -1);
        for (std::size_t h = 0; h < s.eta.size(); ++h)
            if (!s.dead[h]) map[h] = esd.add_vertex(s.eta[h]);
        for (std::size_t e = 0; e < s.ends.size(); ++e) {
            if (s.ends[e][0] < 0) continue;
            esd.add_edge(map[s.ends[e][0]], map[s.ends[e][1]], s.all[e], s.side0[e], s.side1[e]);
        }
        for (std::size_t t = 0; t < s.tris.size(); ++t) {
            int ti = esd.triangle_index(map[s.tris[t][0]], map[s.tris[t][1]], map[s.tris[t][2]]);
            require(ti >= 0, "three-in-a-tree: lost a triangle while assembling");
            esd.triangles()[ti].set = s.tset[t];
        }
        return esd;
    }
};

// Places the decomposition `part` (over the same host) into `into`.
// When comp is a line graph and every terminal lies in at most one clique of
// its root, the root graph itself is the decomposition: each terminal gets a
// private leaf.
std::optional<Esd> line_graph_decomposition(const Graph& g, const VertexSet& comp, const VertexSet& term) {
    auto cover = krausz_cover(g, comp);
    if (!cover) return std::nullopt;
    for (int z : term)
        if (cover->of[z].size() > 1) return std::nullopt;
    const int n = g.size();
    Esd esd(n);
    for (std::size_t c = 0; c < cover->cliques.size(); ++c) esd.add_vertex();
    for (int v : comp) {
        std::vector<int> ends = cover->of[v];
        while (ends.size() < 2) ends.push_back(esd.add_vertex());
        const VertexSet one(n, {v});
        esd.add_edge(ends[0], ends[1], one, one, one);
    }
    return esd;
}

void append(Esd& into, const Esd& part) {
    const int base = into.h_size();
    for (int x = 0; x < part.h_size(); ++x) into.add_vertex(part.vertex_set(x));
    for (const auto& e : part.edges()) into.add_edge(base + e.x, base + e.y, e.all, e.side_x, e.side_y);
    for (const auto& t : part.triangles()) {
        int ti = into.triangle_index(base + t.x, base + t.y, base + t.z);
        into.triangles()[ti].set = t.set;
    }
}

}  // namespace

std::vector<std::string> check_tree_certificate(const Graph& g, const VertexSet& z, const TreeCertificate& cert) {
    std::vector<std::string> out;
    if (!is_induced_tree(g, cert.tree)) out.push_back("vertex set does not induce a tree");
    const auto& ts = cert.terminals;
    if (ts[0] == ts[1] || ts[0] == ts[2] || ts[1] == ts[2]) out.push_back("terminals are not distinct");
    for (int v : ts)
        if (!z.contains(v) || !cert.tree.contains(v)) out.push_back("terminal " + std::to_string(v) + " invalid");
    return out;
}

std::vector<std::string> check_terminal_decomposition(const Graph& g, const VertexSet& domain, const VertexSet& z,
                                                      const Esd& esd) {
    std::vector<std::string> out;
    for (const auto& v : validate(g, esd, domain)) out.push_back(v.str());
    if (!is_rigid(esd)) out.push_back("decomposition is not rigid");
    std::vector<int> leaves;
    for (int v : z) {
        int x = peripheral_leaf(esd, v);
        if (x < 0) {
            out.push_back("terminal " + std::to_string(v) + " is not peripheral");
            continue;
        }
        if (std::find(leaves.begin(), leaves.end(), x) != leaves.end())
            out.push_back("terminal " + std::to_string(v) + " shares its leaf");
        leaves.push_back(x);
    }
    return out;
}

std::optional<TreeCertificate> brute_tree_oracle(const Graph& g, const VertexSet& z, int cap) {
    const int n = g.size();
    if (n > cap) throw CapExceeded("tree oracle supports at most " + std::to_string(cap) + " vertices");
    std::optional<TreeCertificate> best;
    int best_size = n + 1;
    std::uint64_t zmask = 0;
    for (int v : z) zmask |= std::uint64_t{1} << v;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
        int k = std::popcount(mask);
        if (k >= best_size || std::popcount(mask & zmask) < 3) continue;
        VertexSet s(n);
        for (int v = 0; v < n; ++v)
            if (mask >> v & 1u) s.set(v);
        if (!is_induced_tree(g, s)) continue;
        TreeCertificate c;
        c.tree = s;
        int i = 0;
        for (int v : s & z)
            if (i < 3) c.terminals[i++] = v;
        best = c;
        best_size = k;
    }
    return best;
}

ThreeInATreeOutcome three_in_a_tree(const Graph& g, const VertexSet& domain, const VertexSet& z,
                                    const ThreeInATreeOptions& opt) {
    check_ids(g, domain);
    check_ids(g, z);
    if (!z.subset_of(domain)) throw InputError("terminals must lie in the domain");
    const int n = g.size();
    ThreeInATreeOutcome res;
    Esd esd(n);
    std::vector<VertexSet> single;  // components holding exactly one terminal
    for (const auto& comp : connected_components(g, domain)) {
        const VertexSet zc = comp & z;
        const int k = zc.count();
        if (k == 0) {
            esd.add_vertex(comp);
            continue;
        }
        if (k == 1) {
            single.push_back(comp);
            continue;
        }
        if (k == 2) {
            int a = esd.add_vertex(), b = esd.add_vertex();
            esd.add_edge(a, b, comp, VertexSet(n, {zc.first()}), VertexSet(n, {zc.next(zc.first())}));
            continue;
        }
        if (auto quick = quick_tree(g, comp, zc)) {
            res.tree = quick;
            if (opt.self_check) {
                auto issues = check_tree_certificate(g, z, *res.tree);
                require(issues.empty(), "three-in-a-tree: bad tree certificate");
            }
            return res;
        }
        Esd part;
        bool done = false;
        if (auto line = line_graph_decomposition(g, comp, zc)) {
            part = std::move(*line);
            done = true;
        }
        bool no_tree = false, no_esd = false;
        long budget = opt.initial_budget, spent = 0;
        while (!done) {
            if (spent > opt.max_budget) throw CapExceeded("three-in-a-tree search budget exhausted");
            if (!no_tree) {
                Budget b{no_esd ? opt.max_budget : budget};
                std::optional<TreeCertificate> cert;
                Verdict r = TreeSearch(g, comp, zc, b).run(cert);
                spent += (no_esd ? opt.max_budget : budget) - std::max(0L, b.left);
                if (r == Verdict::found) {
                    res.tree = cert;
                    if (opt.self_check) {
                        auto issues = check_tree_certificate(g, z, *res.tree);
                        require(issues.empty(), "three-in-a-tree: bad tree certificate: " +
                                                    (issues.empty() ? std::string() : issues[0]));
                    }
                    return res;
                }
                if (r == Verdict::none) no_tree = true;
            }
            if (!no_esd) {
                Budget b{no_tree ? opt.max_budget : budget};
                Verdict r = Builder(g, comp, zc, b).run(part);
                spent += (no_tree ? opt.max_budget : budget) - std::max(0L, b.left);
                if (r == Verdict::found) {
                    done = true;
                    break;
                }
                if (r == Verdict::none) no_esd = true;
            }
            if (no_tree && no_esd)
                throw InvariantViolation("three-in-a-tree: neither a tree nor a decomposition was found");
            budget *= 2;
        }
        part = fold_leaves(rigidify(part), zc);
        append(esd, part);
    }
    // Components with one terminal are paired into shared strips.
    for (std::size_t i = 0; i < single.size(); i += 2) {
        int a = esd.add_vertex(), b = esd.add_vertex();
        int za = (single[i] & z).first();
        if (i + 1 < single.size()) {
            int zb = (single[i + 1] & z).first();
            esd.add_edge(a, b, single[i] | single[i + 1], VertexSet(n, {za}), VertexSet(n, {zb}));
        } else {
            esd.add_edge(a, b, single[i], VertexSet(n, {za}), VertexSet(n, {za}));
        }
    }
    res.esd = esd;
    if (opt.self_check) {
        auto issues = check_terminal_decomposition(g, domain, z, res.esd);
        require(issues.empty(), "three-in-a-tree: decomposition failed self-check: " +
                                    (issues.empty() ? std::string() : issues[0]));
    }
    return res;
}

ThreeInATreeOutcome three_in_a_tree(const Graph& g, const VertexSet& z, const ThreeInATreeOptions& opt) {
    return three_in_a_tree(g, g.all(), z, opt);
}

}  // namespace stf
