#include "stf/patterns.hpp"

#include <algorithm>
#include <cstdio>

#include "stf/errors.hpp"

namespace stf {

VertexSet SubdividedClaw::vertices(int n) const {
    VertexSet s(n);
    s.set(center);
    for (const auto& leg : legs)
        for (int v : leg) s.set(v);
    return s;
}

std::vector<int> SubdividedClaw::sorted_vertices() const {
    std::vector<int> out{center};
    for (const auto& leg : legs) out.insert(out.end(), leg.begin(), leg.end());
    std::sort(out.begin(), out.end());
    return out;
}

bool is_induced_sttt(const Graph& g, const SubdividedClaw& c, int t) {
    if (t < 1 || c.center < 0 || c.center >= g.size()) return false;
    std::vector<int> seq_all{c.center};
    for (const auto& leg : c.legs) {
        if (static_cast<int>(leg.size()) != t) return false;
        seq_all.insert(seq_all.end(), leg.begin(), leg.end());
    }
    for (int v : seq_all)
        if (v < 0 || v >= g.size()) return false;
    // Expected adjacency: center to each leg head, consecutive leg vertices.
    auto expected = [&](int i, int j) {
        auto pos = [&](int k) -> std::pair<int, int> {  // (leg, index) with leg -1 for the center
            if (k == 0) return {-1, -1};
            return {(k - 1) / t, (k - 1) % t};
        };
        auto [li, ii] = pos(i);
        auto [lj, ij] = pos(j);
        if (li == -1) return ij == 0;
        if (lj == -1) return ii == 0;
        return li == lj && (ii - ij == 1 || ij - ii == 1);
    };
    const int k = static_cast<int>(seq_all.size());
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            if (seq_all[i] == seq_all[j]) return false;
            if (g.adjacent(seq_all[i], seq_all[j]) != expected(i, j)) return false;
        }
    return true;
}

bool induces_sttt(const Graph& g, const VertexSet& s, int t) {
    if (s.count() != 3 * t + 1 || !is_induced_tree(g, s)) return false;
    int center = -1;
    for (int v : s) {
        int d = (g.neighbors(v) & s).count();
        if (d > 3) return false;
        if (d == 3) {
            if (center != -1) return false;
            center = v;
        }
    }
    if (center == -1) return false;
    // Walk each leg from the center; every leg must have exactly t vertices.
    for (int head : g.neighbors(center) & s) {
        int prev = center, cur = head, len = 1;
        while (true) {
            VertexSet nx = g.neighbors(cur) & s;
            nx.reset(prev);
            if (nx.empty()) break;
            prev = cur;
            cur = nx.first();
            ++len;
        }
        if (len != t) return false;
    }
    return true;
}

namespace {

struct ClawSearch {
    const Graph& g;
    const VertexSet& domain;
    int t;
    int center = -1;
    VertexSet used;
    std::array<std::vector<int>, 3> legs;

    // Vertices that may still start a leg: center neighbors untouched by placed leg vertices.
    int free_heads() const {
        VertexSet nbr_used(g.size());
        for (int i = 0; i < 3; ++i)
            for (int v : legs[i]) nbr_used |= g.neighbors(v);
        VertexSet h = (g.neighbors(center) & domain) - used - nbr_used;
        return h.count();
    }

    bool grow(int leg) {
        if (leg == 3) return true;
        auto& cur = legs[leg];
        if (static_cast<int>(cur.size()) == t) {
            if (leg < 2 && free_heads() < 2 - leg) return false;
            return grow(leg + 1);
        }
        VertexSet cand(g.size());
        VertexSet blocked(g.size());
        if (cur.empty()) {
            cand = g.neighbors(center) & domain;
            for (int i = 0; i < leg; ++i)
                for (int v : legs[i]) blocked |= g.neighbors(v);
        } else {
            int last = cur.back();
            cand = g.neighbors(last) & domain;
            blocked |= g.neighbors(center);
            for (int i = 0; i <= leg; ++i)
                for (int v : legs[i])
                    if (v != last) blocked |= g.neighbors(v);
        }
        cand -= used;
        cand -= blocked;
        int min_head = (cur.empty() && leg > 0) ? legs[leg - 1][0] : -1;
        for (int v : cand) {
            if (v <= min_head) continue;
            cur.push_back(v);
            used.set(v);
            if (grow(leg)) return true;
            used.reset(v);
            cur.pop_back();
        }
        return false;
    }
};

}  // namespace

std::optional<SubdividedClaw> find_sttt(const Graph& g, const VertexSet& domain, int t) {
    if (t < 1) throw InputError("t must be positive");
    if (t > kDefaultMaxT) std::fprintf(stderr, "warning: t=%d exceeds the supported default %d\n", t, kDefaultMaxT);
    check_ids(g, domain);
    for (int c : domain) {
        if ((g.neighbors(c) & domain).count() < 3) continue;
        ClawSearch s{g, domain, t, c, VertexSet(g.size()), {}};
        s.used.set(c);
        if (s.grow(0)) {
            SubdividedClaw out{c, s.legs};
            require(is_induced_sttt(g, out, t), "find_sttt produced an invalid certificate");
            return out;
        }
    }
    return std::nullopt;
}

std::optional<SubdividedClaw> find_sttt(const Graph& g, int t) { return find_sttt(g, g.all(), t); }

std::optional<VertexSet> find_sttt_by_subsets(const Graph& g, int t) {
    const int n = g.size(), k = 3 * t + 1;
    if (k > n) return std::nullopt;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        VertexSet s(n);
        for (int v : idx) s.set(v);
        if (induces_sttt(g, s, t)) return s;
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return std::nullopt;
}

namespace {

// Path between a and b inside the tree g[tree], as a vertex sequence from a.
std::vector<int> tree_path(const Graph& g, const VertexSet& tree, int a, int b) {
    std::vector<int> parent(g.size(), -2);
    std::vector<int> queue{a};
    parent[a] = -1;
    for (std::size_t i = 0; i < queue.size(); ++i) {
        int v = queue[i];
        for (int u : g.neighbors(v) & tree)
            if (parent[u] == -2) {
                parent[u] = v;
                queue.push_back(u);
            }
    }
    if (parent[b] == -2) throw InvariantViolation("terminals are not connected inside the tree");
    std::vector<int> path;
    for (int v = b; v != -1; v = parent[v]) path.push_back(v);
    std::reverse(path.begin(), path.end());
    return path;
}

}  // namespace

SubdividedClaw extract_sttt_from_tree(const Graph& g, const VertexSet& tree, const std::array<int, 3>& terminals,
                                      int t) {
    if (!is_induced_tree(g, tree)) throw InvariantViolation("extract_sttt_from_tree: input is not an induced tree");
    for (int z : terminals)
        if (!tree.contains(z)) throw InvariantViolation("extract_sttt_from_tree: terminal outside the tree");
    auto p01 = tree_path(g, tree, terminals[0], terminals[1]);
    auto p02 = tree_path(g, tree, terminals[0], terminals[2]);
    auto p12 = tree_path(g, tree, terminals[1], terminals[2]);
    // The median lies on all three pairwise paths.
    VertexSet on01 = VertexSet::of(g.size(), p01), on02 = VertexSet::of(g.size(), p02),
              on12 = VertexSet::of(g.size(), p12);
    VertexSet common = on01 & on02 & on12;
    if (common.count() != 1) throw InvariantViolation("extract_sttt_from_tree: no unique median");
    int median = common.first();
    SubdividedClaw out;
    out.center = median;
    for (int i = 0; i < 3; ++i) {
        auto path = tree_path(g, tree, median, terminals[i]);
        if (static_cast<int>(path.size()) - 1 < t)
            throw InvariantViolation("extract_sttt_from_tree: leg towards terminal " + std::to_string(terminals[i]) +
                                     " has fewer than t vertices");
        out.legs[i].assign(path.begin() + 1, path.begin() + 1 + t);
    }
    if (!is_induced_sttt(g, out, t)) throw InvariantViolation("extract_sttt_from_tree: trimmed pattern is not induced");
    return out;
}

}  // namespace stf
