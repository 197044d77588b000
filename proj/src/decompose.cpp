#include "stf/decompose.hpp"

#include <algorithm>
#include <set>

#include <boost/multiprecision/cpp_int.hpp>

#include "stf/errors.hpp"
#include "stf/gyarfas.hpp"
#include "stf/three_in_a_tree.hpp"

namespace stf {

using boost::multiprecision::cpp_int;

namespace {

cpp_int power(cpp_int b, int e) {
    cpp_int r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

VertexSet path_set(int n, const std::vector<Path>& ps) {
    VertexSet s(n);
    for (const auto& p : ps)
        for (int v : p) s.set(v);
    return s;
}

void fail(const std::string& what) { throw InvariantViolation("decompose: " + what); }

// Full-edge particle of edge i.
VertexSet full_particle(const Esd& esd, int i) {
    const auto& e = esd.edges()[i];
    VertexSet a = esd.vertex_set(e.x) | esd.vertex_set(e.y) | e.all;
    for (const auto& t : esd.triangles()) {
        bool hx = t.x == e.x || t.y == e.x || t.z == e.x;
        bool hy = t.x == e.y || t.y == e.y || t.z == e.y;
        if (hx && hy) a |= t.set;
    }
    return a;
}

int max_particle(const Esd& esd) { return esd.h_size() == 0 ? 0 : max_particle_size(esd); }

// Cut into consecutive pieces of at most t+1 vertices.
void chunk(const Path& p, int t, std::vector<Path>& out) {
    for (std::size_t i = 0; i < p.size(); i += t + 1)
        out.emplace_back(p.begin() + i, p.begin() + std::min(p.size(), i + t + 1));
}

void add_unique(std::vector<Path>& into, std::set<Path>& seen, const Path& p) {
    if (!p.empty() && seen.insert(p).second) into.push_back(p);
}

DecomposeOutcome recurse(const Graph& g, const VertexSet& domain, const PathBundle& q, const Esd& base, int n_root,
                         int t, const DecomposeOptions& opt, int depth) {
    const int n = g.size();
    DecomposeOutcome out;
    LevelStats level;
    level.depth = depth;
    level.bundle_size = q.total();
    const VertexSet q_all = q.vertices(n);

    std::size_t longest = 0;
    for (const auto& p : q.paths) longest = std::max(longest, p.size());
    if (longest <= static_cast<std::size_t>(3 * t + 1)) {
        for (const auto& p : q.paths) chunk(p, t, out.sep.paths);
        out.sep.removed = closed_neighborhood(g, q_all) & domain;
        out.sep.esd = base;
        level.base_case = true;
        level.new_paths = static_cast<int>(out.sep.paths.size());
        level.max_particle = max_particle(base);
        out.stats.levels.push_back(level);
        return out;
    }

    const SplitState st = split_paths(g, domain, q, t);
    const VertexSet rest = domain - st.shell_union;
    ++out.stats.three_in_a_tree_calls;
    ThreeInATreeOutcome tt = three_in_a_tree(g, rest, st.terminals);
    if (tt.is_tree()) {
        out.claw = extract_sttt_from_tree(g, tt.tree->tree, tt.tree->terminals, t);
        out.stats.levels.push_back(level);
        return out;
    }
    const Esd& hp = tt.esd;
    level.max_particle = max_particle(hp);

    std::vector<Path> prefs;
    std::set<Path> seen;
    for (const auto& p : st.prefs) add_unique(prefs, seen, p);

    int big = -1;
    const auto parts = particles(hp);
    for (std::size_t i = 0; i < parts.size() && big == -1; ++i)
        if (2 * parts[i].members.count() > n_root) big = static_cast<int>(i);
    if (big == -1) {
        out.sep.paths = prefs;
        out.sep.removed = st.shell_union;
        out.sep.esd = hp;
        level.new_paths = static_cast<int>(prefs.size());
        out.stats.levels.push_back(level);
        return out;
    }

    // Widen the large particle to the full-edge particle containing it.
    const Particle& pa = parts[big];
    int edge = -1;
    if (pa.kind == ParticleKind::vertex) {
        if (hp.degree(pa.anchor[0]) > 0) edge = hp.incident(pa.anchor[0])[0];
    } else {
        edge = hp.edge_index(pa.anchor[0], pa.anchor[1]);
    }
    VertexSet a = pa.members;
    std::vector<Path> extra;
    VertexSet cut(n);
    if (edge != -1) {
        a = full_particle(hp, edge);
        const auto& e = hp.edges()[edge];
        require(e.side_x.any() && e.side_y.any(), "decompose: three-in-a-tree output is not rigid");
        const int vx = e.side_x.first(), vy = e.side_y.first();
        cut = ((g.neighbors(vx) | g.neighbors(vy)) & domain) - a;
        extra.push_back({vx});
        if (vy != vx) extra.push_back({vy});
    }
    if (!(((open_neighborhood(g, a) & domain) - a).subset_of(cut | st.shell_union)))
        fail("removed set does not separate the large particle");

    PathBundle q_hat;
    for (int i : st.long_pieces)
        if (touches(g, VertexSet::of(n, st.pieces[i]), a)) q_hat.paths.push_back(st.pieces[i]);
    if (q_hat.paths.size() > 2) fail("a particle touches three terminal paths");
    for (const auto& m : shrink_factor_check(q, q_hat)) fail(m);

    const VertexSet ghat = a | q_hat.vertices(n);
    const VertexSet hat_rest = ghat - closed_neighborhood(g, q_hat.vertices(n));
    if (!(hat_rest == ghat - closed_neighborhood(g, q_all))) fail("reduced instance keeps vertices near dropped paths");
    const Esd base_hat = base.restricted(hat_rest);

    DecomposeOutcome sub = recurse(g, ghat, q_hat, base_hat, n_root, t, opt, depth + 1);
    out.stats = sub.stats;
    out.stats.three_in_a_tree_calls += 1;
    if (sub.is_claw()) {
        out.claw = sub.claw;
        out.stats.levels.push_back(level);
        return out;
    }

    std::set<Path> all_seen;
    for (const auto& p : sub.sep.paths) add_unique(out.sep.paths, all_seen, p);
    const std::size_t before = out.sep.paths.size();
    for (const auto& p : extra) add_unique(out.sep.paths, all_seen, p);
    for (const auto& p : prefs) add_unique(out.sep.paths, all_seen, p);
    level.new_paths = static_cast<int>(out.sep.paths.size() - before);
    if (level.new_paths > 6) fail("more than six new paths at one level");

    out.sep.removed = sub.sep.removed | cut | st.shell_union;
    out.sep.esd = sub.sep.esd.restricted(a - out.sep.removed);
    const VertexSet outside = domain - out.sep.removed - a;
    if (outside.any()) out.sep.esd.add_vertex(outside);
    if (!within_recursion_path_bound(static_cast<int>(out.sep.paths.size()), q.total()))
        fail("too many paths for the bundle size");
    if (opt.paranoid) {
        auto v = validate(g, out.sep.esd, domain - out.sep.removed);
        if (!v.empty()) fail("reassembled decomposition invalid: " + v[0].str());
    }
    out.stats.levels.push_back(level);
    return out;
}

}  // namespace

VertexSet PathBundle::vertices(int n) const { return path_set(n, paths); }

int PathBundle::total() const {
    int s = 0;
    for (const auto& p : paths) s += static_cast<int>(p.size());
    return s;
}

SplitState split_paths(const Graph& g, const VertexSet& domain, const PathBundle& q, int t) {
    const int n = g.size();
    if (q.paths.empty() || q.paths.size() > 2) throw InputError("split needs one or two paths");
    std::size_t i1 = 0;
    if (q.paths.size() == 2 && q.paths[1].size() > q.paths[0].size()) i1 = 1;
    const Path& q1 = q.paths[i1];
    const int len = static_cast<int>(q1.size());
    const int a = len / 3;
    if (a < t) throw InputError("longest path too short to split");
    SplitState st;
    st.u1 = q1[a];
    st.u2 = q1[2 * a + 1];
    st.pieces.emplace_back(q1.begin(), q1.begin() + a);
    st.pieces.emplace_back(q1.begin() + a + 1, q1.begin() + 2 * a + 1);
    st.pieces.emplace_back(q1.begin() + 2 * a + 2, q1.end());
    if (q.paths.size() == 2) {
        Path q2 = q.paths[1 - i1];
        if (q2.back() < q2.front()) std::reverse(q2.begin(), q2.end());
        st.pieces.push_back(q2);
    }
    st.pieces_union = path_set(n, st.pieces);
    st.terminals = VertexSet(n);
    st.shell_union = VertexSet(n);
    for (std::size_t i = 0; i < st.pieces.size(); ++i) {
        const Path& p = st.pieces[i];
        Path pref;
        if (i == 1) pref.push_back(st.u1);
        if (i == 2) pref.push_back(st.u2);
        for (int k = 0; k < std::min<int>(t, static_cast<int>(p.size())); ++k) pref.push_back(p[k]);
        VertexSet shell = closed_neighborhood(g, VertexSet::of(n, pref)) & domain;
        const bool is_long = static_cast<int>(p.size()) >= t;
        if (is_long) {
            shell -= st.pieces_union;
            st.long_pieces.push_back(static_cast<int>(i));
            st.terminals.set(p.front());
        }
        st.prefs.push_back(pref);
        st.shells.push_back(shell);
        st.shell_union |= shell;
    }
    return st;
}

std::vector<std::string> shrink_factor_check(const PathBundle& q, const PathBundle& q_hat) {
    std::vector<std::string> out;
    if (3 * q_hat.total() > 2 * q.total())
        out.push_back("selected paths hold " + std::to_string(q_hat.total()) + " of " + std::to_string(q.total()) +
                      " vertices, more than two thirds");
    return out;
}

DecomposeOutcome recursion_step(const Graph& g, const VertexSet& domain, const PathBundle& q, const Esd& base,
                                int n_root, int t, const DecomposeOptions& opt) {
    check_ids(g, domain);
    if (t < 1) throw InputError("t must be at least 1");
    for (std::size_t i = 0; i < q.paths.size(); ++i) {
        if (!is_induced_path(g, q.paths[i])) throw InputError("bundle path is not induced");
        if (!VertexSet::of(g.size(), q.paths[i]).subset_of(domain)) throw InputError("bundle path leaves the domain");
        for (std::size_t j = i + 1; j < q.paths.size(); ++j)
            if (touches(g, VertexSet::of(g.size(), q.paths[i]), VertexSet::of(g.size(), q.paths[j])))
                throw InputError("bundle paths touch");
    }
    return recurse(g, domain, q, base, n_root, t, opt, 0);
}

DecomposeOutcome main_decomposition(const Graph& g, const VertexSet& domain, int t, const DecomposeOptions& opt) {
    check_ids(g, domain);
    if (t < 1) throw InputError("t must be at least 1");
    const int n = domain.count();
    DecomposeOutcome out;
    out.sep.removed = VertexSet(g.size());
    out.sep.esd = Esd(g.size());
    if (n == 0) return out;
    const GyarfasResult gy = gyarfas_path(g, domain, opt.paranoid);
    PathBundle q{{gy.path}};
    const Esd base = trivial_esd(g, domain - closed_neighborhood(g, q.vertices(g.size())));
    out = recurse(g, domain, q, base, n, t, opt, 0);
    if (out.is_claw()) {
        if (!is_induced_sttt(g, *out.claw, t)) fail("extracted pattern is not an induced S_{t,t,t}");
        return out;
    }
    out.sep.esd = rigidify_preserving_particles(out.sep.esd);
    for (const auto& m : check_separator(g, domain, out.sep, n, t, true)) fail(m);
    if (!within_main_path_bound(static_cast<int>(out.sep.paths.size()), n)) fail("too many paths");
    return out;
}

DecomposeOutcome main_decomposition(const Graph& g, int t, const DecomposeOptions& opt) {
    return main_decomposition(g, g.all(), t, opt);
}

SFreeDecomposition decompose_s_sttt_free(const Graph& g, const VertexSet& domain, int s, int t,
                                         const DecomposeOptions& opt) {
    check_ids(g, domain);
    if (s < 1 || t < 1) throw InputError("s and t must be at least 1");
    const int n = g.size();
    SFreeDecomposition out;
    out.x = VertexSet(n);
    VertexSet cur = domain;
    for (int i = 0; i + 1 < s; ++i) {
        auto y = find_sttt(g, cur, t);
        if (!y) break;
        const VertexSet ys = y->vertices(n);
        out.x |= ys;
        cur -= closed_neighborhood(g, ys);
        out.peeled.push_back(*y);
    }
    DecomposeOutcome d = main_decomposition(g, cur, t, opt);
    out.stats = d.stats;
    if (d.is_claw())
        throw SIllegalInput("an induced S_{t,t,t} remains after " + std::to_string(out.peeled.size()) + " peels");
    const VertexSet pv = path_set(n, d.sep.paths);
    out.x |= pv;
    out.paths = d.sep.paths;
    out.esd = rigidify_preserving_particles(d.sep.esd.restricted(cur - closed_neighborhood(g, pv)));
    for (const auto& m : check_s_free(g, domain, out, s, t)) fail(m);
    return out;
}

SFreeDecomposition decompose_s_sttt_free(const Graph& g, int s, int t, const DecomposeOptions& opt) {
    return decompose_s_sttt_free(g, g.all(), s, t, opt);
}

bool within_recursion_path_bound(int paths, int m) {
    const int k = paths - 6;
    if (k <= 0) return true;
    if (m <= 1) return false;
    // k <= 6 log_{3/2} m  <=>  3^k <= 2^k m^6
    return power(3, k) <= power(2, k) * power(m, 6);
}

bool within_main_path_bound(int paths, int n) {
    const int k = paths - 6;
    if (k <= 0) return true;
    if (n <= 1) return false;
    return power(2, k) <= power(n, 11);
}

bool within_peel_bound(int x_size, int s, int t, int n) {
    const int k = x_size - (s - 1) * (3 * t + 1) - 6 * (t + 1);
    if (k <= 0) return true;
    if (n <= 1) return false;
    // k <= 11 (t+1) log2 n
    return power(2, k) <= power(n, 11 * (t + 1));
}

int recursion_path_budget(int m) {
    int p = 6;
    while (within_recursion_path_bound(p + 1, m)) ++p;
    return p;
}

int main_path_budget(int n) {
    int p = 6;
    while (within_main_path_bound(p + 1, n)) ++p;
    return p;
}

int peel_budget(int s, int t, int n) {
    int x = (s - 1) * (3 * t + 1) + 6 * (t + 1);
    while (within_peel_bound(x + 1, s, t, n)) ++x;
    return x;
}

std::vector<std::string> check_separator(const Graph& g, const VertexSet& domain, const SeparatorResult& sep,
                                         int n_root, int t, bool require_rigid) {
    std::vector<std::string> out;
    const int n = g.size();
    for (const auto& p : sep.paths) {
        if (p.empty() || static_cast<int>(p.size()) > t + 1) out.push_back("path with " + std::to_string(p.size()) +
                                                                          " vertices");
        else if (!VertexSet::of(n, p).subset_of(domain)) out.push_back("path leaves the domain");
        else if (!is_induced_path(g, p)) out.push_back("path is not induced");
    }
    if (!sep.removed.subset_of(domain)) out.push_back("X leaves the domain");
    if (!sep.removed.subset_of(closed_neighborhood(g, path_set(n, sep.paths))))
        out.push_back("X is not inside the closed neighbourhood of the paths");
    for (const auto& v : validate(g, sep.esd, domain - sep.removed)) out.push_back(v.str());
    if (require_rigid && !is_rigid(sep.esd)) out.push_back("decomposition is not rigid");
    for (const auto& p : particles(sep.esd))
        if (2 * p.members.count() > n_root)
            out.push_back("particle " + p.name() + " has " + std::to_string(p.members.count()) + " vertices");
    return out;
}

std::vector<std::string> check_s_free(const Graph& g, const VertexSet& domain, const SFreeDecomposition& d, int s,
                                      int t) {
    std::vector<std::string> out;
    const int n = domain.count();
    if (!d.x.subset_of(domain)) out.push_back("X leaves the domain");
    if (!within_peel_bound(d.x.count(), s, t, n)) out.push_back("X has " + std::to_string(d.x.count()) + " vertices");
    for (const auto& v : validate(g, d.esd, domain - closed_neighborhood(g, d.x))) out.push_back(v.str());
    if (!is_rigid(d.esd)) out.push_back("decomposition is not rigid");
    for (const auto& p : particles(d.esd))
        if (2 * p.members.count() > n)
            out.push_back("particle " + p.name() + " has " + std::to_string(p.members.count()) + " vertices");
    return out;
}

}  // namespace stf
