#include "stf/combine.hpp"

#include "stf/errors.hpp"

namespace stf {

namespace {

// Index layout of particles(esd): vertices, then four per edge, then triangles.
struct Layout {
    int h, e;
    int vertex(int x) const { return x; }
    int interior(int i) const { return h + 4 * i; }
    int half(int i, bool at_x) const { return h + 4 * i + (at_x ? 1 : 2); }
    int full(int i) const { return h + 4 * i + 3; }
    int triangle(int j) const { return h + 4 * e + j; }
};

bool has_corner(const EsdTriangle& t, int x) { return t.x == x || t.y == x || t.z == x; }

void check_solutions(const Esd& esd, const ParticleSolutions& ps) {
    const std::size_t expect = esd.h_size() + 4 * esd.edge_count() + esd.triangles().size();
    if (ps.sols.size() != expect) throw InputError("particle solutions do not match the decomposition");
}

}  // namespace

bool capacity_feasible(const Esd& esd, const std::vector<StripState>& states) {
    std::vector<int> used(esd.h_size(), 0);
    for (int i = 0; i < esd.edge_count(); ++i) {
        const auto& e = esd.edges()[i];
        switch (states[i]) {
            case StripState::interior: break;
            case StripState::half_x: ++used[e.x]; break;
            case StripState::half_y: ++used[e.y]; break;
            case StripState::full:
                ++used[e.x];
                ++used[e.y];
                break;
        }
    }
    for (int c : used)
        if (c > 1) return false;
    return true;
}

VertexSet assemble(const Esd& esd, const ParticleSolutions& ps, const std::vector<StripState>& states) {
    check_solutions(esd, ps);
    const Layout L{esd.h_size(), esd.edge_count()};
    VertexSet out(esd.host_n());
    std::vector<bool> used(esd.h_size(), false);
    std::vector<bool> full_edge(esd.edge_count(), false);
    for (int i = 0; i < esd.edge_count(); ++i) {
        const auto& e = esd.edges()[i];
        switch (states[i]) {
            case StripState::interior: out |= ps.sols[L.interior(i)]; break;
            case StripState::half_x:
                out |= ps.sols[L.half(i, true)];
                used[e.x] = true;
                break;
            case StripState::half_y:
                out |= ps.sols[L.half(i, false)];
                used[e.y] = true;
                break;
            case StripState::full:
                out |= ps.sols[L.full(i)];
                used[e.x] = used[e.y] = true;
                full_edge[i] = true;
                break;
        }
    }
    for (int x = 0; x < esd.h_size(); ++x)
        if (!used[x]) out |= ps.sols[L.vertex(x)];
    for (int j = 0; j < static_cast<int>(esd.triangles().size()); ++j) {
        const auto& t = esd.triangles()[j];
        bool consumed = false;
        for (int i = 0; i < esd.edge_count() && !consumed; ++i) {
            const auto& e = esd.edges()[i];
            consumed = full_edge[i] && has_corner(t, e.x) && has_corner(t, e.y);
        }
        if (!consumed) out |= ps.sols[L.triangle(j)];
    }
    return out;
}

CombineResult combine_via_matching(const Graph& g, const Esd& esd, const ParticleSolutions& ps, const Weights& w,
                                   bool use_enumeration) {
    check_solutions(esd, ps);
    const Layout L{esd.h_size(), esd.edge_count()};
    auto val = [&](int k) { return total_weight(w, ps.sols[k]); };
    const int h = esd.h_size(), m = esd.edge_count();

    Weight base = 0;
    for (int x = 0; x < h; ++x) base += val(L.vertex(x));
    for (int i = 0; i < m; ++i) base += val(L.interior(i));
    for (int j = 0; j < static_cast<int>(esd.triangles().size()); ++j) base += val(L.triangle(j));

    // Vertices: H first, then one pendant per edge i, shared by both halves so
    // that at most one half of a strip is taken.
    MatchingInstance inst;
    inst.vertices = h + m;
    for (int i = 0; i < m; ++i) {
        const auto& e = esd.edges()[i];
        Weight full = val(L.full(i)) - val(L.interior(i)) - val(L.vertex(e.x)) - val(L.vertex(e.y));
        for (int j = 0; j < static_cast<int>(esd.triangles().size()); ++j) {
            const auto& t = esd.triangles()[j];
            if (has_corner(t, e.x) && has_corner(t, e.y)) full -= val(L.triangle(j));
        }
        inst.edges.push_back({e.x, e.y, full});
        inst.edges.push_back({e.x, h + i, val(L.half(i, true)) - val(L.interior(i)) - val(L.vertex(e.x))});
        inst.edges.push_back({e.y, h + i, val(L.half(i, false)) - val(L.interior(i)) - val(L.vertex(e.y))});
    }
    Matching mt = use_enumeration ? max_weight_matching_enumerate(inst) : max_weight_matching(inst);

    CombineResult r;
    r.states.assign(m, StripState::interior);
    for (int k : mt.edge_ids) {
        int i = k / 3;
        r.states[i] = k % 3 == 0 ? StripState::full : k % 3 == 1 ? StripState::half_x : StripState::half_y;
    }
    require(capacity_feasible(esd, r.states), "combine: matching produced an infeasible assignment");
    r.set = assemble(esd, ps, r.states);
    r.weight = total_weight(w, r.set);
    require(r.weight == base + mt.weight, "combine: assembled value differs from matching value");
    require(is_independent(g, r.set), "combine: assembled set is not independent");
    return r;
}

CombineResult reference_combiner(const Graph& g, const Esd& esd, const ParticleSolutions& ps, const Weights& w,
                                 int cap) {
    check_solutions(esd, ps);
    const int m = esd.edge_count();
    if (m > cap) throw CapExceeded("reference combiner: too many pattern edges");
    CombineResult best;
    bool have = false;
    std::vector<StripState> st(m, StripState::interior);
    const long total = 1L << (2 * m);
    for (long code = 0; code < total; ++code) {
        for (int i = 0; i < m; ++i) st[i] = static_cast<StripState>((code >> (2 * i)) & 3);
        if (!capacity_feasible(esd, st)) continue;
        VertexSet s = assemble(esd, ps, st);
        require(is_independent(g, s), "reference combiner: assembled set is not independent");
        Weight v = total_weight(w, s);
        if (!have || v > best.weight) {
            best = {s, v, st};
            have = true;
        }
    }
    return best;
}

}  // namespace stf
