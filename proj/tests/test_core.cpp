#include <doctest.h>

#include <sstream>

#include "stf/combine.hpp"
#include "stf/decompose.hpp"
#include "stf/errors.hpp"
#include "stf/gyarfas.hpp"
#include "stf/patterns.hpp"
#include "stf/random.hpp"
#include "stf/solvers.hpp"

using namespace stf;

namespace {

Graph random_graph(Rng& rng, int n, int pct) {
    std::vector<std::pair<int, int>> es;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.chance(pct, 100)) es.emplace_back(u, v);
    return Graph::from_edges(n, es);
}

Graph spider(int t) {
    std::vector<std::pair<int, int>> es;
    int next = 1;
    for (int leg = 0; leg < 3; ++leg) {
        int prev = 0;
        for (int k = 0; k < t; ++k) {
            es.emplace_back(prev, next);
            prev = next++;
        }
    }
    return Graph::from_edges(next, es);
}

// Strip decomposition of a line graph along its root graph.
Esd root_esd(const Graph& base, const std::vector<std::pair<int, int>>& es) {
    const int n = static_cast<int>(es.size());
    Esd esd(n);
    for (int x = 0; x < base.size(); ++x) esd.add_vertex(VertexSet(n));
    for (int i = 0; i < n; ++i) {
        VertexSet s(n, {i});
        esd.add_edge(es[i].first, es[i].second, s, s, s);
    }
    return esd;
}

ParticleSolutions exact_particles(const Graph& g, const Weights& w, const Esd& esd) {
    ParticleSolutions ps;
    ps.parts = particles(esd);
    for (const auto& p : ps.parts) ps.sols.push_back(brute_force_mwis(g, w, p.members));
    return ps;
}

}  // namespace

TEST_CASE("vertex sets") {
    VertexSet a(130, {0, 5, 64, 129});
    CHECK(a.count() == 4);
    CHECK(a.first() == 0);
    CHECK(a.next(5) == 64);
    CHECK(a.next(129) == -1);
    CHECK(a.to_vector() == std::vector<int>{0, 5, 64, 129});
    VertexSet b(130, {5, 7});
    CHECK((a & b) == VertexSet(130, {5}));
    CHECK((a - b).count() == 3);
    CHECK((a | b).count() == 5);
    CHECK(a.intersects(b));
    CHECK(VertexSet(130, {5}).subset_of(a));
    CHECK(VertexSet::full(130).count() == 130);
    CHECK(a.complement().count() == 126);
    CHECK(a.hash() == VertexSet(130, {129, 64, 5, 0}).hash());
    CHECK(VertexSet(10, {1, 2}).lex_compare(VertexSet(10, {1, 3})) < 0);
    CHECK(VertexSet(10, {1}).lex_compare(VertexSet(10, {1, 3})) < 0);
}

TEST_CASE("graph construction and text format") {
    Graph g = Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}});
    CHECK(g.edge_count() == 3);
    CHECK(g.degree(1) == 2);
    CHECK(is_induced_path(g, {0, 1, 2, 3}));
    CHECK_FALSE(is_induced_path(Graph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}}), {0, 1, 2}));
    CHECK_THROWS_AS(Graph::from_edges(3, {{0, 0}}), InputError);
    CHECK_THROWS_AS(Graph::from_edges(3, {{0, 1}, {1, 0}}), InputError);
    CHECK_THROWS_AS(Graph::from_edges(3, {{0, 3}}), InputError);

    Weights w{4, 1, 7, 2};
    WeightedGraph back = read_graph_string(write_graph_string(g, w));
    CHECK(back.g.edges() == g.edges());
    CHECK(back.w == w);

    WeightedGraph parsed = read_graph_string("c comment\np 3 2\ne 1 2\ne 2 3\nw 2 9\n");
    CHECK(parsed.g.size() == 3);
    CHECK(parsed.w == Weights{1, 9, 1});
    CHECK_THROWS_AS(read_graph_string("p 3 1\ne 1 4\n"), InputError);
    CHECK_THROWS_AS(read_graph_string("e 1 2\n"), InputError);
    CHECK_THROWS_AS(read_graph_string("p 3 2\ne 1 2\n"), InputError);
    try {
        read_graph_string("p 2 1\nx\n");
        FAIL("no throw");
    } catch (const InputError& e) {
        CHECK(e.line == 2);
    }
}

TEST_CASE("neighbourhoods and components") {
    Graph g = Graph::from_edges(6, {{0, 1}, {1, 2}, {3, 4}});
    CHECK(closed_neighborhood(g, 1) == VertexSet(6, {0, 1, 2}));
    CHECK(open_neighborhood(g, VertexSet(6, {0, 1})) == VertexSet(6, {2}));
    auto comps = connected_components(g, g.all());
    REQUIRE(comps.size() == 3);
    CHECK(comps[0] == VertexSet(6, {0, 1, 2}));
    CHECK(comps[2] == VertexSet(6, {5}));
    CHECK(is_induced_tree(g, VertexSet(6, {0, 1, 2})));
    CHECK_FALSE(is_induced_tree(g, VertexSet(6, {0, 1, 3})));
    Subgraph sub = induced_subgraph(g, VertexSet(6, {1, 2, 4}));
    CHECK(sub.g.size() == 3);
    CHECK(sub.g.edge_count() == 1);
    CHECK(sub.lift(VertexSet(3, {2}), 6) == VertexSet(6, {4}));
}

TEST_CASE("line graphs and root recovery") {
    Rng rng(3);
    for (int iter = 0; iter < 100; ++iter) {
        Graph base = random_graph(rng, static_cast<int>(rng.uniform(2, 12)), 40);
        std::vector<std::pair<int, int>> es;
        Graph g = line_graph(base, &es);
        CHECK(g.size() == base.edge_count());
        CHECK_FALSE(find_sttt(g, 1));
        auto cover = krausz_cover(g, g.all());
        REQUIRE(cover);
        int covered = 0;
        for (const auto& c : cover->cliques) {
            CHECK(edges_within(g, c) == c.count() * (c.count() - 1) / 2);
            covered += edges_within(g, c);
        }
        CHECK(covered == g.edge_count());
        for (const auto& of : cover->of) CHECK(of.size() <= 2);
    }
    CHECK_FALSE(krausz_cover(spider(1), spider(1).all()));
}

TEST_CASE("subdivided claw search") {
    for (int t = 1; t <= 3; ++t) {
        Graph g = spider(t);
        auto c = find_sttt(g, t);
        REQUIRE(c);
        CHECK(is_induced_sttt(g, *c, t));
        CHECK(induces_sttt(g, g.all(), t));
        CHECK_FALSE(find_sttt(g, t + 1));
    }
    Rng rng(4);
    for (int iter = 0; iter < 200; ++iter) {
        const int n = static_cast<int>(rng.uniform(1, 13));
        const int t = static_cast<int>(rng.uniform(1, 3));
        Graph g = random_graph(rng, n, static_cast<int>(rng.uniform(10, 50)));
        auto fast = find_sttt(g, t);
        auto slow = find_sttt_by_subsets(g, t);
        CHECK(fast.has_value() == slow.has_value());
        if (fast) CHECK(is_induced_sttt(g, *fast, t));
    }
}

TEST_CASE("extended strip decompositions") {
    Graph base = Graph::from_edges(5, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}});
    std::vector<std::pair<int, int>> es;
    Graph g = line_graph(base, &es);
    Esd esd = root_esd(base, es);
    CHECK(validate(g, esd).empty());
    CHECK(esd.triangles().size() == 1);
    CHECK(is_rigid(esd));
    structural_bounds(esd, g.size());
    for (int e = 0; e < esd.edge_count(); ++e) CHECK(particle_neighborhood_check(g, esd, e).empty());
    CHECK(peripheral_vertices(esd) == VertexSet(5, {4}));

    SUBCASE("broken partition is reported") {
        Esd bad = esd;
        bad.edges()[0].all.reset(bad.edges()[0].all.first());
        CHECK_FALSE(validate(g, bad).empty());
    }
    SUBCASE("missing adjacency is reported") {
        Graph more = Graph::from_edges(g.size(), [&] {
            auto ed = g.edges();
            for (int u = 0; u < g.size(); ++u)
                for (int v = u + 1; v < g.size(); ++v)
                    if (!g.adjacent(u, v)) {
                        ed.emplace_back(u, v);
                        return ed;
                    }
            return ed;
        }());
        CHECK_FALSE(validate(more, esd).empty());
    }
    SUBCASE("json round trip") {
        Esd back = esd_from_json(esd_to_json(esd));
        CHECK(esd_to_json(back) == esd_to_json(esd));
    }
    SUBCASE("rigidify keeps validity") {
        Esd loose = esd;
        loose.add_vertex(VertexSet(g.size()));
        CHECK_FALSE(is_rigid(loose));
        Esd r = rigidify(loose);
        CHECK(is_rigid(r));
        CHECK(validate(g, r).empty());
    }
}

TEST_CASE("decomposition ESDs satisfy the counting bounds and the neighbourhood identity") {
    Rng rng(6);
    for (int iter = 0; iter < 60; ++iter) {
        Graph g = line_graph(random_graph(rng, static_cast<int>(rng.uniform(3, 14)), 35));
        if (g.size() == 0) continue;
        auto r = main_decomposition(g, 1);
        REQUIRE_FALSE(r.is_claw());
        const Esd& esd = r.sep.esd;
        CHECK(is_rigid(esd));
        BoundsReport b = structural_bounds(esd, g.size());
        CHECK(b.h_edges <= g.size());
        for (int e = 0; e < esd.edge_count(); ++e) CHECK(particle_neighborhood_check(g, esd, e).empty());
    }
}

TEST_CASE("gyarfas paths") {
    Rng rng(7);
    for (int iter = 0; iter < 200; ++iter) {
        const int n = static_cast<int>(rng.uniform(1, 60));
        Graph g = random_graph(rng, n, static_cast<int>(rng.uniform(2, 30)));
        for (const auto& comp : connected_components(g, g.all())) {
            auto r = gyarfas_path(g, comp, true);
            CHECK(is_induced_path(g, r.path));
            const VertexSet rest = comp - closed_neighborhood(g, VertexSet::of(n, r.path));
            for (const auto& c : connected_components(g, rest)) CHECK(2 * c.count() <= comp.count());
        }
    }
}

TEST_CASE("combining particle optima") {
    Rng rng(8);
    for (int iter = 0; iter < 150; ++iter) {
        const int n = static_cast<int>(rng.uniform(1, 14));
        Graph g = iter % 2 ? line_graph(random_graph(rng, static_cast<int>(rng.uniform(2, 7)), 50))
                           : random_graph(rng, n, static_cast<int>(rng.uniform(10, 40)));
        if (g.size() == 0 || find_sttt(g, 1)) continue;
        Weights w(g.size());
        for (auto& x : w) x = rng.uniform(1, 30);
        auto r = main_decomposition(g, 1);
        const Esd& esd = r.sep.esd;
        ParticleSolutions ps = exact_particles(g, w, esd);
        CombineResult fast = combine_via_matching(g, esd, ps, w);
        CHECK(is_independent(g, fast.set));
        CHECK(capacity_feasible(esd, fast.states));
        CHECK(fast.weight == total_weight(w, brute_force_mwis(g, w, esd.domain())));
        CHECK(combine_via_matching(g, esd, ps, w, true).weight == fast.weight);
        if (esd.edge_count() <= 6) CHECK(reference_combiner(g, esd, ps, w).weight == fast.weight);
    }
}

TEST_CASE("combiner never takes both halves of one strip") {
    // Both halves of 0-2 look profitable on their own; together they overlap in 5.
    const Esd esd = esd_from_json(nlohmann::json::parse(R"({"host_n":13,"H":[[1,2],[0,2,3],[0,1,3],[1,2]],
        "eta":{"0-1":[4,6],"0-1-2":[10],"0-1:0":[6],"0-1:1":[4],"0-2":[1,3,5,11],"0-2:0":[3,11],"0-2:2":[1,11],
        "1":[2,12],"1-2":[7,8],"1-2:1":[7,8],"2":[9],"3":[0]}})"));
    const Graph g = Graph::from_edges(13, {{1, 3}, {2, 4}, {2, 8}, {3, 6}, {3, 11}, {4, 7}, {4, 8}, {4, 12},
                                           {5, 11}, {6, 11}, {7, 8}, {10, 11}});
    const Weights w{4, 47, 25, 14, 24, 50, 3, 20, 36, 44, 3, 23, 26};
    REQUIRE(validate(g, esd).empty());
    ParticleSolutions ps;
    ps.parts = particles(esd);
    for (const auto& p : ps.parts) ps.sols.push_back(brute_force_mwis(g, w, p.members));
    const Weight best = total_weight(w, brute_force_mwis(g, w));
    for (bool enumerate : {false, true}) {
        CombineResult r = combine_via_matching(g, esd, ps, w, enumerate);
        CHECK(r.weight == best);
        CHECK(is_independent(g, r.set));
    }
    CHECK(reference_combiner(g, esd, ps, w).weight == best);
}
