#include <doctest.h>

#include "stf/decompose.hpp"
#include "stf/errors.hpp"
#include "stf/gyarfas.hpp"
#include "stf/random.hpp"

using namespace stf;

namespace {

Graph random_graph(Rng& rng, int n, int pct) {
    std::vector<std::pair<int, int>> es;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.chance(pct, 100)) es.emplace_back(u, v);
    return Graph::from_edges(n, es);
}

Graph cycle(int n) {
    std::vector<std::pair<int, int>> es;
    for (int i = 0; i < n; ++i) es.emplace_back(i, (i + 1) % n);
    return Graph::from_edges(n, es);
}

Graph path_graph(int n) {
    std::vector<std::pair<int, int>> es;
    for (int i = 0; i + 1 < n; ++i) es.emplace_back(i, i + 1);
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

// Path 0..12 plus vertex 13 joined to 2, 7 and 12: splitting the path gives
// terminals 0, 5, 10, and 13 is the center of a claw through them.
Graph hooked_path() {
    std::vector<std::pair<int, int>> es;
    for (int i = 0; i < 12; ++i) es.emplace_back(i, i + 1);
    es.emplace_back(2, 13);
    es.emplace_back(7, 13);
    es.emplace_back(12, 13);
    return Graph::from_edges(14, es);
}

// Path on m vertices plus one vertex hooked onto the third vertex of each
// piece of the split Gyarfas path, so the main decomposition meets a claw.
Graph hooked_long_path(int m) {
    std::vector<std::pair<int, int>> es;
    for (int i = 0; i + 1 < m; ++i) es.emplace_back(i, i + 1);
    Graph p = Graph::from_edges(m, es);
    SplitState st = split_paths(p, p.all(), PathBundle{{gyarfas_path(p).path}}, 1);
    for (const auto& piece : st.pieces) es.emplace_back(piece.at(2), m);
    return Graph::from_edges(m + 1, es);
}

void check_outcome(const Graph& g, const DecomposeOutcome& r, int t) {
    if (r.is_claw()) {
        CHECK(is_induced_sttt(g, *r.claw, t));
        return;
    }
    auto issues = check_separator(g, g.all(), r.sep, g.size(), t, true);
    INFO((issues.empty() ? std::string() : issues[0]));
    CHECK(issues.empty());
    CHECK(within_main_path_bound(static_cast<int>(r.sep.paths.size()), g.size()));
    structural_bounds(r.sep.esd, g.size());
}

}  // namespace

TEST_CASE("path bounds evaluate exactly") {
    CHECK(recursion_path_budget(100) == 74);
    CHECK(main_path_budget(1024) == 116);
    CHECK(peel_budget(2, 1, 256) == 192);
    CHECK(main_path_budget(1) == 6);
    CHECK(within_main_path_bound(116, 1024));
    CHECK_FALSE(within_main_path_bound(117, 1024));
}

TEST_CASE("splitting the longest path") {
    Graph g = path_graph(10);
    PathBundle q{{{0, 1, 2, 3, 4, 5, 6, 7, 8, 9}}};
    SplitState st = split_paths(g, g.all(), q, 2);
    CHECK(st.u1 == 3);
    CHECK(st.u2 == 7);
    REQUIRE(st.pieces.size() == 3);
    CHECK(st.pieces[0].size() == 3);
    CHECK(st.pieces[1].size() == 3);
    CHECK(st.pieces[2].size() == 2);
    CHECK(st.long_pieces.size() == 3);
    CHECK(st.terminals == VertexSet(10, {0, 4, 8}));
    for (const auto& p : st.prefs) {
        CHECK(p.size() <= 3);
        CHECK(is_induced_path(g, p));
    }
    CHECK(st.prefs[1] == Path{3, 4, 5});
}

TEST_CASE("shrink factor") {
    PathBundle q{{{0, 1, 2, 3, 4, 5}, {6, 7, 8, 9, 10, 11}}};
    CHECK(shrink_factor_check(q, PathBundle{{{0, 1}, {6, 7, 8, 9, 10, 11}}}).empty());
    CHECK(shrink_factor_check(q, PathBundle{{{0, 1, 2}, {6, 7, 8, 9, 10, 11}}}).size() == 1);
    CHECK(shrink_factor_check(q, PathBundle{{{0, 1, 2}}}).empty());
}

TEST_CASE("recursion step finds a tree through the split pieces") {
    Graph g = hooked_path();
    PathBundle q{{{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12}}};
    const VertexSet rest = g.all() - closed_neighborhood(g, q.vertices(14));
    auto r = recursion_step(g, g.all(), q, trivial_esd(g, rest), 14, 1);
    REQUIRE(r.is_claw());
    CHECK(r.claw->center == 13);
    CHECK(is_induced_sttt(g, *r.claw, 1));
}

TEST_CASE("main decomposition on fixed graphs") {
    SUBCASE("C5 with t = 1") {
        Graph g = cycle(5);
        auto r = main_decomposition(g, 1);
        REQUIRE_FALSE(r.is_claw());
        check_outcome(g, r, 1);
        for (const auto& p : particles(r.sep.esd)) CHECK(p.members.count() <= 2);
    }
    SUBCASE("S_{3,3,3} with t = 3 fits in the base case") {
        Graph g = spider(3);
        auto r = main_decomposition(g, 3);
        check_outcome(g, r, 3);
    }
    SUBCASE("long spiders") {
        for (int len = 4; len <= 30; ++len) {
            Graph g = spider(len);
            auto r = main_decomposition(g, 1);
            check_outcome(g, r, 1);
        }
    }
    SUBCASE("long path") {
        Graph g = path_graph(60);
        auto r = main_decomposition(g, 1);
        check_outcome(g, r, 1);
    }
    SUBCASE("long cycle with t = 2") {
        Graph g = cycle(80);
        auto r = main_decomposition(g, 2);
        check_outcome(g, r, 2);
    }
    SUBCASE("empty domain") {
        Graph g = cycle(4);
        auto r = main_decomposition(g, VertexSet(4), 1);
        CHECK(r.sep.paths.empty());
        CHECK(r.sep.esd.h_size() == 0);
    }
}

TEST_CASE("main decomposition on random graphs") {
    Rng rng(99);
    for (int iter = 0; iter < 300; ++iter) {
        const int n = static_cast<int>(rng.uniform(1, 45));
        const int t = static_cast<int>(rng.uniform(1, 3));
        Graph g = rng.chance(1, 2) ? random_graph(rng, n, static_cast<int>(rng.uniform(3, 20)))
                                   : line_graph(random_graph(rng, static_cast<int>(rng.uniform(2, 16)), 25));
        INFO("iter " << iter);
        auto r = main_decomposition(g, t, DecomposeOptions{true});
        check_outcome(g, r, t);
    }
}

TEST_CASE("decomposition with peeled patterns") {
    SUBCASE("s = 2 on claw plus C5") {
        std::vector<std::pair<int, int>> es{{0, 1}, {0, 2}, {0, 3}};
        for (int i = 0; i < 5; ++i) es.emplace_back(4 + i, 4 + (i + 1) % 5);
        Graph g = Graph::from_edges(9, es);
        auto d = decompose_s_sttt_free(g, 2, 1);
        CHECK(d.peeled.size() == 1);
        CHECK(check_s_free(g, g.all(), d, 2, 1).empty());
        CHECK(VertexSet(9, {0, 1, 2, 3}).subset_of(d.x));
    }
    SUBCASE("two disjoint claws peel at s = 3") {
        Graph g = Graph::from_edges(8, {{0, 1}, {0, 2}, {0, 3}, {4, 5}, {4, 6}, {4, 7}});
        auto d = decompose_s_sttt_free(g, 3, 1);
        CHECK(d.peeled.size() == 2);
        CHECK(check_s_free(g, g.all(), d, 3, 1).empty());
    }
    SUBCASE("a pattern found after the peels is reported") {
        Graph g = hooked_long_path(30);
        REQUIRE(main_decomposition(g, 1).is_claw());
        CHECK_THROWS_AS(decompose_s_sttt_free(g, 1, 1), SIllegalInput);
    }
    SUBCASE("s = 1 is the main decomposition") {
        Graph g = cycle(30);
        auto d = decompose_s_sttt_free(g, 1, 1);
        CHECK(d.peeled.empty());
        CHECK(check_s_free(g, g.all(), d, 1, 1).empty());
    }
}
