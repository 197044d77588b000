#include <doctest.h>

#include <algorithm>

#include "stf/errors.hpp"
#include "stf/random.hpp"
#include "stf/three_in_a_tree.hpp"

using namespace stf;

namespace {

Graph random_graph(Rng& rng, int n, int pct) {
    std::vector<std::pair<int, int>> es;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.chance(pct, 100)) es.emplace_back(u, v);
    return Graph::from_edges(n, es);
}

VertexSet random_terminals(Rng& rng, int n, int k) {
    std::vector<int> vs(n);
    for (int i = 0; i < n; ++i) vs[i] = i;
    rng.shuffle(vs);
    vs.resize(k);
    return VertexSet::of(n, vs);
}

void check_outcome(const Graph& g, const VertexSet& z, const ThreeInATreeOutcome& r) {
    if (r.is_tree())
        CHECK(check_tree_certificate(g, z, *r.tree).empty());
    else
        CHECK(check_terminal_decomposition(g, g.all(), z, r.esd).empty());
}

}  // namespace

TEST_CASE("three-in-a-tree on small fixed graphs") {
    SUBCASE("claw with terminals on the leaves") {
        Graph g = Graph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}});
        VertexSet z(4, {1, 2, 3});
        auto r = three_in_a_tree(g, z);
        REQUIRE(r.is_tree());
        CHECK(r.tree->tree == g.all());
    }
    SUBCASE("triangle has no tree through all three") {
        Graph g = Graph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}});
        VertexSet z(3, {0, 1, 2});
        CHECK_FALSE(brute_tree_oracle(g, z).has_value());
        auto r = three_in_a_tree(g, z);
        CHECK_FALSE(r.is_tree());
        check_outcome(g, z, r);
    }
    SUBCASE("path with terminals at both ends and the middle") {
        Graph g = Graph::from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
        VertexSet z(5, {0, 2, 4});
        auto r = three_in_a_tree(g, z);
        REQUIRE(r.is_tree());
        check_outcome(g, z, r);
    }
    SUBCASE("two terminals give one strip") {
        Graph g = Graph::from_edges(3, {{0, 1}, {1, 2}});
        VertexSet z(3, {0, 2});
        auto r = three_in_a_tree(g, z);
        CHECK_FALSE(r.is_tree());
        CHECK(r.esd.edge_count() == 1);
        check_outcome(g, z, r);
    }
    SUBCASE("terminals split across components") {
        Graph g = Graph::from_edges(6, {{0, 1}, {2, 3}, {4, 5}});
        VertexSet z(6, {0, 2, 4});
        auto r = three_in_a_tree(g, z);
        CHECK_FALSE(r.is_tree());
        check_outcome(g, z, r);
    }
    SUBCASE("no terminals") {
        Graph g = Graph::from_edges(3, {{0, 1}});
        auto r = three_in_a_tree(g, VertexSet(3));
        CHECK_FALSE(r.is_tree());
        check_outcome(g, VertexSet(3), r);
    }
}

TEST_CASE("three-in-a-tree agrees with subset enumeration") {
    Rng rng(20261016);
    int trees = 0, decomps = 0;
    for (int iter = 0; iter < 1500; ++iter) {
        const int n = static_cast<int>(rng.uniform(3, 12));
        const int pct = static_cast<int>(rng.uniform(15, 70));
        Graph g = random_graph(rng, n, pct);
        VertexSet z = random_terminals(rng, n, static_cast<int>(rng.uniform(2, std::min(n, 6))));
        auto expect = brute_tree_oracle(g, z);
        auto r = three_in_a_tree(g, z);
        INFO("iter " << iter << " n " << n << " z " << z.str());
        REQUIRE(r.is_tree() == expect.has_value());
        check_outcome(g, z, r);
        (r.is_tree() ? trees : decomps)++;
    }
    CHECK(trees > 100);
    CHECK(decomps > 100);
}

TEST_CASE("three-in-a-tree on line graphs decomposes along the root graph") {
    Rng rng(7);
    for (int iter = 0; iter < 20; ++iter) {
        const int bn = static_cast<int>(rng.uniform(8, 16));
        Graph base = random_graph(rng, bn, 30);
        Graph g = line_graph(base);
        if (g.size() < 3) continue;
        VertexSet z = random_terminals(rng, g.size(), std::min(g.size(), 5));
        auto r = three_in_a_tree(g, z);
        check_outcome(g, z, r);
    }
}

TEST_CASE("brute tree oracle enforces its cap") {
    Graph g = Graph::from_edges(15, {});
    CHECK_THROWS_AS(brute_tree_oracle(g, VertexSet(15, {0, 1, 2})), CapExceeded);
}

TEST_CASE("three-in-a-tree decomposes line graphs with pendant terminals") {
    // Terminals are line vertices of pendant root edges, so no induced tree
    // can hold three of them.
    Rng rng(11);
    for (int iter = 0; iter < 12; ++iter) {
        const int core = static_cast<int>(rng.uniform(10, 30));
        const int pend = static_cast<int>(rng.uniform(3, 6));
        std::vector<std::pair<int, int>> es;
        for (int v = 1; v < core; ++v) es.emplace_back(static_cast<int>(rng.uniform(0, v - 1)), v);
        const int extra = static_cast<int>(rng.uniform(core, 2 * core));
        for (int k = 0; k < extra; ++k) {
            int a = static_cast<int>(rng.uniform(0, core - 1)), b = static_cast<int>(rng.uniform(0, core - 1));
            if (a != b) es.emplace_back(std::min(a, b), std::max(a, b));
        }
        std::sort(es.begin(), es.end());
        es.erase(std::unique(es.begin(), es.end()), es.end());
        for (int p = 0; p < pend; ++p) es.emplace_back(static_cast<int>(rng.uniform(0, core - 1)), core + p);
        Graph base = Graph::from_edges(core + pend, es);
        std::vector<std::pair<int, int>> lines;
        Graph g = line_graph(base, &lines);
        VertexSet z(g.size());
        for (int i = 0; i < g.size(); ++i)
            if (lines[i].second >= core) z.set(i);
        auto r = three_in_a_tree(g, z);
        INFO("iter " << iter << " n " << g.size());
        CHECK_FALSE(r.is_tree());
        check_outcome(g, z, r);
    }
}
