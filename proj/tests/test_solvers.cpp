#include <doctest.h>

#include <bit>

#include "stf/combine.hpp"
#include "stf/decompose.hpp"
#include "stf/errors.hpp"
#include "stf/gyarfas.hpp"
#include "stf/patterns.hpp"
#include "stf/random.hpp"
#include "stf/solvers.hpp"

using namespace stf;

namespace {

Graph random_graph(Rng& rng, int n, int permille) {
    std::vector<std::pair<int, int>> es;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.chance(permille, 1000)) es.emplace_back(u, v);
    return Graph::from_edges(n, es);
}

Graph cycle(int n) {
    std::vector<std::pair<int, int>> es;
    for (int i = 0; i < n; ++i) es.emplace_back(i, (i + 1) % n);
    return Graph::from_edges(n, es);
}

Graph complete(int n) {
    std::vector<std::pair<int, int>> es;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) es.emplace_back(u, v);
    return Graph::from_edges(n, es);
}

Weights random_weights(Rng& rng, int n, int hi) {
    Weights w(n);
    for (auto& x : w) x = rng.uniform(1, hi);
    return w;
}

// Random S_{t,t,t}-free graph by rejection.
Graph filtered_graph(Rng& rng, int n, int t) {
    while (true) {
        Graph g = random_graph(rng, n, static_cast<int>(rng.uniform(80, 600)));
        if (!find_sttt(g, t)) return g;
    }
}

}  // namespace

TEST_CASE("brute force on fixed graphs") {
    SUBCASE("C5") {
        Graph g = cycle(5);
        Weights w(5, 1);
        VertexSet s = brute_force_mwis(g, w);
        CHECK(total_weight(w, s) == 2);
        CHECK(s == VertexSet(5, {0, 2}));
    }
    SUBCASE("complete graph keeps the heaviest vertex") {
        Graph g = complete(6);
        Weights w{3, 9, 4, 9, 1, 2};
        CHECK(brute_force_mwis(g, w) == VertexSet(6, {1}));
        CHECK(brute_force_mwis_enumerate(g, w, g.all()) == VertexSet(6, {1}));
    }
    SUBCASE("edgeless graph keeps everything") {
        Graph g(7);
        Weights w(7, 5);
        CHECK(brute_force_mwis(g, w) == g.all());
    }
    SUBCASE("caps") {
        Graph g(25);
        Weights w(25, 1);
        CHECK_THROWS_AS(brute_force_mwis(g, w), CapExceeded);
        CHECK_THROWS_AS(brute_force_mwis_enumerate(Graph(19), Weights(19, 1), VertexSet::full(19)), CapExceeded);
    }
    SUBCASE("negative weights are rejected") {
        Graph g(2);
        CHECK_THROWS_AS(brute_force_mwis(g, Weights{1, -1}), InputError);
    }
}

TEST_CASE("branch and bound agrees with enumeration, tie-break included") {
    Rng rng(5);
    for (int iter = 0; iter < 300; ++iter) {
        const int n = static_cast<int>(rng.uniform(1, 16));
        Graph g = random_graph(rng, n, static_cast<int>(rng.uniform(100, 700)));
        Weights w = random_weights(rng, n, iter % 2 ? 3 : 100);
        CHECK(brute_force_mwis(g, w) == brute_force_mwis_enumerate(g, w, g.all()));
    }
}

TEST_CASE("parse rationals") {
    CHECK(parse_rational("1/2") == Rational(1, 2));
    CHECK(parse_rational("0.2") == Rational(1, 5));
    CHECK(parse_rational("3") == Rational(3));
    CHECK(parse_rational(".25") == Rational(1, 4));
    CHECK(to_string(Rational(6, 4)) == "3/2");
    CHECK_THROWS_AS(parse_rational("1/0"), InputError);
    CHECK_THROWS_AS(parse_rational("x"), InputError);
    CHECK_THROWS_AS(parse_rational(""), InputError);
}

TEST_CASE("beta evaluates exactly") {
    CHECK(beta(0, Rational(1, 2), 1, 16) == Rational(1, 480));
    CHECK(beta(3, Rational(1, 2), 1, 16) == Rational(1, 192));
    CHECK_THROWS_AS(beta(4, Rational(1, 2), 1, 16), DomainError);
    CHECK_THROWS_AS(beta(0, Rational(1, 2), 1, 24), DomainError);
    for (int logn = 1; logn <= 20; ++logn)
        for (int h = 0; h < logn; ++h)
            for (Rational eps : {Rational(1, 100), Rational(1, 5), Rational(1, 2), Rational(99, 100)})
                for (int t = 1; t <= 4; ++t) {
                    Rational b = beta(h, eps, t, std::int64_t{1} << logn);
                    CHECK(b > 0);
                    CHECK(b <= Rational(1, 2));
                }
    HeavyVertexContext ctx = heavy_context(0, Rational(1, 2), 1, 16);
    CHECK(ctx.size_bound == 4 * 480);
    CHECK(heavy_context(3, Rational(1, 2), 1, 16).size_bound == 192);
}

TEST_CASE("good set family") {
    SUBCASE("bound 0 gives only the empty set") {
        Graph g = cycle(5);
        GoodSetFamily f(g, g.all(), 0);
        auto j = f.next();
        REQUIRE(j);
        CHECK(j->empty());
        CHECK_FALSE(f.next());
    }
    SUBCASE("bound 1 on a triangle") {
        Graph g = complete(3);
        GoodSetFamily f(g, g.all(), 1);
        std::vector<VertexSet> got;
        while (auto j = f.next()) got.push_back(*j);
        REQUIRE(got.size() == 4);
        CHECK(got[0].empty());
        CHECK(got[1] == VertexSet(3, {0}));
        CHECK(got[2] == VertexSet(3, {1}));
        CHECK(got[3] == VertexSet(3, {2}));
    }
    SUBCASE("counts every independent set up to the bound") {
        Rng rng(8);
        for (int iter = 0; iter < 40; ++iter) {
            const int n = static_cast<int>(rng.uniform(1, 12));
            Graph g = random_graph(rng, n, 300);
            const int bound = static_cast<int>(rng.uniform(0, 5));
            long expect = 0;
            for (std::uint32_t m = 0; m < (1u << n); ++m) {
                VertexSet s(n);
                for (int i = 0; i < n; ++i)
                    if (m >> i & 1) s.set(i);
                if (s.count() <= bound && is_independent(g, s)) ++expect;
            }
            GoodSetFamily f(g, g.all(), bound);
            long got = 0;
            int last = 0;
            while (auto j = f.next()) {
                CHECK(is_independent(g, *j));
                CHECK(j->count() >= last);
                last = j->count();
                ++got;
            }
            CHECK(got == expect);
        }
    }
}

TEST_CASE("branching threshold") {
    // deg^2 * t >= n: on n = 100, t = 1 a star center of degree 10 branches, 9 does not.
    for (int d : {9, 10}) {
        std::vector<std::pair<int, int>> es;
        for (int i = 1; i <= d; ++i) es.emplace_back(0, i);
        for (int i = d + 1; i + 1 < 100; i += 2) es.emplace_back(i, i + 1);
        Graph g = Graph::from_edges(100, es);
        SolverConfig cfg;
        auto r = solve_exact_subexp(g, Weights(100, 1), cfg);
        CHECK(r.weight == d + (100 - d) / 2);
        if (d == 10)
            CHECK(r.stats.branchings >= 1);
        else
            CHECK(r.stats.branchings == 0);
    }
}

TEST_CASE("exact solver matches brute force") {
    SUBCASE("C5") {
        Graph g = cycle(5);
        SolverConfig cfg;
        cfg.n0 = 3;
        CHECK(solve_exact_subexp(g, Weights(5, 1), cfg).weight == 2);
    }
    SUBCASE("random filtered graphs") {
        Rng rng(11);
        for (int iter = 0; iter < 120; ++iter) {
            const int t = static_cast<int>(rng.uniform(1, 2));
            const int n = static_cast<int>(rng.uniform(1, 18));
            Graph g = filtered_graph(rng, n, t);
            Weights w = random_weights(rng, n, 100);
            SolverConfig cfg;
            cfg.t = t;
            cfg.n0 = 3 + iter % 3;
            cfg.paranoid = true;
            cfg.memoize = iter % 2;
            auto r = solve_exact_subexp(g, w, cfg);
            CHECK(is_independent(g, r.set));
            CHECK(r.weight == total_weight(w, brute_force_mwis(g, w)));
        }
    }
    SUBCASE("line graphs against matching") {
        Rng rng(12);
        for (int iter = 0; iter < 20; ++iter) {
            const int bn = static_cast<int>(rng.uniform(4, 14));
            Graph base = random_graph(rng, bn, 300);
            std::vector<std::pair<int, int>> es;
            Graph g = line_graph(base, &es);
            Weights w = random_weights(rng, g.size(), 50);
            MatchingInstance mi{bn, {}};
            for (int i = 0; i < g.size(); ++i) mi.edges.push_back({es[i].first, es[i].second, w[i]});
            SolverConfig cfg;
            cfg.n0 = 4;
            CHECK(solve_exact_subexp(g, w, cfg).weight == max_weight_matching(mi).weight);
        }
    }
    SUBCASE("s = 2 inputs with a peeled claw") {
        std::vector<std::pair<int, int>> es{{0, 1}, {0, 2}, {0, 3}};
        for (int i = 0; i < 7; ++i) es.emplace_back(4 + i, 4 + (i + 1) % 7);
        Graph g = Graph::from_edges(11, es);
        Weights w{5, 1, 2, 3, 4, 4, 4, 4, 4, 4, 9};
        SolverConfig cfg;
        cfg.s = 2;
        cfg.n0 = 3;
        CHECK(solve_exact_subexp(g, w, cfg).weight == total_weight(w, brute_force_mwis(g, w)));
    }
    SUBCASE("bad input is reported") {
        // A path with one vertex hooked onto its three split pieces; the
        // decomposition meets the claw and no degree is high enough to branch.
        const int m = 30;
        std::vector<std::pair<int, int>> es;
        for (int i = 0; i + 1 < m; ++i) es.emplace_back(i, i + 1);
        Graph p = Graph::from_edges(m, es);
        SplitState st = split_paths(p, p.all(), PathBundle{{gyarfas_path(p).path}}, 1);
        for (const auto& piece : st.pieces) es.emplace_back(piece.at(2), m);
        Graph g = Graph::from_edges(m + 1, es);
        SolverConfig cfg;
        cfg.n0 = 3;
        CHECK_THROWS_AS(solve_exact_subexp(g, Weights(m + 1, 1), cfg), SIllegalInput);
        cfg.n0 = 2;
        CHECK_THROWS_AS(solve_exact_subexp(g, Weights(m + 1, 1), cfg), InputError);
    }
    SUBCASE("budget") {
        Graph g = cycle(40);
        SolverConfig cfg;
        cfg.n0 = 3;
        cfg.budget = 5;
        CHECK_THROWS_AS(solve_exact_subexp(g, Weights(40, 1), cfg), CapExceeded);
    }
}

TEST_CASE("particles of every decomposing call are at most half") {
    Rng rng(13);
    for (int iter = 0; iter < 20; ++iter) {
        Graph base = random_graph(rng, 12, 350);
        Graph g = line_graph(base);
        SolverConfig cfg;
        cfg.n0 = 4;
        auto r = solve_exact_subexp(g, Weights(g.size(), 1), cfg);
        for (const auto& rec : r.stats.decompose_levels) CHECK(2 * rec.max_particle <= rec.n);
    }
}

TEST_CASE("qptas") {
    SUBCASE("C5") {
        Graph g = cycle(5);
        SolverConfig cfg;
        cfg.n0 = 3;
        cfg.family_cap = std::nullopt;
        auto r = solve_qptas(g, Weights(5, 1), cfg);
        CHECK(r.weight == 2);
    }
    SUBCASE("within 1 - eps of the optimum") {
        Rng rng(14);
        for (int iter = 0; iter < 60; ++iter) {
            const int t = static_cast<int>(rng.uniform(1, 2));
            const int n = static_cast<int>(rng.uniform(1, 18));
            Graph g = filtered_graph(rng, n, t);
            Weights w = random_weights(rng, n, 100);
            SolverConfig cfg;
            cfg.t = t;
            cfg.n0 = 4 + iter % 4;
            cfg.epsilon = iter % 2 ? Rational(1, 5) : Rational(1, 2);
            cfg.family_cap = std::nullopt;
            cfg.paranoid = true;
            cfg.memoize = true;
            auto r = solve_qptas(g, w, cfg);
            CHECK(is_independent(g, r.set));
            CHECK(Rational(r.weight) >= (1 - cfg.epsilon) * total_weight(w, brute_force_mwis(g, w)));
            CHECK_FALSE(r.stats.family_truncated);
            CHECK(r.stats.depth <= 5);
        }
    }
    SUBCASE("a small family cap still returns an independent set") {
        Rng rng(15);
        Graph g = line_graph(random_graph(rng, 10, 400));
        SolverConfig cfg;
        cfg.n0 = 4;
        cfg.family_cap = 2;
        auto r = solve_qptas(g, Weights(g.size(), 1), cfg);
        CHECK(is_independent(g, r.set));
        CHECK(r.stats.family_truncated);
    }
}

TEST_CASE("good-set accounting against a known optimum") {
    Rng rng(16);
    int checked = 0;
    for (int iter = 0; iter < 80; ++iter) {
        const int t = static_cast<int>(rng.uniform(1, 2));
        const int n = static_cast<int>(rng.uniform(8, 22));
        Graph g = filtered_graph(rng, n, t);
        // A few very heavy vertices, so that light ones are not beta-heavy.
        Weights w = random_weights(rng, n, 3);
        for (int k = 0; k < 3; ++k) w[rng.uniform(0, n - 1)] = 100000;
        const VertexSet opt = brute_force_mwis(g, w);
        const Rational eps = iter % 2 ? Rational(1, 5) : Rational(1, 2);
        const std::int64_t big_n = root_power_of_two(n);
        const HeavyVertexContext ctx = heavy_context(0, eps, t, big_n);
        // Greedy good set: take optimum vertices until every heavy vertex is dominated.
        VertexSet heavy = heavy_vertices(g, w, g.all(), opt, ctx.beta);
        VertexSet j(n);
        while (!heavy.subset_of(closed_neighborhood(g, j))) {
            int pick = -1, gain = -1;
            for (int v : opt - j) {
                const int c = (closed_neighborhood(g, v) & heavy).count();
                if (c > gain) gain = c, pick = v;
            }
            j.set(pick);
        }
        REQUIRE(is_good_for(g, w, g.all(), j, opt, ctx.beta));
        CHECK(j.count() <= ctx.size_bound);
        const VertexSet rem = g.all() - closed_neighborhood(g, j);
        if (rem.empty()) continue;
        SFreeDecomposition d = decompose_s_sttt_free(g, rem, 1, t);
        const VertexSet y = open_neighborhood(g, j) | closed_neighborhood(g, d.x);
        const int log_n = std::countr_zero(static_cast<std::uint64_t>(big_n));
        const Rational share = eps / ((1 - eps) * log_n + eps);
        // Non-heavy vertices of X each see at most beta of the optimum.
        CHECK(Rational(total_weight(w, opt & y)) <= d.x.count() * ctx.beta * total_weight(w, opt));
        if (d.x.count() <= 12 * (t + 1) * log_n) {
            CHECK(Rational(total_weight(w, opt & y)) <= share * total_weight(w, opt));
            ++checked;
        }
    }
    CHECK(checked >= 40);
}
