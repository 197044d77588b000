#include <doctest.h>

#include "stf/combine.hpp"
#include "stf/random.hpp"

using namespace stf;

namespace {

// Independent oracle: try every subset of edges.
std::int64_t best_by_edge_subsets(const MatchingInstance& inst) {
    const int m = static_cast<int>(inst.edges.size());
    std::int64_t best = 0;
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
        std::vector<bool> used(inst.vertices, false);
        std::int64_t s = 0;
        bool ok = true;
        for (int k = 0; k < m && ok; ++k) {
            if (!(mask >> k & 1u)) continue;
            const auto& e = inst.edges[k];
            if (used[e.u] || used[e.v]) ok = false;
            used[e.u] = used[e.v] = true;
            s += e.w;
        }
        if (ok) best = std::max(best, s);
    }
    return best;
}

MatchingInstance random_instance(Rng& rng, int n, int pct, std::int64_t lo, std::int64_t hi) {
    MatchingInstance inst;
    inst.vertices = n;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.chance(pct, 100)) inst.edges.push_back({u, v, rng.uniform(lo, hi)});
    return inst;
}

void check_is_matching(const MatchingInstance& inst, const Matching& m) {
    std::int64_t w = 0;
    std::vector<int> deg(inst.vertices, 0);
    for (int k : m.edge_ids) {
        ++deg[inst.edges[k].u];
        ++deg[inst.edges[k].v];
        w += inst.edges[k].w;
    }
    for (int d : deg) CHECK(d <= 1);
    CHECK(w == m.weight);
}

}  // namespace

TEST_CASE("matching on small fixed graphs") {
    MatchingInstance tri{3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}}};
    CHECK(max_weight_matching(tri).weight == 1);
    MatchingInstance p3{3, {{0, 1, 2}, {1, 2, 3}}};
    CHECK(max_weight_matching(p3).weight == 3);
    MatchingInstance neg{2, {{0, 1, -4}}};
    CHECK(max_weight_matching(neg).weight == 0);
    CHECK(max_weight_matching(MatchingInstance{0, {}}).weight == 0);
}

TEST_CASE("blossom and subset dynamic program agree with edge-subset enumeration") {
    Rng rng(17);
    for (int it = 0; it < 400; ++it) {
        int n = static_cast<int>(rng.uniform(1, 9));
        auto inst = random_instance(rng, n, static_cast<int>(rng.uniform(20, 70)), -5, 20);
        if (inst.edges.size() > 18) inst.edges.resize(18);
        auto want = best_by_edge_subsets(inst);
        auto a = max_weight_matching(inst);
        auto b = max_weight_matching_enumerate(inst);
        check_is_matching(inst, a);
        check_is_matching(inst, b);
        CHECK(a.weight == want);
        CHECK(b.weight == want);
    }
}

TEST_CASE("blossom agrees with the subset dynamic program on denser graphs") {
    Rng rng(99);
    for (int it = 0; it < 300; ++it) {
        int n = static_cast<int>(rng.uniform(8, 16));
        auto inst = random_instance(rng, n, static_cast<int>(rng.uniform(30, 90)), 1, 1000);
        auto a = max_weight_matching(inst);
        check_is_matching(inst, a);
        CHECK(a.weight == max_weight_matching_enumerate(inst).weight);
    }
}
