#pragma once

#include <cstdint>
#include <vector>

#include "stf/esd.hpp"
#include "stf/graph.hpp"

namespace stf {

struct WeightedEdge {
    int u, v;
    std::int64_t w;
};

struct MatchingInstance {
    int vertices = 0;
    std::vector<WeightedEdge> edges;
};

struct Matching {
    std::vector<int> mate;        // -1 when unmatched
    std::vector<int> edge_ids;    // indices into the instance's edge list
    std::int64_t weight = 0;
};

// Maximum total weight over all matchings (the empty one included), by the
// primal-dual blossom method. Edges of non-positive weight are never used.
Matching max_weight_matching(const MatchingInstance& inst);
// Exhaustive dynamic program over vertex subsets; at most 16 vertices.
Matching max_weight_matching_enumerate(const MatchingInstance& inst);
inline constexpr int kEnumerateMatchingCap = 16;

enum class StripState { interior, half_x, half_y, full };

// Solutions aligned with particles(esd): sols[i] solves particles(esd)[i].
struct ParticleSolutions {
    std::vector<Particle> parts;
    std::vector<VertexSet> sols;
};

struct CombineResult {
    VertexSet set;
    Weight weight = 0;
    std::vector<StripState> states;  // per edge of H
};

// Value of the best capacity-feasible strip state assignment, realised by a
// maximum-weight matching on H plus one pendant per edge.
CombineResult combine_via_matching(const Graph& g, const Esd& esd, const ParticleSolutions& ps, const Weights& w,
                                   bool use_enumeration = false);
// Exhaustive over all 4^|E(H)| assignments; |E(H)| <= cap.
CombineResult reference_combiner(const Graph& g, const Esd& esd, const ParticleSolutions& ps, const Weights& w,
                                 int cap = 8);
// Union of particle solutions selected by an assignment; no checks.
VertexSet assemble(const Esd& esd, const ParticleSolutions& ps, const std::vector<StripState>& states);
bool capacity_feasible(const Esd& esd, const std::vector<StripState>& states);

}  // namespace stf
