#pragma once

#include <array>
#include <optional>
#include <vector>

#include "stf/graph.hpp"

namespace stf {

// Center plus three legs; leg[i][0] is adjacent to the center.
struct SubdividedClaw {
    int center = -1;
    std::array<std::vector<int>, 3> legs;

    VertexSet vertices(int n) const;
    // Sorted vertex list, used for lexicographic comparison.
    std::vector<int> sorted_vertices() const;
};

// Independent check that the claw's vertices induce exactly S_{t,t,t} in g.
bool is_induced_sttt(const Graph& g, const SubdividedClaw& c, int t);
// Same test on a bare vertex set: does g[s] induce S_{t,t,t}?
bool induces_sttt(const Graph& g, const VertexSet& s, int t);

// Default cap on t; larger values run but log a warning.
inline constexpr int kDefaultMaxT = 4;

// Lexicographically least certificate among all induced copies, or none.
std::optional<SubdividedClaw> find_sttt(const Graph& g, int t);
std::optional<SubdividedClaw> find_sttt(const Graph& g, const VertexSet& domain, int t);

// Reference search over all (3t+1)-subsets; test-only, n <= 16 or so.
std::optional<VertexSet> find_sttt_by_subsets(const Graph& g, int t);

// Trims the unique subtree of g[tree] spanning the terminals to an S_{t,t,t}
// around its degree-3 median. Throws InvariantViolation if that fails.
SubdividedClaw extract_sttt_from_tree(const Graph& g, const VertexSet& tree, const std::array<int, 3>& terminals,
                                      int t);

}  // namespace stf
