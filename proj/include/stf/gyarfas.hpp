#pragma once

#include <vector>

#include "stf/graph.hpp"

namespace stf {

struct GyarfasResult {
    std::vector<int> path;
    std::vector<VertexSet> components;  // of g[domain] - N[path]
};

// Induced path Q in g[domain] such that every component of g[domain] - N[Q]
// has at most |domain|/2 vertices. Requires a nonempty domain.
GyarfasResult gyarfas_path(const Graph& g, const VertexSet& domain, bool paranoid = false);
GyarfasResult gyarfas_path(const Graph& g, bool paranoid = false);

}  // namespace stf
