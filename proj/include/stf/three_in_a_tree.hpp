#pragma once

#include <array>
#include <optional>
#include <vector>

#include "stf/esd.hpp"
#include "stf/graph.hpp"

namespace stf {

struct TreeCertificate {
    VertexSet tree;
    std::array<int, 3> terminals{-1, -1, -1};
};

struct ThreeInATreeOutcome {
    std::optional<TreeCertificate> tree;
    Esd esd;  // meaningful when tree is empty
    bool is_tree() const { return tree.has_value(); }
};

struct ThreeInATreeOptions {
    long initial_budget = 4000;     // search nodes in the first round
    long max_budget = 200000000;    // total nodes before giving up
    bool self_check = true;
};

// Either an induced tree of g[domain] containing three vertices of z, or a
// rigid decomposition of g[domain] in which every vertex of z is peripheral
// at its own degree-one vertex of H.
ThreeInATreeOutcome three_in_a_tree(const Graph& g, const VertexSet& domain, const VertexSet& z,
                                    const ThreeInATreeOptions& opt = {});
ThreeInATreeOutcome three_in_a_tree(const Graph& g, const VertexSet& z, const ThreeInATreeOptions& opt = {});

// Exhaustive search over vertex subsets of g; throws CapExceeded above cap vertices.
std::optional<TreeCertificate> brute_tree_oracle(const Graph& g, const VertexSet& z, int cap = 14);

// Empty when g[cert.tree] is a tree holding three distinct vertices of z.
std::vector<std::string> check_tree_certificate(const Graph& g, const VertexSet& z, const TreeCertificate& cert);
// Axioms, rigidity, and each z peripheral at a distinct degree-one H-vertex.
std::vector<std::string> check_terminal_decomposition(const Graph& g, const VertexSet& domain, const VertexSet& z,
                                                      const Esd& esd);

}  // namespace stf
