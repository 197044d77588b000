#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stf/vertex_set.hpp"

namespace stf {

using Weight = std::int64_t;
using Weights = std::vector<Weight>;

// Largest weight accepted from files; keeps sums over a few thousand vertices exact.
inline constexpr Weight kMaxWeight = Weight{1} << 50;

// Immutable simple undirected graph on vertices 0..n-1.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n) : adj_(n, VertexSet(n)) {}
    // Throws InputError on self-loops, duplicates or out-of-range endpoints.
    static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges);

    int size() const { return static_cast<int>(adj_.size()); }
    const VertexSet& neighbors(int v) const { return adj_[v]; }
    bool adjacent(int u, int v) const { return adj_[u].test(v); }
    int degree(int v) const { return adj_[v].count(); }
    int edge_count() const;
    std::vector<std::pair<int, int>> edges() const;  // u < v, sorted
    VertexSet all() const { return VertexSet::full(size()); }
    VertexSet none() const { return VertexSet(size()); }

    const std::vector<std::string>& labels() const { return labels_; }
    void set_labels(std::vector<std::string> l) { labels_ = std::move(l); }

private:
    std::vector<VertexSet> adj_;
    std::vector<std::string> labels_;
};

struct WeightedGraph {
    Graph g;
    Weights w;
};

// Induced subgraph with the id map back to the parent graph.
struct Subgraph {
    Graph g;
    std::vector<int> to_parent;
    std::vector<int> from_parent;  // -1 when absent
    VertexSet lift(const VertexSet& local, int parent_n) const;
    VertexSet restrict(const VertexSet& parent) const;
};

Subgraph induced_subgraph(const Graph& g, const VertexSet& keep);

void check_ids(const Graph& g, const VertexSet& s);
VertexSet closed_neighborhood(const Graph& g, const VertexSet& s);
VertexSet open_neighborhood(const Graph& g, const VertexSet& s);
VertexSet closed_neighborhood(const Graph& g, int v);
// Components of g[domain], ordered by smallest member.
std::vector<VertexSet> connected_components(const Graph& g, const VertexSet& domain);
// Component of g[domain] containing v.
VertexSet component_of(const Graph& g, const VertexSet& domain, int v);
bool is_connected(const Graph& g, const VertexSet& domain);
bool is_independent(const Graph& g, const VertexSet& s);
bool is_induced_path(const Graph& g, const std::vector<int>& seq);
bool touches(const Graph& g, const VertexSet& a, const VertexSet& b);
// g[s] is a tree (connected and |E| = |s| - 1); the empty set is not a tree.
bool is_induced_tree(const Graph& g, const VertexSet& s);
int edges_within(const Graph& g, const VertexSet& s);
Weight total_weight(const Weights& w, const VertexSet& s);

// Line graph of base; vertex i of the result is base edge edges[i].
Graph line_graph(const Graph& base, std::vector<std::pair<int, int>>* edges = nullptr);

// Cliques of g[domain] covering every edge exactly once, with every vertex in
// at most two of them: the vertices of a root graph whose line graph is
// g[domain]. Empty when there is none or the search passes step_cap.
struct KrauszCover {
    std::vector<VertexSet> cliques;
    std::vector<std::vector<int>> of;  // cliques holding each vertex
};
std::optional<KrauszCover> krausz_cover(const Graph& g, const VertexSet& domain, long step_cap = 200000);

// Text format: "p n m", "e u v" (1-based), "w v weight"; "c ..." comments.
WeightedGraph read_graph(std::istream& in);
WeightedGraph read_graph_string(const std::string& text);
WeightedGraph read_graph_file(const std::string& path);
void write_graph(std::ostream& out, const Graph& g, const Weights& w);
std::string write_graph_string(const Graph& g, const Weights& w);

}  // namespace stf
