#pragma once

#include <array>
#include <string>
#include <vector>

#include <json.hpp>

#include "stf/graph.hpp"

namespace stf {

struct EsdEdge {
    int x = -1, y = -1;  // x < y
    VertexSet all;       // eta(xy)
    VertexSet side_x;    // eta(xy, x)
    VertexSet side_y;    // eta(xy, y)

    int other(int end) const { return end == x ? y : x; }
    const VertexSet& side(int end) const { return end == x ? side_x : side_y; }
    VertexSet& side(int end) { return end == x ? side_x : side_y; }
};

struct EsdTriangle {
    int x = -1, y = -1, z = -1;  // x < y < z
    VertexSet set;
};

// Extended strip decomposition (H, eta) of g[domain()], host ids 0..host_n-1.
// Triangle sets exist for exactly the triangles of H; call rebuild_triangles()
// after editing H directly.
class Esd {
public:
    Esd() = default;
    explicit Esd(int host_n) : host_n_(host_n) {}

    int host_n() const { return host_n_; }
    int h_size() const { return static_cast<int>(vset_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    const VertexSet& vertex_set(int x) const { return vset_[x]; }
    VertexSet& vertex_set(int x) { return vset_[x]; }
    const std::vector<EsdEdge>& edges() const { return edges_; }
    std::vector<EsdEdge>& edges() { return edges_; }
    const std::vector<EsdTriangle>& triangles() const { return tris_; }
    std::vector<EsdTriangle>& triangles() { return tris_; }
    const std::vector<int>& incident(int x) const { return inc_[x]; }
    int degree(int x) const { return static_cast<int>(inc_[x].size()); }

    int add_vertex(VertexSet s = {});
    // Adds edge xy (x != y, not present). Creates empty sets for new triangles.
    int add_edge(int x, int y, VertexSet all = {}, VertexSet side_x = {}, VertexSet side_y = {});
    int edge_index(int x, int y) const;
    int triangle_index(int x, int y, int z) const;
    // Removes H-vertices and edges; sets attached to removed elements are dropped.
    void remove_edges(const std::vector<int>& edge_ids);
    void remove_vertices(const std::vector<int>& xs);
    void rebuild_triangles();

    Graph pattern_graph() const;
    VertexSet domain() const;
    // Intersects every eta set with keep.
    Esd restricted(const VertexSet& keep) const;

private:
    int host_n_ = 0;
    std::vector<VertexSet> vset_;
    std::vector<EsdEdge> edges_;
    std::vector<EsdTriangle> tris_;
    std::vector<std::vector<int>> inc_;
    void rebuild_incidence();
};

enum class ParticleKind { vertex, edge_interior, half_edge, full_edge, triangle };
const char* to_string(ParticleKind k);

struct Particle {
    ParticleKind kind;
    // vertex: {x}; edge kinds: {x, y} with anchor[0] the chosen end for half_edge; triangle: {x, y, z}.
    std::array<int, 3> anchor{-1, -1, -1};
    VertexSet members;
    std::string name() const;
};

struct Violation {
    std::string axiom;    // "partition", "side-containment", "sides-complete", "edge-pattern", "structure"
    std::string element;  // H element, e.g. "x-y"
    std::string witness;  // vertex or edge of the host graph
    std::string str() const { return axiom + " at " + element + ": " + witness; }
};

// Empty result means the axioms hold for g[domain].
std::vector<Violation> validate(const Graph& g, const Esd& esd, const VertexSet& domain);
std::vector<Violation> validate(const Graph& g, const Esd& esd);

std::vector<Particle> particles(const Esd& esd);
std::vector<Particle> nonempty_particles(const Esd& esd);
int max_particle_size(const Esd& esd);

bool is_rigid(const Esd& esd);
Esd rigidify(const Esd& esd);
// Also rigid, but strips with an empty side are moved to fresh leaves instead
// of being folded whenever no triangle set blocks it; then every particle of
// the result lies inside a particle of the input.
Esd rigidify_preserving_particles(const Esd& esd);
// Folds degree-one H-vertices whose strip carries no protected vertex into
// their neighbour. Keeps validity.
Esd fold_leaves(const Esd& esd, const VertexSet& protected_vertices);

struct BoundsReport {
    int n = 0, h_vertices = 0, h_edges = 0, nonempty_particles = 0;
};
// Throws BoundViolation unless |E(H)| <= n, |V(H)| <= 2n, nonempty particles <= 4n.
BoundsReport structural_bounds(const Esd& esd, int n);

// Checks the particle chain and the neighbourhood identity of the full-edge
// particle of edge e, for every choice of side representatives.
std::vector<Violation> particle_neighborhood_check(const Graph& g, const Esd& esd, int e);

Esd trivial_esd(const Graph& g, const VertexSet& domain);

// Host vertices v with eta(xy, x) = {v} for a degree-one x.
VertexSet peripheral_vertices(const Esd& esd);
// Degree-one H-vertex at which v is peripheral, or -1.
int peripheral_leaf(const Esd& esd, int v);

// No particle may touch all three paths. Throws InputError when the paths do
// not meet the preconditions (induced, pairwise non-touching, peripheral end).
std::vector<Violation> meet_check(const Graph& g, const Esd& esd, const std::vector<int>& p1,
                                  const std::vector<int>& p2, const std::vector<int>& p3);

nlohmann::json esd_to_json(const Esd& esd);
Esd esd_from_json(const nlohmann::json& j);
nlohmann::json set_to_json(const VertexSet& s);
VertexSet set_from_json(const nlohmann::json& j, int n);

}  // namespace stf
