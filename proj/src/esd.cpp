#include "stf/esd.hpp"

#include <algorithm>
#include <map>

#include "stf/errors.hpp"

namespace stf {

namespace {

std::string key2(int x, int y) { return std::to_string(x) + "-" + std::to_string(y); }
std::string key3(int x, int y, int z) { return key2(x, y) + "-" + std::to_string(z); }

VertexSet sized(VertexSet s, int n) {
    if (s.universe() == 0) return VertexSet(n);
    if (s.universe() != n) throw InputError("vertex set size does not match host");
    return s;
}

}  // namespace

int Esd::add_vertex(VertexSet s) {
    vset_.push_back(sized(std::move(s), host_n_));
    inc_.emplace_back();
    return h_size() - 1;
}

int Esd::add_edge(int x, int y, VertexSet all, VertexSet side_x, VertexSet side_y) {
    if (x == y || x < 0 || y < 0 || x >= h_size() || y >= h_size()) throw InputError("bad pattern edge");
    if (edge_index(x, y) != -1) throw InputError("pattern edge already present");
    EsdEdge e;
    e.x = std::min(x, y);
    e.y = std::max(x, y);
    e.all = sized(std::move(all), host_n_);
    VertexSet sx = sized(std::move(side_x), host_n_), sy = sized(std::move(side_y), host_n_);
    if (x < y) {
        e.side_x = std::move(sx);
        e.side_y = std::move(sy);
    } else {
        e.side_x = std::move(sy);
        e.side_y = std::move(sx);
    }
    edges_.push_back(std::move(e));
    inc_[x].push_back(edge_count() - 1);
    inc_[y].push_back(edge_count() - 1);
    rebuild_triangles();
    return edge_count() - 1;
}

int Esd::edge_index(int x, int y) const {
    if (x < 0 || x >= h_size()) return -1;
    for (int e : inc_[x])
        if (edges_[e].other(x) == y) return e;
    return -1;
}

int Esd::triangle_index(int x, int y, int z) const {
    std::array<int, 3> k{x, y, z};
    std::sort(k.begin(), k.end());
    for (std::size_t i = 0; i < tris_.size(); ++i)
        if (tris_[i].x == k[0] && tris_[i].y == k[1] && tris_[i].z == k[2]) return static_cast<int>(i);
    return -1;
}

void Esd::rebuild_incidence() {
    inc_.assign(vset_.size(), {});
    for (int i = 0; i < edge_count(); ++i) {
        inc_[edges_[i].x].push_back(i);
        inc_[edges_[i].y].push_back(i);
    }
}

void Esd::rebuild_triangles() {
    std::map<std::array<int, 3>, VertexSet> old;
    for (auto& t : tris_) old[{t.x, t.y, t.z}] = std::move(t.set);
    tris_.clear();
    const int k = h_size();
    std::vector<VertexSet> nb(k, VertexSet(k));
    for (const auto& e : edges_) {
        nb[e.x].set(e.y);
        nb[e.y].set(e.x);
    }
    for (int x = 0; x < k; ++x)
        for (int y = nb[x].next(x); y != -1; y = nb[x].next(y))
            for (int z = nb[y].next(y); z != -1; z = nb[y].next(z))
                if (nb[x].test(z)) {
                    EsdTriangle t{x, y, z, VertexSet(host_n_)};
                    auto it = old.find({x, y, z});
                    if (it != old.end()) t.set = std::move(it->second);
                    tris_.push_back(std::move(t));
                }
}

void Esd::remove_edges(const std::vector<int>& edge_ids) {
    std::vector<bool> drop(edges_.size(), false);
    for (int e : edge_ids) drop[e] = true;
    std::vector<EsdEdge> kept;
    for (std::size_t i = 0; i < edges_.size(); ++i)
        if (!drop[i]) kept.push_back(std::move(edges_[i]));
    edges_ = std::move(kept);
    rebuild_incidence();
    rebuild_triangles();
}

void Esd::remove_vertices(const std::vector<int>& xs) {
    std::vector<int> remap(vset_.size(), 0);
    for (int x : xs) remap[x] = -1;
    int next = 0;
    std::vector<VertexSet> nv;
    for (std::size_t i = 0; i < vset_.size(); ++i)
        if (remap[i] != -1) {
            remap[i] = next++;
            nv.push_back(std::move(vset_[i]));
        }
    std::vector<EsdEdge> ne;
    for (auto& e : edges_) {
        if (remap[e.x] == -1 || remap[e.y] == -1) continue;
        e.x = remap[e.x];
        e.y = remap[e.y];
        ne.push_back(std::move(e));
    }
    std::vector<EsdTriangle> nt;
    for (auto& t : tris_) {
        if (remap[t.x] == -1 || remap[t.y] == -1 || remap[t.z] == -1) continue;
        t.x = remap[t.x];
        t.y = remap[t.y];
        t.z = remap[t.z];
        nt.push_back(std::move(t));
    }
    vset_ = std::move(nv);
    edges_ = std::move(ne);
    tris_ = std::move(nt);
    rebuild_incidence();
    rebuild_triangles();
}

Graph Esd::pattern_graph() const {
    std::vector<std::pair<int, int>> es;
    for (const auto& e : edges_) es.emplace_back(e.x, e.y);
    return Graph::from_edges(h_size(), es);
}

VertexSet Esd::domain() const {
    VertexSet d(host_n_);
    for (const auto& s : vset_) d |= s;
    for (const auto& e : edges_) d |= e.all;
    for (const auto& t : tris_) d |= t.set;
    return d;
}

Esd Esd::restricted(const VertexSet& keep) const {
    Esd out = *this;
    for (auto& s : out.vset_) s &= keep;
    for (auto& e : out.edges_) {
        e.all &= keep;
        e.side_x &= keep;
        e.side_y &= keep;
    }
    for (auto& t : out.tris_) t.set &= keep;
    return out;
}

const char* to_string(ParticleKind k) {
    switch (k) {
        case ParticleKind::vertex: return "vertex";
        case ParticleKind::edge_interior: return "edge_interior";
        case ParticleKind::half_edge: return "half_edge";
        case ParticleKind::full_edge: return "full_edge";
        case ParticleKind::triangle: return "triangle";
    }
    return "?";
}

std::string Particle::name() const {
    switch (kind) {
        case ParticleKind::vertex: return "A_" + std::to_string(anchor[0]);
        case ParticleKind::edge_interior: return "A^perp_" + key2(anchor[0], anchor[1]);
        case ParticleKind::half_edge: return "A^" + std::to_string(anchor[0]) + "_" + key2(anchor[0], anchor[1]);
        case ParticleKind::full_edge: return "A^xy_" + key2(anchor[0], anchor[1]);
        case ParticleKind::triangle: return "A_" + key3(anchor[0], anchor[1], anchor[2]);
    }
    return "?";
}

namespace {

struct Owner {
    int kind = -1;  // 0 vertex, 1 edge, 2 triangle
    int index = -1;
};

std::string elem_name(const Esd& esd, Owner o) {
    if (o.kind == 0) return std::to_string(o.index);
    if (o.kind == 1) return key2(esd.edges()[o.index].x, esd.edges()[o.index].y);
    const auto& t = esd.triangles()[o.index];
    return key3(t.x, t.y, t.z);
}

}  // namespace

std::vector<Violation> validate(const Graph& g, const Esd& esd, const VertexSet& domain) {
    std::vector<Violation> out;
    const int n = g.size();
    if (esd.host_n() != n || domain.universe() != n) {
        out.push_back({"structure", "-", "host size mismatch"});
        return out;
    }
    // H itself: simple graph and triangle list complete.
    for (int i = 0; i < esd.edge_count(); ++i) {
        const auto& e = esd.edges()[i];
        if (e.x >= e.y || e.y >= esd.h_size()) out.push_back({"structure", key2(e.x, e.y), "malformed edge"});
        for (int j = 0; j < i; ++j)
            if (esd.edges()[j].x == e.x && esd.edges()[j].y == e.y)
                out.push_back({"structure", key2(e.x, e.y), "duplicate edge"});
    }
    {
        Esd copy = esd;
        copy.rebuild_triangles();
        if (copy.triangles().size() != esd.triangles().size())
            out.push_back({"structure", "T(H)", "triangle list does not match H"});
    }
    if (!out.empty()) return out;

    std::vector<Owner> owner(n);
    auto claim = [&](const VertexSet& s, Owner o) {
        for (int v : s) {
            if (!domain.test(v)) {
                out.push_back({"partition", elem_name(esd, o), "vertex " + std::to_string(v) + " outside the host"});
                continue;
            }
            if (owner[v].kind != -1) {
                out.push_back({"partition", elem_name(esd, o),
                               "vertex " + std::to_string(v) + " also in " + elem_name(esd, owner[v])});
                continue;
            }
            owner[v] = o;
        }
    };
    for (int x = 0; x < esd.h_size(); ++x) claim(esd.vertex_set(x), {0, x});
    for (int i = 0; i < esd.edge_count(); ++i) claim(esd.edges()[i].all, {1, i});
    for (int i = 0; i < static_cast<int>(esd.triangles().size()); ++i) claim(esd.triangles()[i].set, {2, i});
    for (int v : domain)
        if (owner[v].kind == -1) out.push_back({"partition", "-", "vertex " + std::to_string(v) + " not covered"});

    for (const auto& e : esd.edges()) {
        if (!e.side_x.subset_of(e.all))
            out.push_back({"side-containment", key2(e.x, e.y) + ":" + std::to_string(e.x),
                           "vertex " + std::to_string((e.side_x - e.all).first())});
        if (!e.side_y.subset_of(e.all))
            out.push_back({"side-containment", key2(e.x, e.y) + ":" + std::to_string(e.y),
                           "vertex " + std::to_string((e.side_y - e.all).first())});
    }

    for (int x = 0; x < esd.h_size(); ++x) {
        const auto& inc = esd.incident(x);
        for (std::size_t i = 0; i < inc.size(); ++i)
            for (std::size_t j = i + 1; j < inc.size(); ++j) {
                const auto& a = esd.edges()[inc[i]].side(x);
                const auto& b = esd.edges()[inc[j]].side(x);
                for (int u : a) {
                    VertexSet miss = b - g.neighbors(u);
                    if (miss.any()) {
                        const auto& ea = esd.edges()[inc[i]];
                        const auto& eb = esd.edges()[inc[j]];
                        out.push_back({"sides-complete", std::to_string(x),
                                       "non-edge " + std::to_string(u) + "," + std::to_string(miss.first()) +
                                           " between sides of " + key2(ea.x, ea.y) + " and " + key2(eb.x, eb.y)});
                        break;
                    }
                }
            }
    }

    // Cross edges: a in side(e, x) with b in another side at x or in eta(x);
    // a in a triangle set with b in both sides of an edge of that triangle.
    auto allowed = [&](int a, int b) {
        Owner oa = owner[a], ob = owner[b];
        if (oa.kind == 1) {
            const auto& e = esd.edges()[oa.index];
            for (int x : {e.x, e.y}) {
                if (!e.side(x).test(a)) continue;
                if (ob.kind == 0 && ob.index == x) return true;
                if (ob.kind == 1 && ob.index != oa.index) {
                    const auto& f = esd.edges()[ob.index];
                    if ((f.x == x || f.y == x) && f.side(x).test(b)) return true;
                }
            }
        }
        if (oa.kind == 2 && ob.kind == 1) {
            const auto& t = esd.triangles()[oa.index];
            const auto& f = esd.edges()[ob.index];
            auto in_t = [&](int z) { return z == t.x || z == t.y || z == t.z; };
            if (in_t(f.x) && in_t(f.y) && f.side_x.test(b) && f.side_y.test(b)) return true;
        }
        return false;
    };
    for (int u : domain)
        for (int v : g.neighbors(u)) {
            if (v <= u || !domain.test(v)) continue;
            Owner ou = owner[u], ov = owner[v];
            if (ou.kind == -1 || ov.kind == -1) continue;
            if (ou.kind == ov.kind && ou.index == ov.index) continue;
            if (allowed(u, v) || allowed(v, u)) continue;
            out.push_back({"edge-pattern", elem_name(esd, ou) + "|" + elem_name(esd, ov),
                           "edge " + std::to_string(u) + "-" + std::to_string(v)});
        }
    return out;
}

std::vector<Violation> validate(const Graph& g, const Esd& esd) { return validate(g, esd, esd.domain()); }

std::vector<Particle> particles(const Esd& esd) {
    std::vector<Particle> out;
    for (int x = 0; x < esd.h_size(); ++x) out.push_back({ParticleKind::vertex, {x, -1, -1}, esd.vertex_set(x)});
    for (const auto& e : esd.edges()) {
        out.push_back({ParticleKind::edge_interior, {e.x, e.y, -1}, e.all - e.side_x - e.side_y});
        out.push_back({ParticleKind::half_edge, {e.x, e.y, -1}, (esd.vertex_set(e.x) | e.all) - e.side_y});
        out.push_back({ParticleKind::half_edge, {e.y, e.x, -1}, (esd.vertex_set(e.y) | e.all) - e.side_x});
        VertexSet full = esd.vertex_set(e.x) | esd.vertex_set(e.y) | e.all;
        for (const auto& t : esd.triangles()) {
            int hits = (t.x == e.x || t.y == e.x || t.z == e.x) + (t.x == e.y || t.y == e.y || t.z == e.y);
            if (hits == 2) full |= t.set;
        }
        out.push_back({ParticleKind::full_edge, {e.x, e.y, -1}, std::move(full)});
    }
    for (const auto& t : esd.triangles()) out.push_back({ParticleKind::triangle, {t.x, t.y, t.z}, t.set});
    return out;
}

std::vector<Particle> nonempty_particles(const Esd& esd) {
    auto all = particles(esd);
    std::vector<Particle> out;
    for (auto& p : all)
        if (p.members.any()) out.push_back(std::move(p));
    return out;
}

int max_particle_size(const Esd& esd) {
    int m = 0;
    for (const auto& p : particles(esd)) m = std::max(m, p.members.count());
    return m;
}

bool is_rigid(const Esd& esd) {
    for (const auto& e : esd.edges())
        if (e.side_x.empty() || e.side_y.empty()) return false;
    for (int x = 0; x < esd.h_size(); ++x)
        if (esd.degree(x) == 0 && esd.vertex_set(x).empty()) return false;
    return true;
}

Esd rigidify(const Esd& in) {
    Esd esd = in;
    while (true) {
        int bad = -1, keep_end = -1;
        for (int i = 0; i < esd.edge_count() && bad == -1; ++i) {
            const auto& e = esd.edges()[i];
            if (e.side_x.empty()) {
                bad = i;
                keep_end = e.y;
            } else if (e.side_y.empty()) {
                bad = i;
                keep_end = e.x;
            }
        }
        if (bad == -1) break;
        const EsdEdge e = esd.edges()[bad];
        esd.vertex_set(keep_end) |= e.all;
        // Triangles through the folded edge lose it; their sets go to the third corner.
        for (const auto& t : esd.triangles()) {
            int hits = (t.x == e.x || t.y == e.x || t.z == e.x) + (t.x == e.y || t.y == e.y || t.z == e.y);
            if (hits != 2) continue;
            int z = t.x + t.y + t.z - e.x - e.y;
            esd.vertex_set(z) |= t.set;
        }
        esd.remove_edges({bad});
    }
    std::vector<int> empty_isolated;
    for (int x = 0; x < esd.h_size(); ++x)
        if (esd.degree(x) == 0 && esd.vertex_set(x).empty()) empty_isolated.push_back(x);
    if (!empty_isolated.empty()) esd.remove_vertices(empty_isolated);
    return esd;
}

Esd rigidify_preserving_particles(const Esd& in) {
    Esd esd = in;
    while (true) {
        int bad = -1, end = -1;
        for (int i = 0; i < esd.edge_count() && bad == -1; ++i) {
            const auto& e = esd.edges()[i];
            if (e.side_x.empty()) {
                bad = i;
                end = e.x;
            } else if (e.side_y.empty()) {
                bad = i;
                end = e.y;
            }
        }
        if (bad == -1) break;
        const EsdEdge e = esd.edges()[bad];
        const int far = e.other(end);
        if (esd.degree(end) == 1) {
            // A lone strip end: eta(end) cannot touch the strip, so it moves to
            // its own vertex, and any strip vertex may serve as the side.
            if (e.all.empty()) {
                esd.remove_edges({bad});
                continue;
            }
            if (esd.vertex_set(end).any()) {
                esd.add_vertex(esd.vertex_set(end));
                esd.vertex_set(end).clear();
            }
            esd.edges()[bad].side(end).set(e.all.first());
            continue;
        }
        bool empty_triangles = true;
        for (const auto& t : esd.triangles()) {
            bool has = (t.x == e.x || t.y == e.x || t.z == e.x) && (t.x == e.y || t.y == e.y || t.z == e.y);
            if (has && t.set.any()) empty_triangles = false;
        }
        if (empty_triangles) {
            // Nothing crosses at this end, so the strip moves to a new leaf.
            const int leaf = esd.add_vertex();
            esd.remove_edges({bad});
            esd.add_edge(leaf, far, e.all, VertexSet(), e.side(far));
            continue;
        }
        esd.vertex_set(far) |= e.all;
        for (const auto& t : esd.triangles()) {
            int hits = (t.x == e.x || t.y == e.x || t.z == e.x) + (t.x == e.y || t.y == e.y || t.z == e.y);
            if (hits != 2) continue;
            esd.vertex_set(t.x + t.y + t.z - e.x - e.y) |= t.set;
        }
        esd.remove_edges({bad});
    }
    std::vector<int> empty_isolated;
    for (int x = 0; x < esd.h_size(); ++x)
        if (esd.degree(x) == 0 && esd.vertex_set(x).empty()) empty_isolated.push_back(x);
    if (!empty_isolated.empty()) esd.remove_vertices(empty_isolated);
    return esd;
}

Esd fold_leaves(const Esd& in, const VertexSet& protected_vertices) {
    Esd esd = in;
    while (true) {
        int leaf = -1;
        for (int x = 0; x < esd.h_size() && leaf == -1; ++x) {
            if (esd.degree(x) != 1) continue;
            const auto& e = esd.edges()[esd.incident(x)[0]];
            if ((e.all | esd.vertex_set(x)).intersects(protected_vertices)) continue;
            leaf = x;
        }
        if (leaf == -1) break;
        int ei = esd.incident(leaf)[0];
        int y = esd.edges()[ei].other(leaf);
        esd.vertex_set(y) |= esd.edges()[ei].all;
        esd.vertex_set(y) |= esd.vertex_set(leaf);
        esd.vertex_set(leaf).clear();
        esd.remove_edges({ei});
        esd.remove_vertices({leaf});
    }
    return esd;
}

BoundsReport structural_bounds(const Esd& esd, int n) {
    BoundsReport r;
    r.n = n;
    r.h_vertices = esd.h_size();
    r.h_edges = esd.edge_count();
    r.nonempty_particles = static_cast<int>(nonempty_particles(esd).size());
    if (r.h_edges > n)
        throw BoundViolation("|E(H)| = " + std::to_string(r.h_edges) + " exceeds n = " + std::to_string(n));
    if (r.h_vertices > 2 * n)
        throw BoundViolation("|V(H)| = " + std::to_string(r.h_vertices) + " exceeds 2n = " + std::to_string(2 * n));
    if (r.nonempty_particles > 4 * n)
        throw BoundViolation("nonempty particles " + std::to_string(r.nonempty_particles) + " exceed 4n");
    return r;
}

std::vector<Violation> particle_neighborhood_check(const Graph& g, const Esd& esd, int ei) {
    std::vector<Violation> out;
    const auto& e = esd.edges().at(ei);
    const std::string name = key2(e.x, e.y);
    if (e.side_x.empty() || e.side_y.empty()) {
        out.push_back({"precondition", name, "empty side"});
        return out;
    }
    VertexSet perp = e.all - e.side_x - e.side_y;
    VertexSet half_x = (esd.vertex_set(e.x) | e.all) - e.side_y;
    VertexSet half_y = (esd.vertex_set(e.y) | e.all) - e.side_x;
    VertexSet full = esd.vertex_set(e.x) | esd.vertex_set(e.y) | e.all;
    for (const auto& t : esd.triangles()) {
        int hits = (t.x == e.x || t.y == e.x || t.z == e.x) + (t.x == e.y || t.y == e.y || t.z == e.y);
        if (hits == 2) full |= t.set;
    }
    if (!perp.subset_of(half_x) || !perp.subset_of(half_y)) out.push_back({"chain", name, "interior not in half"});
    if (!half_x.subset_of(full) || !half_y.subset_of(full)) out.push_back({"chain", name, "half not in full"});
    const VertexSet dom = esd.domain();
    const VertexSet nfull = open_neighborhood(g, full) & dom;
    for (int vx : e.side_x)
        for (int vy : e.side_y) {
            VertexSet rhs = ((g.neighbors(vx) | g.neighbors(vy)) & dom) - full;
            if (rhs != nfull)
                out.push_back({"neighborhood", name,
                               "representatives " + std::to_string(vx) + "," + std::to_string(vy) + " give " +
                                   rhs.str() + " but N(A) = " + nfull.str()});
        }
    return out;
}

Esd trivial_esd(const Graph& g, const VertexSet& domain) {
    Esd esd(g.size());
    for (auto& c : connected_components(g, domain)) esd.add_vertex(std::move(c));
    return esd;
}

int peripheral_leaf(const Esd& esd, int v) {
    for (int x = 0; x < esd.h_size(); ++x) {
        if (esd.degree(x) != 1) continue;
        const auto& s = esd.edges()[esd.incident(x)[0]].side(x);
        if (s.count() == 1 && s.first() == v) return x;
    }
    return -1;
}

VertexSet peripheral_vertices(const Esd& esd) {
    VertexSet out(esd.host_n());
    for (int x = 0; x < esd.h_size(); ++x) {
        if (esd.degree(x) != 1) continue;
        const auto& s = esd.edges()[esd.incident(x)[0]].side(x);
        if (s.count() == 1) out.set(s.first());
    }
    return out;
}

std::vector<Violation> meet_check(const Graph& g, const Esd& esd, const std::vector<int>& p1,
                                  const std::vector<int>& p2, const std::vector<int>& p3) {
    const int n = g.size();
    const std::array<const std::vector<int>*, 3> ps{&p1, &p2, &p3};
    const VertexSet per = peripheral_vertices(esd);
    std::array<VertexSet, 3> sets;
    for (int i = 0; i < 3; ++i) {
        const auto& p = *ps[i];
        if (p.empty() || !is_induced_path(g, p)) throw InputError("meet_check: path is not an induced path");
        if (!per.contains(p.front()) && !per.contains(p.back()))
            throw InputError("meet_check: path has no peripheral endvertex");
        sets[i] = VertexSet::of(n, p);
    }
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (touches(g, sets[i], sets[j])) throw InputError("meet_check: paths touch");
    std::vector<Violation> out;
    for (const auto& a : nonempty_particles(esd)) {
        if (touches(g, a.members, sets[0]) && touches(g, a.members, sets[1]) && touches(g, a.members, sets[2]))
            out.push_back({"meet", a.name(), "touches all three paths"});
    }
    return out;
}

nlohmann::json set_to_json(const VertexSet& s) { return s.to_vector(); }

VertexSet set_from_json(const nlohmann::json& j, int n) {
    VertexSet s(n);
    for (const auto& v : j) {
        int x = v.get<int>();
        if (x < 0 || x >= n) throw InputError("vertex id out of range in JSON");
        s.set(x);
    }
    return s;
}

nlohmann::json esd_to_json(const Esd& esd) {
    nlohmann::json j;
    j["host_n"] = esd.host_n();
    nlohmann::json adj = nlohmann::json::array();
    Graph h = esd.pattern_graph();
    for (int x = 0; x < h.size(); ++x) adj.push_back(h.neighbors(x).to_vector());
    j["H"] = adj;
    nlohmann::json eta = nlohmann::json::object();
    for (int x = 0; x < esd.h_size(); ++x)
        if (esd.vertex_set(x).any()) eta[std::to_string(x)] = set_to_json(esd.vertex_set(x));
    for (const auto& e : esd.edges()) {
        std::string k = key2(e.x, e.y);
        if (e.all.any()) eta[k] = set_to_json(e.all);
        if (e.side_x.any()) eta[k + ":" + std::to_string(e.x)] = set_to_json(e.side_x);
        if (e.side_y.any()) eta[k + ":" + std::to_string(e.y)] = set_to_json(e.side_y);
    }
    for (const auto& t : esd.triangles())
        if (t.set.any()) eta[key3(t.x, t.y, t.z)] = set_to_json(t.set);
    j["eta"] = eta;
    return j;
}

Esd esd_from_json(const nlohmann::json& j) {
    try {
        const int n = j.at("host_n").get<int>();
        if (n < 0) throw InputError("negative host size");
        Esd esd(n);
        const auto& adj = j.at("H");
        for (std::size_t x = 0; x < adj.size(); ++x) esd.add_vertex();
        for (std::size_t x = 0; x < adj.size(); ++x)
            for (const auto& yj : adj[x]) {
                int y = yj.get<int>();
                if (y < 0 || y >= static_cast<int>(adj.size()) || y == static_cast<int>(x))
                    throw InputError("bad pattern adjacency");
                if (static_cast<int>(x) < y) esd.add_edge(static_cast<int>(x), y);
            }
        for (auto it = j.at("eta").begin(); it != j.at("eta").end(); ++it) {
            const std::string& k = it.key();
            VertexSet s = set_from_json(it.value(), n);
            std::vector<int> parts;
            int side = -1;
            std::string body = k;
            if (auto c = k.find(':'); c != std::string::npos) {
                side = std::stoi(k.substr(c + 1));
                body = k.substr(0, c);
            }
            std::size_t pos = 0;
            while (pos <= body.size()) {
                auto d = body.find('-', pos);
                parts.push_back(std::stoi(body.substr(pos, d == std::string::npos ? std::string::npos : d - pos)));
                if (d == std::string::npos) break;
                pos = d + 1;
            }
            if (parts.size() == 1 && side == -1) {
                if (parts[0] < 0 || parts[0] >= esd.h_size()) throw InputError("unknown pattern vertex " + k);
                esd.vertex_set(parts[0]) = s;
            } else if (parts.size() == 2) {
                int e = esd.edge_index(parts[0], parts[1]);
                if (e < 0) throw InputError("unknown pattern edge " + k);
                auto& ed = esd.edges()[e];
                if (side == -1)
                    ed.all = s;
                else if (side == ed.x || side == ed.y)
                    ed.side(side) = s;
                else
                    throw InputError("bad side key " + k);
            } else if (parts.size() == 3 && side == -1) {
                int t = esd.triangle_index(parts[0], parts[1], parts[2]);
                if (t < 0) throw InputError("unknown triangle " + k);
                esd.triangles()[t].set = s;
            } else {
                throw InputError("bad eta key " + k);
            }
        }
        return esd;
    } catch (const nlohmann::json::exception& ex) {
        throw InputError(std::string("malformed decomposition JSON: ") + ex.what());
    } catch (const std::invalid_argument&) {
        throw InputError("malformed decomposition key");
    }
}

}  // namespace stf
