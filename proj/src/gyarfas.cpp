#include "stf/gyarfas.hpp"

#include "stf/errors.hpp"

namespace stf {

namespace {

// The component with more than half of the n vertices, if any (it is unique).
VertexSet big_component(const Graph& g, const VertexSet& domain, int n) {
    for (auto& c : connected_components(g, domain))
        if (2 * c.count() > n) return c;
    return VertexSet(g.size());
}

}  // namespace

GyarfasResult gyarfas_path(const Graph& g, const VertexSet& domain, bool paranoid) {
    check_ids(g, domain);
    const int n = domain.count();
    if (n == 0) throw InputError("gyarfas_path needs a nonempty graph");
    GyarfasResult r;
    VertexSet prev = big_component(g, domain, n);
    if (prev.empty()) {
        r.path.push_back(domain.first());
    } else {
        r.path.push_back(prev.first());
        VertexSet closed = closed_neighborhood(g, r.path.back()) & domain;
        VertexSet cur = big_component(g, domain - closed, n);
        while (cur.any()) {
            // Lowest vertex of C_{k-1} with a neighbour in C_k; it extends the path.
            VertexSet cand = open_neighborhood(g, cur) & prev;
            int v = cand.first();
            require(v != -1, "gyarfas: no extension vertex");
            if (paranoid) {
                require(g.adjacent(v, r.path.back()), "gyarfas: extension not adjacent to the path end");
                for (std::size_t i = 0; i + 1 < r.path.size(); ++i)
                    require(!g.adjacent(v, r.path[i]), "gyarfas: extension creates a chord");
            }
            r.path.push_back(v);
            require(static_cast<int>(r.path.size()) <= n, "gyarfas: path longer than n");
            closed |= closed_neighborhood(g, v) & domain;
            VertexSet next = big_component(g, domain - closed, n);
            if (paranoid) require(next.subset_of(cur), "gyarfas: tracked component did not shrink");
            prev = std::move(cur);
            cur = std::move(next);
        }
    }
    VertexSet closed = domain & closed_neighborhood(g, VertexSet::of(g.size(), r.path));
    r.components = connected_components(g, domain - closed);
    if (paranoid) {
        require(is_induced_path(g, r.path), "gyarfas: path not induced");
        for (const auto& c : r.components) require(2 * c.count() <= n, "gyarfas: component above n/2");
    }
    return r;
}

GyarfasResult gyarfas_path(const Graph& g, bool paranoid) { return gyarfas_path(g, g.all(), paranoid); }

}  // namespace stf
