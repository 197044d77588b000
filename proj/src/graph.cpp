#include "stf/graph.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "stf/errors.hpp"

namespace stf {

std::string VertexSet::str() const {
    std::string s = "{";
    bool first_item = true;
    for (int v : *this) {
        if (!first_item) s += ",";
        s += std::to_string(v);
        first_item = false;
    }
    return s + "}";
}

Graph Graph::from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    if (n < 0) throw InputError("negative vertex count");
    Graph g(n);
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n) throw InputError("edge endpoint out of range");
        if (u == v) throw InputError("self-loop at vertex " + std::to_string(u));
        if (g.adj_[u].test(v)) throw InputError("parallel edge " + std::to_string(u) + "-" + std::to_string(v));
        g.adj_[u].set(v);
        g.adj_[v].set(u);
    }
    return g;
}

int Graph::edge_count() const {
    int s = 0;
    for (const auto& a : adj_) s += a.count();
    return s / 2;
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < size(); ++u)
        for (int v = adj_[u].next(u); v != -1; v = adj_[u].next(v)) out.emplace_back(u, v);
    return out;
}

VertexSet Subgraph::lift(const VertexSet& local, int parent_n) const {
    VertexSet out(parent_n);
    for (int v : local) out.set(to_parent[v]);
    return out;
}

VertexSet Subgraph::restrict(const VertexSet& parent) const {
    VertexSet out(g.size());
    for (int v : parent)
        if (from_parent[v] >= 0) out.set(from_parent[v]);
    return out;
}

Subgraph induced_subgraph(const Graph& g, const VertexSet& keep) {
    Subgraph s;
    s.from_parent.assign(g.size(), -1);
    for (int v : keep) {
        s.from_parent[v] = static_cast<int>(s.to_parent.size());
        s.to_parent.push_back(v);
    }
    std::vector<std::pair<int, int>> es;
    for (int v : keep)
        for (int u : g.neighbors(v))
            if (u > v && keep.test(u)) es.emplace_back(s.from_parent[v], s.from_parent[u]);
    s.g = Graph::from_edges(static_cast<int>(s.to_parent.size()), es);
    if (!g.labels().empty()) {
        std::vector<std::string> l;
        for (int v : s.to_parent) l.push_back(g.labels()[v]);
        s.g.set_labels(std::move(l));
    }
    return s;
}

void check_ids(const Graph& g, const VertexSet& s) {
    if (s.universe() != g.size()) throw InputError("vertex set does not match the graph size");
}

VertexSet closed_neighborhood(const Graph& g, const VertexSet& s) {
    check_ids(g, s);
    VertexSet out = s;
    for (int v : s) out |= g.neighbors(v);
    return out;
}

VertexSet open_neighborhood(const Graph& g, const VertexSet& s) { return closed_neighborhood(g, s) - s; }

VertexSet closed_neighborhood(const Graph& g, int v) {
    if (v < 0 || v >= g.size()) throw InputError("vertex id out of range");
    VertexSet out = g.neighbors(v);
    out.set(v);
    return out;
}

VertexSet component_of(const Graph& g, const VertexSet& domain, int v) {
    VertexSet comp(g.size());
    comp.set(v);
    VertexSet frontier = comp;
    while (frontier.any()) {
        VertexSet next(g.size());
        for (int u : frontier) next |= g.neighbors(u);
        next &= domain;
        next -= comp;
        comp |= next;
        frontier = std::move(next);
    }
    return comp;
}

std::vector<VertexSet> connected_components(const Graph& g, const VertexSet& domain) {
    check_ids(g, domain);
    std::vector<VertexSet> out;
    VertexSet left = domain;
    for (int v = left.first(); v != -1; v = left.first()) {
        VertexSet c = component_of(g, domain, v);
        left -= c;
        out.push_back(std::move(c));
    }
    return out;
}

bool is_connected(const Graph& g, const VertexSet& domain) {
    int v = domain.first();
    return v == -1 || component_of(g, domain, v) == domain;
}

bool is_independent(const Graph& g, const VertexSet& s) {
    for (int v : s)
        if (g.neighbors(v).intersects(s)) return false;
    return true;
}

bool is_induced_path(const Graph& g, const std::vector<int>& seq) {
    const int k = static_cast<int>(seq.size());
    for (int v : seq)
        if (v < 0 || v >= g.size()) return false;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            if (seq[i] == seq[j]) return false;
            bool should = (j == i + 1);
            if (g.adjacent(seq[i], seq[j]) != should) return false;
        }
    return true;
}

bool touches(const Graph& g, const VertexSet& a, const VertexSet& b) {
    if (a.intersects(b)) return true;
    for (int v : a)
        if (g.neighbors(v).intersects(b)) return true;
    return false;
}

int edges_within(const Graph& g, const VertexSet& s) {
    int c = 0;
    for (int v : s) c += (g.neighbors(v) & s).count();
    return c / 2;
}

bool is_induced_tree(const Graph& g, const VertexSet& s) {
    if (s.empty()) return false;
    return edges_within(g, s) == s.count() - 1 && is_connected(g, s);
}

Weight total_weight(const Weights& w, const VertexSet& s) {
    Weight t = 0;
    for (int v : s) t += w[v];
    return t;
}

Graph line_graph(const Graph& base, std::vector<std::pair<int, int>>* edges_out) {
    auto es = base.edges();
    std::vector<std::pair<int, int>> le;
    for (std::size_t i = 0; i < es.size(); ++i)
        for (std::size_t j = i + 1; j < es.size(); ++j) {
            auto [a, b] = es[i];
            auto [c, d] = es[j];
            if (a == c || a == d || b == c || b == d) le.emplace_back(static_cast<int>(i), static_cast<int>(j));
        }
    if (edges_out) *edges_out = es;
    return Graph::from_edges(static_cast<int>(es.size()), le);
}

namespace {

// Places vertices in BFS order; each one joins at most two cliques, old or new.
class CoverSearch {
public:
    CoverSearch(const Graph& g, const VertexSet& domain, long cap)
        : g_(g), processed_(g.size()), of_(g.size()), cap_(cap) {
        VertexSet seen(g.size());
        for (int r : domain) {
            if (seen.test(r)) continue;
            seen.set(r);
            std::size_t i = order_.size();
            order_.push_back(r);
            for (; i < order_.size(); ++i)
                for (int x : g.neighbors(order_[i]) & domain)
                    if (!seen.test(x)) {
                        seen.set(x);
                        order_.push_back(x);
                    }
        }
    }

    std::optional<KrauszCover> run() {
        if (!place(0)) return std::nullopt;
        return KrauszCover{cliques_, of_};
    }

private:
    const Graph& g_;
    std::vector<int> order_;
    VertexSet processed_;
    std::vector<VertexSet> cliques_;
    std::vector<std::vector<int>> of_;
    long cap_, steps_ = 0;

    bool fresh(const VertexSet& t) const {
        for (int u : t) {
            if (of_[u].size() >= 2) return false;
            if (!(t - VertexSet(g_.size(), {u})).subset_of(g_.neighbors(u))) return false;
            for (int c : of_[u])
                if ((cliques_[c] & t).count() > 1) return false;
        }
        return true;
    }

    // Ways to split r into `slots` or fewer new cliques.
    std::vector<std::vector<VertexSet>> splits(const VertexSet& r, int slots) const {
        std::vector<std::vector<VertexSet>> out;
        if (r.empty()) {
            out.push_back({});
            return out;
        }
        if (slots >= 1 && fresh(r)) out.push_back({r});
        if (slots < 2 || r.count() < 2) return out;
        // Non-adjacent pairs must be split apart: 2-colour the complement.
        std::vector<int> vs = r.to_vector();
        std::vector<int> colour(g_.size(), -1), part(g_.size(), -1);
        int parts = 0;
        for (int s : vs) {
            if (colour[s] != -1) continue;
            colour[s] = 0;
            part[s] = parts;
            std::vector<int> stack{s};
            while (!stack.empty()) {
                int a = stack.back();
                stack.pop_back();
                for (int b : r - g_.neighbors(a)) {
                    if (b == a) continue;
                    if (colour[b] == -1) {
                        colour[b] = 1 - colour[a];
                        part[b] = parts;
                        stack.push_back(b);
                    } else if (colour[b] == colour[a]) {
                        return out;
                    }
                }
            }
            ++parts;
        }
        if (parts > 12) return out;
        for (unsigned mask = 0; mask < (1u << (parts - 1)); ++mask) {
            VertexSet t0(g_.size()), t1(g_.size());
            for (int s : vs) {
                const bool flip = part[s] > 0 && (mask >> (part[s] - 1) & 1u);
                ((colour[s] ^ static_cast<int>(flip)) == 0 ? t0 : t1).set(s);
            }
            if (t0.any() && t1.any() && fresh(t0) && fresh(t1)) out.push_back({t0, t1});
        }
        return out;
    }

    bool place(std::size_t k) {
        if (++steps_ > cap_) return false;
        if (k == order_.size()) return true;
        const int v = order_[k];
        const VertexSet p = g_.neighbors(v) & processed_;
        std::vector<int> cand;
        for (int c = 0; c < static_cast<int>(cliques_.size()); ++c)
            if (cliques_[c].subset_of(p)) cand.push_back(c);
        std::vector<std::vector<int>> picks;
        for (std::size_t i = 0; i < cand.size(); ++i)
            for (std::size_t j = i + 1; j < cand.size(); ++j)
                if (!cliques_[cand[i]].intersects(cliques_[cand[j]])) picks.push_back({cand[i], cand[j]});
        for (int c : cand) picks.push_back({c});
        picks.push_back({});
        for (const auto& pick : picks) {
            VertexSet r = p;
            for (int c : pick) r -= cliques_[c];
            for (const auto& news : splits(r, 2 - static_cast<int>(pick.size()))) {
                for (int c : pick) {
                    cliques_[c].set(v);
                    of_[v].push_back(c);
                }
                for (const auto& t : news) {
                    VertexSet c = t;
                    c.set(v);
                    const int id = static_cast<int>(cliques_.size());
                    cliques_.push_back(c);
                    for (int u : c) of_[u].push_back(id);
                }
                processed_.set(v);
                if (place(k + 1)) return true;
                processed_.reset(v);
                for (std::size_t i = 0; i < news.size(); ++i) {
                    for (int u : cliques_.back()) of_[u].pop_back();
                    cliques_.pop_back();
                }
                for (int c : pick) {
                    cliques_[c].reset(v);
                    of_[v].pop_back();
                }
                if (steps_ > cap_) return false;
            }
        }
        return false;
    }
};

}  // namespace

std::optional<KrauszCover> krausz_cover(const Graph& g, const VertexSet& domain, long step_cap) {
    check_ids(g, domain);
    auto cover = CoverSearch(g, domain, step_cap).run();
    if (!cover) return cover;
    for (int u : domain)
        for (int w : g.neighbors(u) & domain) {
            int shared = 0;
            for (int c : cover->of[u]) shared += cover->cliques[c].test(w);
            require(shared == 1, "krausz_cover: edge not covered exactly once");
        }
    return cover;
}

namespace {

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

long long parse_int(std::string_view tok, int line, const char* what) {
    long long v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec == std::errc::result_out_of_range) throw InputError(std::string(what) + " overflows", line);
    if (ec != std::errc() || p != tok.data() + tok.size())
        throw InputError(std::string("expected integer for ") + what + ", got '" + std::string(tok) + "'", line);
    return v;
}

}  // namespace

WeightedGraph read_graph(std::istream& in) {
    std::string line;
    int line_no = 0;
    long long n = -1, m = -1;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::pair<int, Weight>> weights;
    int header_line = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto tok = split_ws(line);
        if (tok.empty() || tok[0] == "c" || tok[0][0] == '#') continue;
        if (tok[0] == "p") {
            if (n >= 0) throw InputError("duplicate header", line_no);
            std::size_t off = 1;
            if (tok.size() == 4) off = 2;  // tolerate "p edge n m"
            if (tok.size() != off + 2) throw InputError("header must be 'p <n> <m>'", line_no);
            n = parse_int(tok[off], line_no, "n");
            m = parse_int(tok[off + 1], line_no, "m");
            if (n < 0 || m < 0 || n > (1 << 24)) throw InputError("bad header sizes", line_no);
            header_line = line_no;
        } else if (tok[0] == "e") {
            if (n < 0) throw InputError("edge before header", line_no);
            if (tok.size() != 3) throw InputError("edge line must be 'e <u> <v>'", line_no);
            long long u = parse_int(tok[1], line_no, "u"), v = parse_int(tok[2], line_no, "v");
            if (u < 1 || v < 1 || u > n || v > n) throw InputError("edge endpoint out of range", line_no);
            if (u == v) throw InputError("self-loop", line_no);
            edges.emplace_back(static_cast<int>(u - 1), static_cast<int>(v - 1));
        } else if (tok[0] == "w") {
            if (n < 0) throw InputError("weight before header", line_no);
            if (tok.size() != 3) throw InputError("weight line must be 'w <v> <weight>'", line_no);
            long long v = parse_int(tok[1], line_no, "v");
            long long wt = parse_int(tok[2], line_no, "weight");
            if (v < 1 || v > n) throw InputError("weight vertex out of range", line_no);
            if (wt < 0) throw InputError("negative weight", line_no);
            if (wt > kMaxWeight) throw InputError("weight overflow", line_no);
            weights.emplace_back(static_cast<int>(v - 1), wt);
        } else {
            throw InputError("unknown line type '" + std::string(tok[0]) + "'", line_no);
        }
    }
    if (n < 0) throw InputError("missing header", line_no + 1);
    if (static_cast<long long>(edges.size()) != m)
        throw InputError("header announces " + std::to_string(m) + " edges, found " + std::to_string(edges.size()),
                         header_line);
    WeightedGraph out;
    {
        // Locate duplicates for a line-numbered message.
        std::vector<VertexSet> seen(static_cast<std::size_t>(n), VertexSet(static_cast<int>(n)));
        for (auto [u, v] : edges) {
            if (seen[u].test(v)) throw InputError("parallel edge " + std::to_string(u + 1) + "-" + std::to_string(v + 1));
            seen[u].set(v);
            seen[v].set(u);
        }
    }
    out.g = Graph::from_edges(static_cast<int>(n), edges);
    out.w.assign(static_cast<std::size_t>(n), 1);
    for (auto [v, wt] : weights) out.w[v] = wt;
    return out;
}

WeightedGraph read_graph_string(const std::string& text) {
    std::istringstream in(text);
    return read_graph(in);
}

WeightedGraph read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    return read_graph(in);
}

void write_graph(std::ostream& out, const Graph& g, const Weights& w) {
    out << "p " << g.size() << ' ' << g.edge_count() << '\n';
    for (auto [u, v] : g.edges()) out << "e " << u + 1 << ' ' << v + 1 << '\n';
    for (int v = 0; v < g.size(); ++v)
        if (!w.empty() && w[v] != 1) out << "w " << v + 1 << ' ' << w[v] << '\n';
}

std::string write_graph_string(const Graph& g, const Weights& w) {
    std::ostringstream out;
    write_graph(out, g, w);
    return out.str();
}

}  // namespace stf
