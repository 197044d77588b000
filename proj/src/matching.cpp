// Maximum-weight matching in general graphs, primal-dual blossom method with
// O(n^3) bookkeeping (Galil's formulation). Integer weights keep every dual
// update integral: slacks between S-blossoms are always even.

#include <algorithm>
#include <functional>

#include "stf/combine.hpp"
#include "stf/errors.hpp"

namespace stf {

namespace {

class Blossom {
public:
    Blossom(int n, std::vector<WeightedEdge> es) : nv_(n), edges_(std::move(es)) {}

    std::vector<int> run() {
        const int nedge = static_cast<int>(edges_.size());
        if (nedge == 0 || nv_ == 0) return std::vector<int>(nv_, -1);
        std::int64_t maxw = 0;
        for (const auto& e : edges_) maxw = std::max(maxw, e.w);
        endpoint_.resize(2 * nedge);
        for (int p = 0; p < 2 * nedge; ++p) endpoint_[p] = p % 2 == 0 ? edges_[p / 2].u : edges_[p / 2].v;
        neighbend_.assign(nv_, {});
        for (int k = 0; k < nedge; ++k) {
            neighbend_[edges_[k].u].push_back(2 * k + 1);
            neighbend_[edges_[k].v].push_back(2 * k);
        }
        mate_.assign(nv_, -1);
        label_.assign(2 * nv_, 0);
        labelend_.assign(2 * nv_, -1);
        inblossom_.resize(nv_);
        for (int i = 0; i < nv_; ++i) inblossom_[i] = i;
        blossomparent_.assign(2 * nv_, -1);
        blossomchilds_.assign(2 * nv_, {});
        blossombase_.assign(2 * nv_, -1);
        for (int i = 0; i < nv_; ++i) blossombase_[i] = i;
        blossomendps_.assign(2 * nv_, {});
        bestedge_.assign(2 * nv_, -1);
        blossombestedges_.assign(2 * nv_, {});
        hasbest_.assign(2 * nv_, false);
        unused_.clear();
        for (int i = nv_; i < 2 * nv_; ++i) unused_.push_back(i);
        dual_.assign(2 * nv_, 0);
        for (int i = 0; i < nv_; ++i) dual_[i] = maxw;
        allowedge_.assign(nedge, false);

        for (int stage = 0; stage < nv_; ++stage) {
            std::fill(label_.begin(), label_.end(), 0);
            std::fill(bestedge_.begin(), bestedge_.end(), -1);
            for (int b = nv_; b < 2 * nv_; ++b) {
                blossombestedges_[b].clear();
                hasbest_[b] = false;
            }
            std::fill(allowedge_.begin(), allowedge_.end(), false);
            queue_.clear();
            for (int v = 0; v < nv_; ++v)
                if (mate_[v] == -1 && label_[inblossom_[v]] == 0) assign_label(v, 1, -1);
            bool augmented = false;
            while (true) {
                while (!queue_.empty() && !augmented) {
                    int v = queue_.back();
                    queue_.pop_back();
                    require(label_[inblossom_[v]] == 1, "blossom: queued vertex not an S-vertex");
                    for (int p : neighbend_[v]) {
                        int k = p / 2;
                        int w = endpoint_[p];
                        if (inblossom_[v] == inblossom_[w]) continue;
                        std::int64_t kslack = 0;
                        if (!allowedge_[k]) {
                            kslack = slack(k);
                            if (kslack <= 0) allowedge_[k] = true;
                        }
                        if (allowedge_[k]) {
                            if (label_[inblossom_[w]] == 0) {
                                assign_label(w, 2, p ^ 1);
                            } else if (label_[inblossom_[w]] == 1) {
                                int base = scan_blossom(v, w);
                                if (base >= 0) {
                                    add_blossom(base, k);
                                } else {
                                    augment_matching(k);
                                    augmented = true;
                                    break;
                                }
                            } else if (label_[w] == 0) {
                                label_[w] = 2;
                                labelend_[w] = p ^ 1;
                            }
                        } else if (label_[inblossom_[w]] == 1) {
                            int b = inblossom_[v];
                            if (bestedge_[b] == -1 || kslack < slack(bestedge_[b])) bestedge_[b] = k;
                        } else if (label_[w] == 0) {
                            if (bestedge_[w] == -1 || kslack < slack(bestedge_[w])) bestedge_[w] = k;
                        }
                    }
                }
                if (augmented) break;

                int deltatype = 1;
                std::int64_t delta = *std::min_element(dual_.begin(), dual_.begin() + nv_);
                int deltaedge = -1, deltablossom = -1;
                for (int v = 0; v < nv_; ++v)
                    if (label_[inblossom_[v]] == 0 && bestedge_[v] != -1) {
                        std::int64_t d = slack(bestedge_[v]);
                        if (d < delta) {
                            delta = d;
                            deltatype = 2;
                            deltaedge = bestedge_[v];
                        }
                    }
                for (int b = 0; b < 2 * nv_; ++b)
                    if (blossomparent_[b] == -1 && label_[b] == 1 && bestedge_[b] != -1) {
                        std::int64_t ks = slack(bestedge_[b]);
                        require(ks % 2 == 0, "blossom: odd slack between S-blossoms");
                        std::int64_t d = ks / 2;
                        if (d < delta) {
                            delta = d;
                            deltatype = 3;
                            deltaedge = bestedge_[b];
                        }
                    }
                for (int b = nv_; b < 2 * nv_; ++b)
                    if (blossombase_[b] >= 0 && blossomparent_[b] == -1 && label_[b] == 2 && dual_[b] < delta) {
                        delta = dual_[b];
                        deltatype = 4;
                        deltablossom = b;
                    }
                for (int v = 0; v < nv_; ++v) {
                    if (label_[inblossom_[v]] == 1)
                        dual_[v] -= delta;
                    else if (label_[inblossom_[v]] == 2)
                        dual_[v] += delta;
                }
                for (int b = nv_; b < 2 * nv_; ++b)
                    if (blossombase_[b] >= 0 && blossomparent_[b] == -1) {
                        if (label_[b] == 1)
                            dual_[b] += delta;
                        else if (label_[b] == 2)
                            dual_[b] -= delta;
                    }
                if (deltatype == 1) {
                    break;
                } else if (deltatype == 2) {
                    allowedge_[deltaedge] = true;
                    int i = edges_[deltaedge].u, j = edges_[deltaedge].v;
                    if (label_[inblossom_[i]] == 0) std::swap(i, j);
                    queue_.push_back(i);
                } else if (deltatype == 3) {
                    allowedge_[deltaedge] = true;
                    queue_.push_back(edges_[deltaedge].u);
                } else {
                    expand_blossom(deltablossom, false);
                }
            }
            if (!augmented) break;
            for (int b = nv_; b < 2 * nv_; ++b)
                if (blossomparent_[b] == -1 && blossombase_[b] >= 0 && label_[b] == 1 && dual_[b] == 0)
                    expand_blossom(b, true);
        }
        std::vector<int> out(nv_, -1);
        for (int v = 0; v < nv_; ++v)
            if (mate_[v] >= 0) out[v] = mate_[v] / 2;  // edge index
        return out;
    }

private:
    std::int64_t slack(int k) const { return dual_[edges_[k].u] + dual_[edges_[k].v] - 2 * edges_[k].w; }

    void leaves(int b, std::vector<int>& out) const {
        if (b < nv_) {
            out.push_back(b);
            return;
        }
        for (int t : blossomchilds_[b]) leaves(t, out);
    }
    std::vector<int> leaves(int b) const {
        std::vector<int> out;
        leaves(b, out);
        return out;
    }

    void assign_label(int w, int t, int p) {
        int b = inblossom_[w];
        label_[w] = label_[b] = t;
        labelend_[w] = labelend_[b] = p;
        bestedge_[w] = bestedge_[b] = -1;
        if (t == 1) {
            for (int v : leaves(b)) queue_.push_back(v);
        } else if (t == 2) {
            int base = blossombase_[b];
            require(mate_[base] >= 0, "blossom: T-blossom base unmatched");
            assign_label(endpoint_[mate_[base]], 1, mate_[base] ^ 1);
        }
    }

    int scan_blossom(int v, int w) {
        std::vector<int> path;
        int base = -1;
        while (v != -1 || w != -1) {
            int b = inblossom_[v];
            if (label_[b] & 4) {
                base = blossombase_[b];
                break;
            }
            path.push_back(b);
            label_[b] = 5;
            if (labelend_[b] == -1) {
                v = -1;
            } else {
                v = endpoint_[labelend_[b]];
                b = inblossom_[v];
                v = endpoint_[labelend_[b]];
            }
            if (w != -1) std::swap(v, w);
        }
        for (int b : path) label_[b] = 1;
        return base;
    }

    void add_blossom(int base, int k) {
        int v = edges_[k].u, w = edges_[k].v;
        int bb = inblossom_[base], bv = inblossom_[v], bw = inblossom_[w];
        int b = unused_.back();
        unused_.pop_back();
        blossombase_[b] = base;
        blossomparent_[b] = -1;
        blossomparent_[bb] = b;
        std::vector<int> path, endps;
        while (bv != bb) {
            blossomparent_[bv] = b;
            path.push_back(bv);
            endps.push_back(labelend_[bv]);
            v = endpoint_[labelend_[bv]];
            bv = inblossom_[v];
        }
        path.push_back(bb);
        std::reverse(path.begin(), path.end());
        std::reverse(endps.begin(), endps.end());
        endps.push_back(2 * k);
        while (bw != bb) {
            blossomparent_[bw] = b;
            path.push_back(bw);
            endps.push_back(labelend_[bw] ^ 1);
            w = endpoint_[labelend_[bw]];
            bw = inblossom_[w];
        }
        label_[b] = 1;
        labelend_[b] = labelend_[bb];
        dual_[b] = 0;
        blossomchilds_[b] = path;
        blossomendps_[b] = endps;
        for (int x : leaves(b)) {
            if (label_[inblossom_[x]] == 2) queue_.push_back(x);
            inblossom_[x] = b;
        }
        std::vector<int> bestedgeto(2 * nv_, -1);
        for (int c : path) {
            std::vector<std::vector<int>> nblists;
            if (!hasbest_[c]) {
                for (int x : leaves(c)) {
                    std::vector<int> l;
                    for (int p : neighbend_[x]) l.push_back(p / 2);
                    nblists.push_back(std::move(l));
                }
            } else {
                nblists.push_back(blossombestedges_[c]);
            }
            for (const auto& nbl : nblists)
                for (int kk : nbl) {
                    int i = edges_[kk].u, j = edges_[kk].v;
                    if (inblossom_[j] == b) std::swap(i, j);
                    int bj = inblossom_[j];
                    if (bj != b && label_[bj] == 1 && (bestedgeto[bj] == -1 || slack(kk) < slack(bestedgeto[bj])))
                        bestedgeto[bj] = kk;
                }
            blossombestedges_[c].clear();
            hasbest_[c] = false;
            bestedge_[c] = -1;
        }
        blossombestedges_[b].clear();
        for (int kk : bestedgeto)
            if (kk != -1) blossombestedges_[b].push_back(kk);
        hasbest_[b] = true;
        bestedge_[b] = -1;
        for (int kk : blossombestedges_[b])
            if (bestedge_[b] == -1 || slack(kk) < slack(bestedge_[b])) bestedge_[b] = kk;
    }

    void expand_blossom(int b, bool endstage) {
        for (int s : blossomchilds_[b]) {
            blossomparent_[s] = -1;
            if (s < nv_) {
                inblossom_[s] = s;
            } else if (endstage && dual_[s] == 0) {
                expand_blossom(s, endstage);
            } else {
                for (int v : leaves(s)) inblossom_[v] = s;
            }
        }
        if (!endstage && label_[b] == 2) {
            const auto childs = blossomchilds_[b];
            const auto endps = blossomendps_[b];
            const int len = static_cast<int>(childs.size());
            auto at = [&](const std::vector<int>& vec, int idx) { return vec[((idx % len) + len) % len]; };
            int entrychild = inblossom_[endpoint_[labelend_[b] ^ 1]];
            int j = static_cast<int>(std::find(childs.begin(), childs.end(), entrychild) - childs.begin());
            int jstep, endptrick;
            if (j & 1) {
                j -= len;
                jstep = 1;
                endptrick = 0;
            } else {
                jstep = -1;
                endptrick = 1;
            }
            int p = labelend_[b];
            while (j != 0) {
                label_[endpoint_[p ^ 1]] = 0;
                label_[endpoint_[at(endps, j - endptrick) ^ endptrick ^ 1]] = 0;
                assign_label(endpoint_[p ^ 1], 2, p);
                allowedge_[at(endps, j - endptrick) / 2] = true;
                j += jstep;
                p = at(endps, j - endptrick) ^ endptrick;
                allowedge_[p / 2] = true;
                j += jstep;
            }
            int bv = at(childs, j);
            label_[endpoint_[p ^ 1]] = label_[bv] = 2;
            labelend_[endpoint_[p ^ 1]] = labelend_[bv] = p;
            bestedge_[bv] = -1;
            j += jstep;
            while (at(childs, j) != entrychild) {
                bv = at(childs, j);
                if (label_[bv] == 1) {
                    j += jstep;
                    continue;
                }
                int found = -1;
                for (int v : leaves(bv))
                    if (label_[v] != 0) {
                        found = v;
                        break;
                    }
                if (found != -1) {
                    label_[found] = 0;
                    label_[endpoint_[mate_[blossombase_[bv]]]] = 0;
                    assign_label(found, 2, labelend_[found]);
                }
                j += jstep;
            }
        }
        label_[b] = labelend_[b] = -1;
        blossomchilds_[b].clear();
        blossomendps_[b].clear();
        blossombase_[b] = -1;
        blossombestedges_[b].clear();
        hasbest_[b] = false;
        bestedge_[b] = -1;
        unused_.push_back(b);
    }

    void augment_blossom(int b, int v) {
        int t = v;
        while (blossomparent_[t] != b) t = blossomparent_[t];
        if (t >= nv_) augment_blossom(t, v);
        auto& childs = blossomchilds_[b];
        auto& endps = blossomendps_[b];
        const int len = static_cast<int>(childs.size());
        auto idx = [&](int k) { return ((k % len) + len) % len; };
        int i = static_cast<int>(std::find(childs.begin(), childs.end(), t) - childs.begin());
        int j = i, jstep, endptrick;
        if (i & 1) {
            j -= len;
            jstep = 1;
            endptrick = 0;
        } else {
            jstep = -1;
            endptrick = 1;
        }
        while (j != 0) {
            j += jstep;
            t = childs[idx(j)];
            int p = endps[idx(j - endptrick)] ^ endptrick;
            if (t >= nv_) augment_blossom(t, endpoint_[p]);
            j += jstep;
            t = childs[idx(j)];
            if (t >= nv_) augment_blossom(t, endpoint_[p ^ 1]);
            mate_[endpoint_[p]] = p ^ 1;
            mate_[endpoint_[p ^ 1]] = p;
        }
        std::rotate(childs.begin(), childs.begin() + i, childs.end());
        std::rotate(endps.begin(), endps.begin() + i, endps.end());
        blossombase_[b] = blossombase_[childs[0]];
        require(blossombase_[b] == v, "blossom: augment base mismatch");
    }

    void augment_matching(int k) {
        const int v0 = edges_[k].u, w0 = edges_[k].v;
        const std::pair<int, int> starts[2] = {{v0, 2 * k + 1}, {w0, 2 * k}};
        for (auto [s, p] : starts) {
            while (true) {
                int bs = inblossom_[s];
                if (bs >= nv_) augment_blossom(bs, s);
                mate_[s] = p;
                if (labelend_[bs] == -1) break;
                int t = endpoint_[labelend_[bs]];
                int bt = inblossom_[t];
                s = endpoint_[labelend_[bt]];
                int j = endpoint_[labelend_[bt] ^ 1];
                if (bt >= nv_) augment_blossom(bt, j);
                mate_[j] = labelend_[bt];
                p = labelend_[bt] ^ 1;
            }
        }
    }

    int nv_;
    std::vector<WeightedEdge> edges_;
    std::vector<int> endpoint_;
    std::vector<std::vector<int>> neighbend_;
    std::vector<int> mate_, label_, labelend_, inblossom_, blossomparent_, blossombase_, bestedge_, unused_, queue_;
    std::vector<std::vector<int>> blossomchilds_, blossomendps_, blossombestedges_;
    std::vector<bool> hasbest_, allowedge_;
    std::vector<std::int64_t> dual_;
};

Matching finish(const MatchingInstance& inst, const std::vector<int>& edge_of) {
    Matching m;
    m.mate.assign(inst.vertices, -1);
    for (int v = 0; v < inst.vertices; ++v) {
        int k = edge_of[v];
        if (k < 0) continue;
        const auto& e = inst.edges[k];
        m.mate[v] = e.u == v ? e.v : e.u;
        if (v == std::min(e.u, e.v)) {
            m.edge_ids.push_back(k);
            m.weight += e.w;
        }
    }
    std::sort(m.edge_ids.begin(), m.edge_ids.end());
    return m;
}

void check_instance(const MatchingInstance& inst) {
    for (const auto& e : inst.edges)
        if (e.u < 0 || e.v < 0 || e.u >= inst.vertices || e.v >= inst.vertices || e.u == e.v)
            throw InputError("matching instance: bad edge");
}

}  // namespace

Matching max_weight_matching(const MatchingInstance& inst) {
    check_instance(inst);
    // Only positive edges can help; keep the heaviest copy of parallel edges.
    std::vector<WeightedEdge> pos;
    std::vector<int> orig;
    for (int k = 0; k < static_cast<int>(inst.edges.size()); ++k)
        if (inst.edges[k].w > 0) {
            pos.push_back(inst.edges[k]);
            orig.push_back(k);
        }
    Blossom b(inst.vertices, pos);
    auto local = b.run();
    std::vector<int> edge_of(inst.vertices, -1);
    for (int v = 0; v < inst.vertices; ++v)
        if (local[v] >= 0) edge_of[v] = orig[local[v]];
    Matching m = finish(inst, edge_of);
    for (int v = 0; v < inst.vertices; ++v)
        if (m.mate[v] >= 0) require(m.mate[m.mate[v]] == v, "blossom: inconsistent mates");
    return m;
}

Matching max_weight_matching_enumerate(const MatchingInstance& inst) {
    check_instance(inst);
    const int n = inst.vertices;
    if (n > kEnumerateMatchingCap) throw CapExceeded("enumeration matching supports at most 16 vertices");
    const std::uint32_t full = (1u << n) - 1;
    std::vector<std::int64_t> best(std::size_t{1} << n, 0);
    std::vector<int> choice(std::size_t{1} << n, -1);
    std::vector<std::vector<int>> inc(n);
    for (int k = 0; k < static_cast<int>(inst.edges.size()); ++k) {
        inc[inst.edges[k].u].push_back(k);
        inc[inst.edges[k].v].push_back(k);
    }
    for (std::uint32_t mask = 1; mask <= full && n > 0; ++mask) {
        int v = std::countr_zero(mask);
        std::uint32_t rest = mask & ~(1u << v);
        best[mask] = best[rest];
        choice[mask] = -1;
        for (int k : inc[v]) {
            const auto& e = inst.edges[k];
            int u = e.u == v ? e.v : e.u;
            if (!(rest >> u & 1u)) continue;
            std::int64_t val = e.w + best[rest & ~(1u << u)];
            if (val > best[mask]) {
                best[mask] = val;
                choice[mask] = k;
            }
        }
    }
    std::vector<int> edge_of(n, -1);
    std::uint32_t mask = full;
    while (mask) {
        int v = std::countr_zero(mask);
        int k = choice[mask];
        if (k == -1) {
            mask &= ~(1u << v);
            continue;
        }
        const auto& e = inst.edges[k];
        edge_of[e.u] = edge_of[e.v] = k;
        mask &= ~(1u << e.u);
        mask &= ~(1u << e.v);
    }
    return finish(inst, edge_of);
}

}  // namespace stf
