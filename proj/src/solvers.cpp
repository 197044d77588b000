#include "stf/solvers.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <unordered_map>

#include "stf/combine.hpp"
#include "stf/decompose.hpp"
#include "stf/errors.hpp"
#include "stf/esd.hpp"

namespace stf {

Rational parse_rational(const std::string& text) {
    auto bad = [&] { return InputError("not a rational number: '" + text + "'"); };
    if (text.empty()) throw bad();
    auto digits = [&](const std::string& s) {
        if (s.empty() || s.size() > 15) throw bad();
        for (char c : s)
            if (c < '0' || c > '9') throw bad();
        return std::stoll(s);
    };
    std::string body = text;
    bool neg = false;
    if (body[0] == '-') {
        neg = true;
        body = body.substr(1);
    }
    Rational r;
    if (auto slash = body.find('/'); slash != std::string::npos) {
        std::int64_t den = digits(body.substr(slash + 1));
        if (den == 0) throw bad();
        r = Rational(digits(body.substr(0, slash)), den);
    } else if (auto dot = body.find('.'); dot != std::string::npos) {
        std::string ip = body.substr(0, dot), fp = body.substr(dot + 1);
        if (fp.empty() || fp.size() > 12) throw bad();
        std::int64_t scale = 1;
        for (std::size_t i = 0; i < fp.size(); ++i) scale *= 10;
        r = Rational(ip.empty() ? 0 : digits(ip)) + Rational(digits(fp), scale);
    } else {
        r = Rational(digits(body));
    }
    return neg ? -r : r;
}

std::string to_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

namespace {

void check_weights(const Graph& g, const Weights& w) {
    if (static_cast<int>(w.size()) != g.size()) throw InputError("weight vector does not match the graph");
    for (Weight x : w)
        if (x < 0 || x > kMaxWeight) throw InputError("weights must lie in [0, 2^50]");
}

// Local bitmask view of g[domain] for at most 32 vertices.
struct SmallView {
    std::vector<int> vs;
    std::vector<std::uint32_t> adj;
    std::vector<Weight> wt;

    SmallView(const Graph& g, const Weights& w, const VertexSet& domain) : vs(domain.to_vector()) {
        const int k = static_cast<int>(vs.size());
        adj.assign(k, 0);
        wt.resize(k);
        for (int i = 0; i < k; ++i) {
            wt[i] = w[vs[i]];
            for (int j = 0; j < k; ++j)
                if (g.adjacent(vs[i], vs[j])) adj[i] |= std::uint32_t{1} << j;
        }
    }
    VertexSet lift(std::uint32_t mask, int n) const {
        VertexSet s(n);
        for (int i = 0; i < static_cast<int>(vs.size()); ++i)
            if (mask >> i & 1u) s.set(vs[i]);
        return s;
    }
};

// a before b in the order of increasing member sequences.
bool mask_lex_less(std::uint32_t a, std::uint32_t b) {
    while (a && b) {
        const int x = std::countr_zero(a), y = std::countr_zero(b);
        if (x != y) return x < y;
        a &= a - 1;
        b &= b - 1;
    }
    return !a && b;
}

struct BranchAndBound {
    const SmallView& v;
    Weight best = -1;
    std::uint32_t best_mask = 0;

    Weight sum(std::uint32_t m) const {
        Weight s = 0;
        for (; m; m &= m - 1) s += v.wt[std::countr_zero(m)];
        return s;
    }
    void run(std::uint32_t chosen, std::uint32_t cand, Weight w) {
        if (w + sum(cand) < best) return;
        if (!cand) {
            if (w > best || (w == best && mask_lex_less(chosen, best_mask))) {
                best = w;
                best_mask = chosen;
            }
            return;
        }
        const int i = std::countr_zero(cand);
        const std::uint32_t bit = std::uint32_t{1} << i;
        run(chosen | bit, cand & ~bit & ~v.adj[i], w + v.wt[i]);
        run(chosen, cand & ~bit, w);
    }
};

}  // namespace

VertexSet brute_force_mwis(const Graph& g, const Weights& w, const VertexSet& domain, int cap) {
    check_weights(g, w);
    check_ids(g, domain);
    if (cap > 32) throw InputError("brute force cap above 32");
    if (domain.count() > cap)
        throw CapExceeded("brute force supports at most " + std::to_string(cap) + " vertices, got " +
                          std::to_string(domain.count()));
    SmallView view(g, w, domain);
    const int k = static_cast<int>(view.vs.size());
    BranchAndBound bb{view};
    const std::uint32_t all = k == 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << k) - 1;
    bb.run(0, all, 0);
    return view.lift(bb.best_mask, g.size());
}

VertexSet brute_force_mwis(const Graph& g, const Weights& w, int cap) {
    return brute_force_mwis(g, w, g.all(), cap);
}

VertexSet brute_force_mwis_enumerate(const Graph& g, const Weights& w, const VertexSet& domain, int cap) {
    check_weights(g, w);
    check_ids(g, domain);
    if (cap > 30) throw InputError("enumeration cap above 30");
    if (domain.count() > cap)
        throw CapExceeded("enumeration supports at most " + std::to_string(cap) + " vertices, got " +
                          std::to_string(domain.count()));
    SmallView view(g, w, domain);
    const int k = static_cast<int>(view.vs.size());
    Weight best = -1;
    std::uint32_t best_mask = 0;
    for (std::uint32_t m = 0; m < (std::uint32_t{1} << k); ++m) {
        Weight s = 0;
        bool ok = true;
        for (std::uint32_t r = m; r; r &= r - 1) {
            const int i = std::countr_zero(r);
            if (view.adj[i] & m) {
                ok = false;
                break;
            }
            s += view.wt[i];
        }
        if (!ok) continue;
        if (s > best || (s == best && mask_lex_less(m, best_mask))) {
            best = s;
            best_mask = m;
        }
    }
    return view.lift(best_mask, g.size());
}

void check_config(const SolverConfig& cfg) {
    if (cfg.s < 1 || cfg.t < 1) throw InputError("s and t must be at least 1");
    if (cfg.epsilon <= 0 || cfg.epsilon >= 1) throw InputError("epsilon must lie in (0,1)");
    if (cfg.n0 < 3 || cfg.n0 > kBranchAndBoundCap + 1)
        throw InputError("n0 must lie in [3, " + std::to_string(kBranchAndBoundCap + 1) + "]");
    if (cfg.heavy_factor <= 0) throw InputError("heavy factor must be positive");
    if (cfg.family_cap && *cfg.family_cap < 1) throw InputError("family cap must be positive");
    if (cfg.budget < 0) throw InputError("budget must be non-negative");
}

std::int64_t root_power_of_two(int n) {
    std::int64_t p = 1;
    while (p < n) p *= 2;
    return p;
}

namespace {

int log2_exact(std::int64_t big_n) {
    if (big_n < 1 || (big_n & (big_n - 1)) != 0) throw DomainError("N must be a power of two");
    return std::countr_zero(static_cast<std::uint64_t>(big_n));
}

struct SetHash {
    std::size_t operator()(const VertexSet& s) const { return s.hash(); }
};

Weight weight_of(const Weights& w, const VertexSet& s) { return total_weight(w, s); }

// Upper bound on the weight of an independent subset of s: a greedy clique
// cover, each clique charged its heaviest vertex.
Weight clique_cover_bound(const Graph& g, const Weights& w, VertexSet s) {
    Weight bound = 0;
    auto heaviest = [&](const VertexSet& c) {
        int best = -1;
        for (int v : c)
            if (best == -1 || w[v] > w[best]) best = v;
        return best;
    };
    while (s.any()) {
        const int v = heaviest(s);
        bound += w[v];
        s.reset(v);
        VertexSet cand = g.neighbors(v) & s;
        while (cand.any()) {
            const int u = heaviest(cand);
            s.reset(u);
            cand.reset(u);
            cand &= g.neighbors(u);
        }
    }
    return bound;
}

// Shared bookkeeping of both solvers.
class SolverBase {
protected:
    SolverBase(const Graph& g, const Weights& w, const SolverConfig& cfg) : g_(g), w_(w), cfg_(cfg) {}

    const Graph& g_;
    const Weights& w_;
    const SolverConfig& cfg_;
    SolveStats stats_;

    void enter(int depth) {
        ++stats_.calls;
        stats_.depth = std::max(stats_.depth, depth);
        if (cfg_.budget > 0 && stats_.calls > cfg_.budget)
            throw CapExceeded("solver budget of " + std::to_string(cfg_.budget) + " calls exceeded");
    }
    VertexSet brute(const VertexSet& domain) {
        ++stats_.brute_force;
        return brute_force_mwis(g_, w_, domain);
    }
    void check_particle(const Particle& p, int n) const {
        if (2 * p.members.count() > n)
            throw InvariantViolation("particle " + p.name() + " has " + std::to_string(p.members.count()) +
                                     " vertices, more than half of " + std::to_string(n));
    }
    void check_result(const VertexSet& s, const VertexSet& domain) const {
        if (!s.subset_of(domain) || !is_independent(g_, s))
            throw InvariantViolation("solver produced a set that is not independent in its instance");
    }
    // Particle optima through `solve`, then the matching combination.
    template <class Solve>
    VertexSet combine(const Esd& esd, int n, LevelRecord& rec, Solve&& solve) {
        ParticleSolutions ps;
        ps.parts = particles(esd);
        ps.sols.reserve(ps.parts.size());
        for (const auto& p : ps.parts) {
            if (p.members.empty()) {
                ps.sols.emplace_back(g_.size());
                continue;
            }
            check_particle(p, n);
            rec.max_particle = std::max(rec.max_particle, p.members.count());
            ++stats_.particles;
            ps.sols.push_back(solve(p.members));
        }
        ++stats_.matchings;
        return combine_via_matching(g_, esd, ps, w_).set;
    }
};

class ExactSolver : SolverBase {
public:
    ExactSolver(const Graph& g, const Weights& w, const SolverConfig& cfg) : SolverBase(g, w, cfg) {}

    SolveResult run() {
        SolveResult r;
        r.set = solve(g_.all(), 0);
        r.weight = weight_of(w_, r.set);
        r.stats = std::move(stats_);
        return r;
    }

private:
    std::unordered_map<VertexSet, VertexSet, SetHash> memo_;

    VertexSet solve(const VertexSet& domain, int depth) {
        enter(depth);
        if (cfg_.memoize) {
            if (auto it = memo_.find(domain); it != memo_.end()) {
                ++stats_.memo_hits;
                return it->second;
            }
        }
        VertexSet out = solve_fresh(domain, depth);
        check_result(out, domain);
        if (cfg_.memoize) memo_.emplace(domain, out);
        return out;
    }

    VertexSet solve_fresh(const VertexSet& domain, int depth) {
        const int n = domain.count();
        if (n == 0) return domain;
        if (n < cfg_.n0) return brute(domain);
        int v = -1, dv = -1;
        for (int x : domain) {
            const int d = (g_.neighbors(x) & domain).count();
            if (d > dv) {
                v = x;
                dv = d;
            }
        }
        if (static_cast<std::int64_t>(dv) * dv * cfg_.t >= n) {
            ++stats_.branchings;
            VertexSet without = domain;
            without.reset(v);
            VertexSet a = solve(without, depth + 1);
            VertexSet b = solve(domain - closed_neighborhood(g_, v), depth + 1);
            b.set(v);
            return weight_of(w_, b) > weight_of(w_, a) ? b : a;
        }
        return decompose_and_guess(domain, depth);
    }

    VertexSet decompose_and_guess(const VertexSet& domain, int depth) {
        const int n = domain.count();
        ++stats_.decompositions;
        SFreeDecomposition d = decompose_s_sttt_free(g_, domain, cfg_.s, cfg_.t, DecomposeOptions{cfg_.paranoid});
        if (cfg_.paranoid) {
            auto issues = check_s_free(g_, domain, d, cfg_.s, cfg_.t);
            if (!issues.empty()) throw InvariantViolation("decomposition check failed: " + issues[0]);
        }
        const VertexSet nx = closed_neighborhood(g_, d.x) & domain;
        const VertexSet rest = domain - nx;
        const std::vector<int> cand = nx.to_vector();
        LevelRecord rec;
        rec.depth = depth;
        rec.n = n;
        Weight best_w = -1;
        VertexSet best(g_.size());
        VertexSet j(g_.size()), blocked(g_.size());

        // Independent J inside N[X], include-first; a branch is cut when even
        // taking everything left could not beat the best so far.
        auto visit = [&](auto&& self, std::size_t i) -> void {
            const VertexSet open = rest - closed_neighborhood(g_, j);
            VertexSet left = open;
            for (std::size_t k = i; k < cand.size(); ++k)
                if (!blocked.test(cand[k])) left.set(cand[k]);
            if (weight_of(w_, j) + clique_cover_bound(g_, w_, left) <= best_w) {
                ++stats_.pruned_guesses;
                return;
            }
            if (i == cand.size()) {
                ++stats_.guesses;
                ++rec.guesses;
                Esd sub = d.esd.restricted(open);
                VertexSet got = combine(sub, n, rec, [&](const VertexSet& a) { return solve(a, depth + 1); });
                got |= j;
                const Weight gw = weight_of(w_, got);
                if (gw > best_w) {
                    best_w = gw;
                    best = got;
                }
                return;
            }
            const int x = cand[i];
            if (!blocked.test(x)) {
                const VertexSet saved = blocked;
                j.set(x);
                blocked |= closed_neighborhood(g_, x);
                self(self, i + 1);
                j.reset(x);
                blocked = saved;
            }
            self(self, i + 1);
        };
        visit(visit, 0);
        stats_.decompose_levels.push_back(rec);
        return best;
    }
};

class QptasSolver : SolverBase {
public:
    QptasSolver(const Graph& g, const Weights& w, const SolverConfig& cfg)
        : SolverBase(g, w, cfg), big_n_(root_power_of_two(g.size())) {}

    SolveResult run() {
        SolveResult r;
        r.set = solve(g_.all(), 0);
        r.weight = weight_of(w_, r.set);
        r.stats = std::move(stats_);
        return r;
    }

private:
    std::int64_t big_n_;
    std::unordered_map<VertexSet, VertexSet, SetHash> memo_[64];

    VertexSet solve(const VertexSet& domain, int h) {
        enter(h);
        const int n = domain.count();
        if (static_cast<std::int64_t>(n) << h > big_n_)
            throw InvariantViolation("instance at level " + std::to_string(h) + " exceeds N/2^h");
        if (cfg_.memoize) {
            if (auto it = memo_[h].find(domain); it != memo_[h].end()) {
                ++stats_.memo_hits;
                return it->second;
            }
        }
        VertexSet out = solve_fresh(domain, h);
        check_result(out, domain);
        if (cfg_.memoize) memo_[h].emplace(domain, out);
        return out;
    }

    VertexSet solve_fresh(const VertexSet& domain, int h) {
        const int n = domain.count();
        if (n == 0) return domain;
        if (n < cfg_.n0) return brute(domain);
        const HeavyVertexContext ctx = heavy_context(h, cfg_.epsilon, cfg_.t, big_n_, cfg_.heavy_factor);
        GoodSetFamily family = good_set_family(g_, domain, ctx);
        LevelRecord rec;
        rec.depth = h;
        rec.n = n;
        Weight best_w = -1;
        VertexSet best(g_.size());
        long seen = 0;
        while (auto j = family.next()) {
            if (cfg_.family_cap && seen >= *cfg_.family_cap) {
                stats_.family_truncated = true;
                break;
            }
            ++seen;
            // Everything the guess can return lies outside N(J).
            const VertexSet nj = closed_neighborhood(g_, *j) & domain;
            if (weight_of(w_, *j) + clique_cover_bound(g_, w_, domain - nj) <= best_w) {
                ++stats_.pruned_guesses;
                continue;
            }
            ++stats_.guesses;
            ++rec.guesses;
            const VertexSet rem = domain - nj;
            VertexSet got(g_.size());
            if (rem.count() < cfg_.n0) {
                got = brute(rem);
            } else {
                ++stats_.decompositions;
                SFreeDecomposition d =
                    decompose_s_sttt_free(g_, rem, cfg_.s, cfg_.t, DecomposeOptions{cfg_.paranoid});
                if (!within_peel_bound(d.x.count(), cfg_.s, cfg_.t, rem.count()))
                    throw BoundViolation("X_J has " + std::to_string(d.x.count()) + " vertices");
                if (cfg_.paranoid) {
                    auto issues = check_s_free(g_, rem, d, cfg_.s, cfg_.t);
                    if (!issues.empty()) throw InvariantViolation("decomposition check failed: " + issues[0]);
                }
                Esd esd = d.esd;
                for (int v : *j) esd.add_vertex(VertexSet(g_.size(), {v}));
                got = combine(esd, n, rec, [&](const VertexSet& a) { return solve(a, h + 1); });
            }
            got |= *j;
            const Weight gw = weight_of(w_, got);
            if (gw > best_w) {
                best_w = gw;
                best = got;
            }
        }
        stats_.decompose_levels.push_back(rec);
        return best;
    }
};

}  // namespace

SolveResult solve_exact_subexp(const Graph& g, const Weights& w, const SolverConfig& cfg) {
    check_config(cfg);
    check_weights(g, w);
    return ExactSolver(g, w, cfg).run();
}

Rational beta(int h, const Rational& eps, int t, std::int64_t big_n, const Rational& factor) {
    const int log_n = log2_exact(big_n);
    if (h < 0 || h >= log_n)
        throw DomainError("beta needs 0 <= h < log2 N, got h = " + std::to_string(h) + ", log2 N = " +
                          std::to_string(log_n));
    if (eps <= 0 || eps >= 1) throw DomainError("epsilon must lie in (0,1)");
    const Rational denom = factor * (t + 1) * (log_n - h) * ((1 - eps) * log_n + eps * (h + 1));
    return eps / denom;
}

HeavyVertexContext heavy_context(int h, const Rational& eps, int t, std::int64_t big_n, const Rational& factor) {
    HeavyVertexContext ctx;
    ctx.h = h;
    ctx.beta = beta(h, eps, t, big_n, factor);
    const Rational q = Rational(log2_exact(big_n) - h) / ctx.beta;
    ctx.size_bound = q.numerator() / q.denominator() + (q.numerator() % q.denominator() != 0);
    return ctx;
}

GoodSetFamily::GoodSetFamily(const Graph& g, const VertexSet& domain, std::int64_t bound)
    : g_(g), vs_(domain.to_vector()), bound_(bound) {
    check_ids(g, domain);
}

GoodSetFamily good_set_family(const Graph& g, const VertexSet& domain, const HeavyVertexContext& ctx) {
    return GoodSetFamily(g, domain, ctx.size_bound);
}

// Extends pos_ from index `start` to the next independent set of size_ in
// lexicographic order.
bool GoodSetFamily::advance() {
    int start = pos_.empty() ? 0 : -1;
    if (start == -1) {
        start = pos_.back() + 1;
        pos_.pop_back();
    }
    const int k = static_cast<int>(vs_.size());
    while (true) {
        if (static_cast<int>(pos_.size()) == size_) return true;
        int found = -1;
        const int need = size_ - static_cast<int>(pos_.size());
        for (int i = start; i + need <= k; ++i) {
            bool ok = true;
            for (int p : pos_)
                if (g_.adjacent(vs_[p], vs_[i])) {
                    ok = false;
                    break;
                }
            if (ok) {
                found = i;
                break;
            }
        }
        if (found >= 0) {
            pos_.push_back(found);
            start = found + 1;
        } else {
            if (pos_.empty()) return false;
            start = pos_.back() + 1;
            pos_.pop_back();
        }
    }
}

bool GoodSetFamily::first_of_size() {
    pos_.clear();
    return advance();
}

std::optional<VertexSet> GoodSetFamily::next() {
    if (done_) return std::nullopt;
    if (!found_at_size_) {
        // The empty set opens the family.
        found_at_size_ = true;
        size_ = 0;
        return VertexSet(g_.size());
    }
    bool ok = size_ > 0 && advance();
    if (!ok) {
        if (size_ + 1 > bound_ || size_ + 1 > static_cast<int>(vs_.size())) {
            done_ = true;
            return std::nullopt;
        }
        ++size_;
        ok = first_of_size();
        if (!ok) {
            done_ = true;
            return std::nullopt;
        }
    }
    VertexSet s(g_.size());
    for (int p : pos_) s.set(vs_[p]);
    return s;
}

VertexSet heavy_vertices(const Graph& g, const Weights& w, const VertexSet& domain, const VertexSet& i,
                         const Rational& beta) {
    VertexSet out(g.size());
    const Weight wi = total_weight(w, i & domain);
    for (int v : domain)
        if (Rational(total_weight(w, closed_neighborhood(g, v) & i & domain)) > beta * wi) out.set(v);
    return out;
}

bool is_good_for(const Graph& g, const Weights& w, const VertexSet& domain, const VertexSet& j, const VertexSet& i,
                 const Rational& beta) {
    if (!j.subset_of(i)) return false;
    return heavy_vertices(g, w, domain, i, beta).subset_of(closed_neighborhood(g, j));
}

SolveResult solve_qptas(const Graph& g, const Weights& w, const SolverConfig& cfg) {
    check_config(cfg);
    check_weights(g, w);
    return QptasSolver(g, w, cfg).run();
}

}  // namespace stf
