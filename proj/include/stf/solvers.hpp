#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "stf/graph.hpp"

namespace stf {

using Rational = boost::rational<std::int64_t>;

// "0.2", "1/5" or "3" to an exact rational. Throws InputError.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& r);

inline constexpr int kBranchAndBoundCap = 24;
inline constexpr int kEnumerationCap = 18;

// Exact maximum-weight independent set of g[domain]; among maximizers the
// lexicographically least. Throws CapExceeded above the cap.
VertexSet brute_force_mwis(const Graph& g, const Weights& w, const VertexSet& domain, int cap = kBranchAndBoundCap);
VertexSet brute_force_mwis(const Graph& g, const Weights& w, int cap = kBranchAndBoundCap);
// Same answer by trying every subset.
VertexSet brute_force_mwis_enumerate(const Graph& g, const Weights& w, const VertexSet& domain,
                                     int cap = kEnumerationCap);

struct SolverConfig {
    int s = 1, t = 1;
    Rational epsilon{1, 2};
    int n0 = 20;                         // instances below this size are solved by brute force
    Rational heavy_factor{12};           // the constant in front of (t+1) log(N/2^h) in beta
    std::optional<long> family_cap = 100000;  // practical mode; nullopt enumerates every good-set candidate
    long budget = 0;                     // total recursive calls, 0 for no limit
    bool paranoid = false;
    bool memoize = false;
};

// Throws InputError on out-of-range parameters.
void check_config(const SolverConfig& cfg);

struct LevelRecord {
    int depth = 0;
    int n = 0;             // vertices of the instance at this call
    int max_particle = 0;  // largest particle handed to a recursive call
    long guesses = 0;      // sets J tried at this call
};

struct SolveStats {
    long calls = 0;
    int depth = 0;  // deepest recursion level reached
    long particles = 0;
    long matchings = 0;
    long brute_force = 0;
    long branchings = 0;
    long decompositions = 0;
    long guesses = 0;
    long pruned_guesses = 0;
    long memo_hits = 0;
    bool family_truncated = false;
    std::vector<LevelRecord> decompose_levels;  // one per decomposing call
};

struct SolveResult {
    VertexSet set;
    Weight weight = 0;
    SolveStats stats;
};

// Exact MWIS for sS_{t,t,t}-free graphs: branching on vertices of degree at
// least sqrt(n/t), otherwise guessing the solution inside N[X] and combining
// particle optima by matching.
SolveResult solve_exact_subexp(const Graph& g, const Weights& w, const SolverConfig& cfg);

// Exact rational (eps) / (factor (t+1) log(N/2^h) ((1-eps) log N + eps (h+1))).
// N must be a power of two; throws DomainError unless 0 <= h < log2 N.
Rational beta(int h, const Rational& eps, int t, std::int64_t big_n, const Rational& factor = Rational{12});

struct HeavyVertexContext {
    Rational beta;
    int h = 0;
    std::int64_t size_bound = 0;  // ceil(log(N/2^h) / beta)
};
HeavyVertexContext heavy_context(int h, const Rational& eps, int t, std::int64_t big_n,
                                 const Rational& factor = Rational{12});

// Independent sets of g[domain] with at most `bound` vertices, by size and
// then lexicographically.
class GoodSetFamily {
public:
    GoodSetFamily(const Graph& g, const VertexSet& domain, std::int64_t bound);
    std::optional<VertexSet> next();

private:
    const Graph& g_;
    std::vector<int> vs_;
    std::int64_t bound_;
    int size_ = 0;
    bool found_at_size_ = false;
    bool done_ = false;
    std::vector<int> pos_;  // indices into vs_ of the current set
    bool advance();
    bool first_of_size();
};

GoodSetFamily good_set_family(const Graph& g, const VertexSet& domain, const HeavyVertexContext& ctx);

// Vertices v of g[domain] with w(N[v] & I) > beta w(I).
VertexSet heavy_vertices(const Graph& g, const Weights& w, const VertexSet& domain, const VertexSet& i,
                         const Rational& beta);
bool is_good_for(const Graph& g, const Weights& w, const VertexSet& domain, const VertexSet& j, const VertexSet& i,
                 const Rational& beta);

// Least power of two >= n.
std::int64_t root_power_of_two(int n);

// Independent set of weight at least (1 - eps) OPT when no family cap applies.
SolveResult solve_qptas(const Graph& g, const Weights& w, const SolverConfig& cfg);

}  // namespace stf
