#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stf/esd.hpp"
#include "stf/graph.hpp"
#include "stf/patterns.hpp"

namespace stf {

using Path = std::vector<int>;

// Paths of the current recursion level: at most two, pairwise non-touching.
struct PathBundle {
    std::vector<Path> paths;
    VertexSet vertices(int n) const;
    int total() const;
};

// Q1 cut at u1 and u2 into three pieces, plus the optional second path.
struct SplitState {
    std::vector<Path> pieces;          // Q1^1, Q1^2, Q1^3 [, Q2]
    int u1 = -1, u2 = -1;
    std::vector<Path> prefs;           // induced prefix path per piece
    std::vector<VertexSet> shells;
    std::vector<int> long_pieces;      // indices of pieces with at least t vertices
    VertexSet terminals;               // first vertex of each long piece
    VertexSet pieces_union, shell_union;
};

SplitState split_paths(const Graph& g, const VertexSet& domain, const PathBundle& q, int t);

struct SeparatorResult {
    std::vector<Path> paths;  // each induced, at most t+1 vertices
    VertexSet removed;        // X, inside N[union of paths]
    Esd esd;                  // of g[domain - X]
};

struct LevelStats {
    int depth = 0;
    int bundle_size = 0;      // |union Q| at this level
    int new_paths = 0;
    int max_particle = 0;     // largest particle of the decomposition found here
    bool base_case = false;
};

struct DecomposeStats {
    std::vector<LevelStats> levels;
    int three_in_a_tree_calls = 0;
};

struct DecomposeOutcome {
    std::optional<SubdividedClaw> claw;
    SeparatorResult sep;
    DecomposeStats stats;
    bool is_claw() const { return claw.has_value(); }
};

struct DecomposeOptions {
    bool paranoid = false;  // re-validate every intermediate decomposition
};

// One recursion level and everything below it. base is a decomposition of
// g[domain - N[union q]] whose particles have at most n_root/2 vertices.
DecomposeOutcome recursion_step(const Graph& g, const VertexSet& domain, const PathBundle& q, const Esd& base,
                                int n_root, int t, const DecomposeOptions& opt = {});

// Empty when 3|union q_hat| <= 2|union q|.
std::vector<std::string> shrink_factor_check(const PathBundle& q, const PathBundle& q_hat);

// Either an induced S_{t,t,t} of g[domain], or paths, X and a rigid
// decomposition of g[domain - X] with particles of at most |domain|/2 vertices.
DecomposeOutcome main_decomposition(const Graph& g, const VertexSet& domain, int t, const DecomposeOptions& opt = {});
DecomposeOutcome main_decomposition(const Graph& g, int t, const DecomposeOptions& opt = {});

struct SFreeDecomposition {
    VertexSet x;               // peeled patterns plus the paths
    std::vector<Path> paths;
    Esd esd;  // of g[domain - N[x]]
    std::vector<SubdividedClaw> peeled;
    DecomposeStats stats;
};

// For sS_{t,t,t}-free inputs. Throws SIllegalInput when an S_{t,t,t} remains
// after s-1 peels.
SFreeDecomposition decompose_s_sttt_free(const Graph& g, const VertexSet& domain, int s, int t,
                                         const DecomposeOptions& opt = {});
SFreeDecomposition decompose_s_sttt_free(const Graph& g, int s, int t, const DecomposeOptions& opt = {});

// Exact bound tests, no floating point.
bool within_recursion_path_bound(int paths, int bundle_size);  // <= 6 log_{3/2} m + 6
bool within_main_path_bound(int paths, int n);                 // <= 11 log2 n + 6
bool within_peel_bound(int x_size, int s, int t, int n);       // <= (s-1)(3t+1) + (11 log2 n + 6)(t+1)
// Largest value accepted by the matching test above.
int recursion_path_budget(int bundle_size);
int main_path_budget(int n);
int peel_budget(int s, int t, int n);

// Every check of a separator, as messages; empty means it holds.
std::vector<std::string> check_separator(const Graph& g, const VertexSet& domain, const SeparatorResult& sep,
                                         int n_root, int t, bool require_rigid);
std::vector<std::string> check_s_free(const Graph& g, const VertexSet& domain, const SFreeDecomposition& d, int s,
                                      int t);

}  // namespace stf
