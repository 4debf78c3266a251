#pragma once

#include "qforest/bigint.hpp"
#include "qforest/gf.hpp"
#include "qforest/graph.hpp"
#include "qforest/treepoly.hpp"

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace qforest {

struct CountOptions {
    int threads = 1;     // <= 0: QFOREST_THREADS env, else hardware default
    bool force = false;  // bypass the operation-budget guard
};

// Raised when an enumeration is estimated to exceed kOpBudget field
// operations and `force` is not set. Enumerations whose assignment count does
// not fit in 64 bits are refused unconditionally.
struct BudgetError : std::runtime_error {
    double estimated_ops;
    explicit BudgetError(double est)
        : std::runtime_error("estimated " + std::to_string(est) +
                             " field operations exceeds the 1e10 budget; pass force to override"),
          estimated_ops(est) {}
};

inline constexpr double kOpBudget = 1e10;

// Resolves an effective worker count from options/env/hardware.
int resolve_threads(int requested);

enum class CountKind {
    g,  // assignments where det of the reduced Laplacian is nonzero
    f,  // assignments where the complement tree polynomial is nonzero
};

// Exact number of assignments in GF(q)^E with the selected polynomial
// nonvanishing. Disconnected graphs give 0. For kind g, loops are stripped
// first and each one multiplies the count by q.
BigInt count_nonvanishing(const Graph& g, CountKind kind, const FieldCtx& ctx,
                          const CountOptions& opt = {});

enum class ZeroMode {
    at_least,  // x_e = 0 for e in S, the rest free
    exact,     // x_e = 0 exactly for e in S (inclusion-exclusion over supersets)
};

BigInt count_zero_set(const Graph& g, const std::set<int>& S, CountKind kind, ZeroMode mode,
                      const FieldCtx& ctx, const CountOptions& opt = {});

struct RankProfile {
    std::vector<BigInt> counts;  // counts[r] = assignments/matrices of rank r
};

// Rank distribution of the reduced Laplacian over all assignments; counts has
// n(G) entries (ranks 0..n-1). Requires a simple graph.
RankProfile rank_profile(const Graph& g, int root, const FieldCtx& ctx,
                         const CountOptions& opt = {});

// 0/1 support pattern for n x n matrices; cells lists the positions allowed
// to be nonzero (1-indexed, row-major order).
struct SupportPattern {
    int n = 0;
    std::vector<std::pair<int, int>> cells;

    // Pattern file: first non-comment line n, then n non-comment lines of n
    // characters '0'/'1'; '#' starts a comment.
    static SupportPattern parse(const std::string& text);
    static SupportPattern load(const std::string& path);
    static SupportPattern full(int n);
    // Line-point incidence of the seven-point projective plane, rows in the
    // order {123, 145, 167, 246, 257, 347, 356}.
    static SupportPattern fano();

    bool is_symmetric() const;  // closed under transposition
    bool contains(int r, int c) const;
};

enum class SupportAlgo {
    brute,    // enumerate every filling of the free cells
    span_dp,  // row-by-row dynamic program over row-span states
};

// Number of invertible n x n matrices whose off-pattern cells are zero.
BigInt count_support_invertible(const SupportPattern& pat, const FieldCtx& ctx, SupportAlgo algo,
                                const CountOptions& opt = {});

// Number of invertible symmetric matrices with the given (symmetric) support;
// free cells are the diagonal and upper-triangle pattern cells.
BigInt count_support_symmetric(const SupportPattern& pat, const FieldCtx& ctx,
                               const CountOptions& opt = {});

// Rank distribution over all symmetric n x n matrices; counts has n+1 entries.
RankProfile sym_rank_census(int n, const FieldCtx& ctx, const CountOptions& opt = {});

enum class FormKind {
    plus,   // identity scalar product
    minus,  // alpha-form (odd q) or pairwise E-form (even q, even n)
};

// Number of ordered bases (u_1..u_n) of F_q^n with <u_i,u_j> = 0 for every
// missing edge ij of g among vertices 1..n; vertex n+1 of g must be an apex.
// Enumerates all q^(n^2) tuples; tiny n only.
BigInt ordered_basis_count(const Graph& g, FormKind form, const FieldCtx& ctx,
                           const CountOptions& opt = {});

// Number of vectors u in F_q^n with <u,u> = 0 (zero vector included).
BigInt isotropic_count(int n, FormKind form, const FieldCtx& ctx, const CountOptions& opt = {});

}  // namespace qforest
