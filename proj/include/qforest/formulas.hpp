#pragma once

#include "qforest/bigint.hpp"
#include "qforest/counting.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace qforest {

// Raised when a closed form is requested at a parameter where its displayed
// product/polynomial has negative exponents, so the intended value is not
// determined by the display. Callers map this to CLI exit code 4.
struct BoundaryAmbiguousError : std::domain_error {
    explicit BoundaryAmbiguousError(const std::string& what) : std::domain_error(what) {}
};

// Nonsingular symmetric (n-1) x (n-1) matrices over F_q, i.e. the count of
// nonvanishing Laplacian determinants for the complete graph K_n:
//   n = 2m:   q^{m(m-1)} (q-1)(q^3-1)...(q^{2m-1}-1)
//   n = 2m+1: q^{m(m+1)} (q-1)(q^3-1)...(q^{2m-1}-1)
BigInt g_complete(int n, const BigInt& q);

// Number of n x n symmetric matrices over F_q of rank r (0 for r > n).
BigInt macwilliams_h(int n, int r, const BigInt& q);

// One census step: profile h(n,.) (length n+1) to h(n+1,.) (length n+2),
//   h(n+1,r) = q^r h(n,r) + (q-1) q^{r-1} h(n,r-1) + (q^{n+1} - q^{r-1}) h(n,r-2).
std::vector<BigInt> macwilliams_step(const std::vector<BigInt>& h, int n, const BigInt& q);

// One apex adjunction: profile h(G,.) of an n_G-vertex graph with an apex
// (length n_G, ranks of the reduced Laplacian evaluations) to h(G*,.) where
// G* is G with one more apex,
//   h(G*,r) = q^r h(G,r) + (q-1) q^{r-1} h(G,r-1) + (q^{n_G} - q^{r-1}) h(G,r-2).
std::vector<BigInt> apex_step(const std::vector<BigInt>& h, int n_G, const BigInt& q);

// g of K_n minus a k-clique: diagonal base profile C(k,r)(q-1)^r for
// K_{k+1}-K_k iterated through apex_step; requires n > k >= 1.
BigInt g_complete_minus_clique(int n, int k, const BigInt& q);

// Conjectured closed forms for g of K_n - K_k, k in {3,4,5}. Evaluated as an
// exact Laurent combination; throws BoundaryAmbiguousError below the minimum
// n where every displayed exponent is meaningful.
BigInt conjecture_knk(int n, int k, const BigInt& q);

// g of K_n minus a star (edges from one vertex toward s others), 1 <= s <= n-2:
//   n = 2m:   q^{m(m-1)} (q-1)(q^3-1)...(q^{2m-3}-1) (q^{2m-1-s}-1)
//   n = 2m+1: q^{m^2+m-s-1} (q-1)(q^3-1)...(q^{2m-3}-1) (q^{2m}-q^s-q+1)
BigInt g_minus_star(int n, int s, const BigInt& q);

// Exact counts for the n-cycle, n >= 2:
//   f: q^{n-1}(q-1)
//   g: n(q-1)^{n-1} + sum_{i=1..n} (-1)^{n-i} (q-1)^i
BigInt cycle_counts(int n, const BigInt& q, CountKind kind);

enum class GroupKind {
    gl,           // all invertible n x n matrices
    omega_plus,   // fiber of A -> A A^t over the plus-type Gram matrix
    omega_minus,  // fiber over the minus-type Gram matrix (odd q or even n)
    omega_plain,  // single fiber for q even, n odd
};

// Dickson orders; throws std::invalid_argument for kind/parity combinations
// that do not exist (e.g. omega_plain with odd q).
BigInt group_order(GroupKind kind, int n, const BigInt& q);

// Number of vectors u in F_q^n with <u,u> = 0 under the plus/minus scalar
// product (zero vector included). FormKind::minus with q even requires even n.
BigInt isotropic_formula(int n, const BigInt& q, FormKind form);

// Right side of the two-edge-cut reduction
//   g_G = q g_{G1} g_{G2} + (q-2) g_{G'} + (q-1) g_{G''},
// where G', G'' contract one resp. both cut edges.
BigInt two_cut_rhs(const BigInt& g1, const BigInt& g2, const BigInt& g_contract1,
                   const BigInt& g_contract2, const BigInt& q);

}  // namespace qforest
