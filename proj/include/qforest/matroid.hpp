#pragma once

#include "qforest/bigint.hpp"
#include "qforest/counting.hpp"
#include "qforest/gf.hpp"
#include "qforest/graph.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace qforest {

// Matroid given by its basis list. Element e of the ground set {1..ground}
// is bit e-1 of a mask; every basis has exactly `rank` bits set. Construction
// sorts and deduplicates the masks and spot-checks basis exchange on random
// pairs. Ground sets are capped at 32 elements by the mask width.
struct Matroid {
    int ground = 0;
    int rank = 0;
    std::vector<uint32_t> bases;
};

// All r-subsets of {1..n}, 0 <= r <= n, n >= 1.
Matroid uniform_matroid(int r, int n);

// Binary matroid of the ten weight-3 vectors of GF(2)^5, supports in
// lexicographic order; bases are the 5-subsets of columns with nonzero
// determinant over GF(2).
Matroid r10_matroid();

// Cycle matroid: ground set = edge set, bases = spanning trees. Loops and
// parallel edges are allowed; loops end up in no basis. Requires a connected
// graph (otherwise there is no basis).
Matroid graphic_matroid(const Graph& g);

// Bases as 1-indexed element lists.
Matroid matroid_from_bases(int ground, const std::vector<std::vector<int>>& bases);

// Basis-list format: first non-comment line "s r" (ground size, rank), each
// later non-comment line r element indices; '#' starts a comment.
Matroid parse_matroid(const std::string& text);
Matroid load_matroid(const std::string& path);

// Q_M(x) = sum over bases of prod_{e in B} x_e; x[e-1] is the value of
// element e.
Fe eval_basis_poly(const Matroid& M, std::span<const Fe> x, const FieldCtx& ctx);

// Number of assignments in GF(q)^ground with Q_M != 0. Enumerates the first
// ground-1 coordinates and closes the last one in O(1): writing
// Q_M = A + B x_s, a prefix contributes q-1 assignments when B != 0 and
// q [A != 0] otherwise.
BigInt count_g_matroid(const Matroid& M, const FieldCtx& ctx, const CountOptions& opt = {});

// Closed form for count_g_matroid(uniform_matroid(2, 4)): q(q-1)(q^2-1),
// q(q-1)(q^2+1), or q^3(q-1) as q = 1, 2, 0 mod 3.
BigInt fourpoint_formula(const BigInt& q);

}  // namespace qforest
