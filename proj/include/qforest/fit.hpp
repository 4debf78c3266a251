#pragma once

#include "qforest/bigint.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qforest {

// Polynomial with exact rational coefficients, ascending degree; trailing
// zero coefficients are stripped (the zero polynomial has none).
struct RationalPoly {
    std::vector<BigRat> coeffs;

    int degree() const { return int(coeffs.size()) - 1; }
    BigRat eval(const BigRat& x) const;
    bool operator==(const RationalPoly&) const = default;
};

// Unique polynomial of degree < #points through all points, exact arithmetic
// throughout. Throws on an empty list or duplicate abscissae.
RationalPoly interpolate(const std::vector<std::pair<BigInt, BigInt>>& points);

// true iff every coefficient is an integer.
bool integer_coeff_check(const RationalPoly& poly);

struct PolyProbe {
    std::optional<RationalPoly> polynomial;            // set iff every held-out point matched
    std::optional<std::pair<BigInt, BigInt>> witness;  // else the first mismatching point
};

// Fits the degree_bound+1 lowest-q points and validates the remaining points
// in ascending order. Requires at least degree_bound+2 points; the verdict
// does not depend on the input order.
PolyProbe polynomiality_probe(const std::vector<std::pair<BigInt, BigInt>>& points,
                              int degree_bound);

// One polynomial per residue class mod N.
struct Quasipolynomial {
    int modulus = 1;
    std::vector<RationalPoly> branches;  // indexed by residue of q
};

// A candidate modulus that had to be skipped: some residue class held fewer
// than degree_bound+1 points, so its branch cannot be pinned down.
struct ClassGap {
    int modulus = 0;
    int residue = 0;
    int have = 0;
    int need = 0;
};

struct QuasiProbe {
    std::optional<Quasipolynomial> result;  // smallest certified modulus
    std::vector<ClassGap> insufficiencies;  // why smaller moduli were skipped
};

// Smallest N <= max_modulus whose per-residue fits validate on all held-out
// points of their class (classes fitted on lowest-q points, exactly as in
// polynomiality_probe). Under-populated candidates are skipped and reported,
// never guessed; refuted candidates are simply passed over.
QuasiProbe quasipoly_probe(const std::vector<std::pair<BigInt, BigInt>>& points, int max_modulus,
                           int degree_bound);

// Values file: header line "q,count", then one "<q>,<count>" row per point;
// '#' starts a comment.
std::vector<std::pair<BigInt, BigInt>> parse_points(const std::string& text);
std::vector<std::pair<BigInt, BigInt>> load_points(const std::string& path);

}  // namespace qforest
