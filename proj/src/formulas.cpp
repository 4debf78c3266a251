#include "qforest/formulas.hpp"

namespace qforest {
namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}

// Product (q^1 - 1)(q^3 - 1)...(q^{2t-1} - 1); empty for t <= 0.
BigInt odd_exponent_product(int t, const BigInt& q) {
    BigInt r = 1;
    for (int i = 1; i <= t; ++i) r *= bi_pow(q, uint64_t(2 * i - 1)) - 1;
    return r;
}

// Product (q^2 - 1)(q^4 - 1)...(q^{2t} - 1); empty for t <= 0.
BigInt even_exponent_product(int t, const BigInt& q) {
    BigInt r = 1;
    for (int i = 1; i <= t; ++i) r *= bi_pow(q, uint64_t(2 * i)) - 1;
    return r;
}

// q^e for possibly negative e, as an exact rational.
BigRat q_pow(const BigInt& q, int e) {
    if (e >= 0) return BigRat(bi_pow(q, uint64_t(e)));
    return BigRat(1, bi_pow(q, uint64_t(-e)));
}

// prefactor q^E times Pi_{i=1..t} (q^{2i-1} - 1) times sum of c_j q^{e_j},
// where the e_j may be negative; the total must come out a nonnegative
// integer or the transcription is wrong.
BigInt rational_to_integer(const BigRat& val, const char* who) {
    if (boost::multiprecision::denominator(val) != 1)
        throw std::logic_error(std::string(who) + ": expression did not reduce to an integer");
    return boost::multiprecision::numerator(val);
}

BigInt laurent_family(const BigInt& q, int E, int t,
                      const std::vector<std::pair<int, int>>& terms) {
    BigRat sum = 0;
    for (auto [c, e] : terms) sum += BigRat(c) * q_pow(q, e);
    BigRat total = BigRat(bi_pow(q, uint64_t(E)) * odd_exponent_product(t, q)) * sum;
    return rational_to_integer(total, "conjecture_knk");
}

}  // namespace

BigInt g_complete(int n, const BigInt& q) {
    require(n >= 1, "g_complete: n must be >= 1");
    int m = n / 2;
    uint64_t pre = n % 2 == 0 ? uint64_t(m) * uint64_t(m - 1) : uint64_t(m) * uint64_t(m + 1);
    return bi_pow(q, pre) * odd_exponent_product(m, q);
}

BigInt macwilliams_h(int n, int r, const BigInt& q) {
    require(n >= 0 && r >= 0, "macwilliams_h: n, r must be >= 0");
    if (r > n) return 0;
    int s = r / 2;
    BigRat val = 1;
    for (int i = 1; i <= s; ++i) {
        BigInt p = bi_pow(q, uint64_t(2 * i));
        val *= BigRat(p, p - 1);
    }
    int top = r % 2 == 0 ? 2 * s - 1 : 2 * s;
    for (int i = 0; i <= top; ++i) val *= BigRat(bi_pow(q, uint64_t(n - i)) - 1);
    return rational_to_integer(val, "macwilliams_h");
}

std::vector<BigInt> apex_step(const std::vector<BigInt>& h, int n_G, const BigInt& q) {
    require(n_G >= 1 && h.size() == size_t(n_G), "apex_step: profile length must equal n_G");
    BigInt qn = bi_pow(q, uint64_t(n_G));
    std::vector<BigInt> out(size_t(n_G) + 1, 0);
    for (int r = 0; r <= n_G; ++r) {
        BigInt v = 0;
        if (r < n_G) v += bi_pow(q, uint64_t(r)) * h[size_t(r)];
        if (r >= 1 && r - 1 < n_G) v += (q - 1) * bi_pow(q, uint64_t(r - 1)) * h[size_t(r - 1)];
        if (r >= 2) v += (qn - bi_pow(q, uint64_t(r - 1))) * h[size_t(r - 2)];
        out[size_t(r)] = v;
    }
    return out;
}

std::vector<BigInt> macwilliams_step(const std::vector<BigInt>& h, int n, const BigInt& q) {
    require(h.size() == size_t(n) + 1, "macwilliams_step: profile length must be n+1");
    return apex_step(h, n + 1, q);
}

BigInt g_complete_minus_clique(int n, int k, const BigInt& q) {
    require(n > k && k >= 1, "g_complete_minus_clique: need n > k >= 1");
    std::vector<BigInt> h(size_t(k) + 1);
    for (int r = 0; r <= k; ++r) h[size_t(r)] = binomial(k, r) * bi_pow(q - 1, uint64_t(r));
    for (int v = k + 1; v < n; ++v) h = apex_step(h, v, q);
    return h[size_t(n) - 1];
}

BigInt conjecture_knk(int n, int k, const BigInt& q) {
    require(k >= 3 && k <= 5, "conjecture_knk: k must be 3, 4 or 5");
    require(n > k, "conjecture_knk: need n > k");
    bool even = n % 2 == 0;
    int m = n / 2;
    // Validated minimum m per family; below it the displayed products and
    // polynomial parts do not pin down a value.
    int min_m = even ? 3 : (k == 5 ? 3 : 2);
    if (m < min_m)
        throw BoundaryAmbiguousError("conjecture_knk: boundary-ambiguous below " +
                                     std::string(even ? "K_{2m}" : "K_{2m+1}") + " - K_" +
                                     std::to_string(k) + " with m = " + std::to_string(min_m));
    int E_even = m * (m - 1);
    if (even && k == 3)
        return laurent_family(q, E_even, m - 2,
                              {{1, 4 * m - 7}, {-4, 2 * m - 4}, {3, 2 * m - 5}, {-1, 2 * m - 6}, {1, 0}});
    if (!even && k == 3)
        return laurent_family(q, m * m + m - 3, m - 1, {{1, 2 * m - 1}, {-3, 1}, {2, 0}});
    if (even && k == 4)
        return laurent_family(q, E_even, m - 2,
                              {{1, 4 * m - 10}, {-7, 2 * m - 6}, {8, 2 * m - 7}, {-3, 2 * m - 8}, {1, 0}});
    if (!even && k == 4)
        return laurent_family(q, m * m + m - 4, m - 2,
                              {{1, 4 * m - 6},
                               {-8, 2 * m - 3},
                               {9, 2 * m - 4},
                               {-4, 2 * m - 5},
                               {1, 2 * m - 6},
                               {4, 1},
                               {-3, 0}});
    if (even && k == 5)
        return laurent_family(q, E_even, m - 3,
                              {{1, 6 * m - 19},
                               {-16, 4 * m - 14},
                               {25, 4 * m - 15},
                               {-16, 4 * m - 16},
                               {5, 4 * m - 17},
                               {-1, 4 * m - 18},
                               {1, 2 * m - 6},
                               {11, 2 * m - 8},
                               {-15, 2 * m - 9},
                               {6, 2 * m - 10},
                               {-1, 0}});
    return laurent_family(q, m * m + m - 5, m - 2,
                          {{1, 4 * m - 9},
                           {-15, 2 * m - 5},
                           {24, 2 * m - 6},
                           {-15, 2 * m - 7},
                           {4, 2 * m - 8},
                           {5, 1},
                           {-4, 0}});
}

BigInt g_minus_star(int n, int s, const BigInt& q) {
    require(n >= 3, "g_minus_star: n must be >= 3");
    require(s >= 1 && s <= n - 2, "g_minus_star: need 1 <= s <= n-2");
    int m = n / 2;
    if (n % 2 == 0)
        return bi_pow(q, uint64_t(m) * uint64_t(m - 1)) * odd_exponent_product(m - 1, q) *
               (bi_pow(q, uint64_t(2 * m - 1 - s)) - 1);
    return bi_pow(q, uint64_t(m * m + m - s - 1)) * odd_exponent_product(m - 1, q) *
           (bi_pow(q, uint64_t(2 * m)) - bi_pow(q, uint64_t(s)) - q + 1);
}

BigInt cycle_counts(int n, const BigInt& q, CountKind kind) {
    require(n >= 2, "cycle_counts: n must be >= 2");
    if (kind == CountKind::f) return bi_pow(q, uint64_t(n) - 1) * (q - 1);
    BigInt g = BigInt(n) * bi_pow(q - 1, uint64_t(n) - 1);
    for (int i = 1; i <= n; ++i) {
        BigInt term = bi_pow(q - 1, uint64_t(i));
        g += (n - i) % 2 == 0 ? term : -term;
    }
    return g;
}

BigInt group_order(GroupKind kind, int n, const BigInt& q) {
    require(n >= 1, "group_order: n must be >= 1");
    require(q >= 2, "group_order: q must be >= 2");
    if (kind == GroupKind::gl) {
        BigInt qn = bi_pow(q, uint64_t(n)), r = 1;
        for (int i = 0; i < n; ++i) r *= qn - bi_pow(q, uint64_t(i));
        return r;
    }
    bool q_even = q % 2 == 0;
    int m = n / 2;
    if (kind == GroupKind::omega_plain) {
        require(q_even && n % 2 == 1, "group_order: omega_plain needs q even, n odd");
        return bi_pow(q, uint64_t(m) * uint64_t(m)) * even_exponent_product(m, q);
    }
    bool plus = kind == GroupKind::omega_plus;
    if (q_even) {
        require(n % 2 == 0, "group_order: q even with odd n has only omega_plain");
        return bi_pow(q, uint64_t(m) * uint64_t(m)) * even_exponent_product(plus ? m - 1 : m, q);
    }
    if (n % 2 == 1) return 2 * bi_pow(q, uint64_t(m) * uint64_t(m)) * even_exponent_product(m, q);
    BigInt qm = bi_pow(q, uint64_t(m));
    BigInt sign = 1;
    if (q % 4 != 1 && m % 2 == 1) sign = -1;
    BigInt middle = plus ? BigInt(qm - sign) : BigInt(qm + sign);
    return 2 * bi_pow(q, uint64_t(m) * uint64_t(m - 1)) * middle * even_exponent_product(m - 1, q);
}

BigInt isotropic_formula(int n, const BigInt& q, FormKind form) {
    require(n >= 1, "isotropic_formula: n must be >= 1");
    require(q >= 2, "isotropic_formula: q must be >= 2");
    bool q_even = q % 2 == 0;
    if (q_even) {
        if (n % 2 == 1) {
            require(form == FormKind::plus, "isotropic_formula: q even, n odd has one form");
            return bi_pow(q, uint64_t(n) - 1);
        }
        return form == FormKind::plus ? bi_pow(q, uint64_t(n) - 1) : bi_pow(q, uint64_t(n));
    }
    if (n % 2 == 1) return bi_pow(q, uint64_t(n) - 1);
    // The identity form contains a hyperbolic pair iff -1 ^ (n/2) is a square.
    int sign = (q % 4 == 1 || n % 4 == 0) ? 1 : -1;
    if (form == FormKind::minus) sign = -sign;
    BigInt swing = bi_pow(q, uint64_t(n) / 2) - bi_pow(q, uint64_t(n) / 2 - 1);
    return bi_pow(q, uint64_t(n) - 1) + sign * swing;
}

BigInt two_cut_rhs(const BigInt& g1, const BigInt& g2, const BigInt& g_contract1,
                   const BigInt& g_contract2, const BigInt& q) {
    return q * g1 * g2 + (q - 2) * g_contract1 + (q - 1) * g_contract2;
}

}  // namespace qforest
