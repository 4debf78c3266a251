#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qforest {

// Element of GF(p^k), identified by its code in 0..q-1. The code encodes the
// residue polynomial little-endian: code = sum_i c_i * p^i where c_i is the
// coefficient of x^i. For k == 1 the code is just the residue mod p.
struct Fe {
    uint32_t code = 0;
    friend bool operator==(Fe a, Fe b) { return a.code == b.code; }
    friend bool operator!=(Fe a, Fe b) { return a.code != b.code; }
};

// Arithmetic context for GF(p^k). For k > 1 the modulus is the
// lexicographically smallest monic irreducible polynomial of degree k over
// GF(p), coefficients compared low-degree first; irreducibility is verified
// by trial division against every monic polynomial of degree <= k/2.
//
// Contexts with q <= kTableCap precompute full op tables; larger fields use
// digitwise arithmetic per operation. Hard cap q <= 2^20.
class FieldCtx {
public:
    static constexpr uint64_t kTableCap = 1024;
    static constexpr uint64_t kMaxQ = uint64_t(1) << 20;

    static FieldCtx make(uint64_t p, unsigned k);
    // Accepts "p^k" or a bare integer that must be a prime power.
    static FieldCtx parse(const std::string& text);

    uint64_t p() const { return p_; }
    unsigned k() const { return k_; }
    uint64_t q() const { return q_; }
    // Little-endian coefficients, size k+1, monic; empty when k == 1.
    const std::vector<uint32_t>& modulus() const { return modulus_; }

    Fe zero() const { return {0}; }
    Fe one() const { return {1}; }
    Fe element(uint64_t code) const;   // bounds-checked
    std::vector<Fe> elements() const;  // all q elements in code order
    Fe from_int(int64_t v) const;      // embeds v mod p into the prime field

    Fe add(Fe a, Fe b) const {
        return tables_ ? Fe{add_tab_[size_t(a.code) * q_ + b.code]} : add_slow(a, b);
    }
    Fe sub(Fe a, Fe b) const {
        return tables_ ? Fe{sub_tab_[size_t(a.code) * q_ + b.code]} : sub_slow(a, b);
    }
    Fe mul(Fe a, Fe b) const {
        return tables_ ? Fe{mul_tab_[size_t(a.code) * q_ + b.code]} : mul_slow(a, b);
    }
    Fe neg(Fe a) const { return sub(zero(), a); }
    Fe inv(Fe a) const;  // throws std::domain_error on zero
    Fe div(Fe a, Fe b) const { return mul(a, inv(b)); }
    Fe pow(Fe a, uint64_t e) const;

    bool is_square(Fe a) const;
    // Smallest non-square by element code; q must be odd (in characteristic 2
    // every element is a square).
    Fe find_nonsquare() const;

    // Raw q*q lookup tables for hot loops; null when q > kTableCap.
    const uint32_t* mul_table() const { return tables_ ? mul_tab_.data() : nullptr; }
    const uint32_t* add_table() const { return tables_ ? add_tab_.data() : nullptr; }
    const uint32_t* sub_table() const { return tables_ ? sub_tab_.data() : nullptr; }

private:
    FieldCtx() = default;

    Fe add_slow(Fe a, Fe b) const;
    Fe sub_slow(Fe a, Fe b) const;
    Fe mul_slow(Fe a, Fe b) const;

    uint64_t p_ = 0, q_ = 0;
    unsigned k_ = 0;
    std::vector<uint32_t> modulus_;
    bool tables_ = false;
    std::vector<uint32_t> add_tab_, sub_tab_, mul_tab_, inv_tab_;
};

// Parses "p^k" or a bare prime power (auto-factored); returns {p, k}.
// Throws std::invalid_argument on malformed input or non-prime-power values.
std::pair<uint64_t, unsigned> parse_prime_power(const std::string& text);

}  // namespace qforest
