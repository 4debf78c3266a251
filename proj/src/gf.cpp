#include "qforest/gf.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace qforest {
namespace {

using Poly = std::vector<uint32_t>;  // little-endian coefficients over GF(p)

bool is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Remainder of a mod b over GF(p); b must be monic and nonconstant.
Poly poly_rem(Poly a, const Poly& b, uint64_t p) {
    size_t db = b.size() - 1;
    while (a.size() > db) {
        uint64_t c = a.back();
        size_t shift = a.size() - 1 - db;
        if (c != 0)
            for (size_t j = 0; j < db; ++j)
                a[shift + j] = uint32_t((a[shift + j] + (p - c % p) * b[j]) % p);
        a.pop_back();
    }
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

bool is_irreducible(const Poly& f, uint64_t p) {
    size_t k = f.size() - 1;
    for (size_t d = 1; d <= k / 2; ++d) {
        uint64_t count = 1;
        for (size_t i = 0; i < d; ++i) count *= p;
        for (uint64_t code = 0; code < count; ++code) {
            Poly g(d + 1, 0);
            uint64_t c = code;
            for (size_t i = 0; i < d; ++i) {
                g[i] = uint32_t(c % p);
                c /= p;
            }
            g[d] = 1;
            if (poly_rem(f, g, p).empty()) return false;
        }
    }
    return true;
}

// Smallest monic irreducible of degree k, coefficients compared low-degree
// first.
Poly smallest_irreducible(uint64_t p, unsigned k) {
    uint64_t count = 1;
    for (unsigned i = 0; i < k; ++i) count *= p;
    for (uint64_t r = 0; r < count; ++r) {
        Poly f(k + 1, 0);
        uint64_t rest = r;
        uint64_t place = count / p;
        for (unsigned i = 0; i < k; ++i) {
            f[i] = uint32_t(rest / place);
            rest %= place;
            place /= p;
        }
        f[k] = 1;
        if (is_irreducible(f, p)) return f;
    }
    throw std::logic_error("no irreducible polynomial found");
}

}  // namespace

FieldCtx FieldCtx::make(uint64_t p, unsigned k) {
    if (!is_prime(p)) throw std::invalid_argument("field characteristic must be prime, got " + std::to_string(p));
    if (k == 0) throw std::invalid_argument("field extension degree must be positive");
    uint64_t q = 1;
    for (unsigned i = 0; i < k; ++i) {
        q *= p;
        if (q > kMaxQ) throw std::invalid_argument("field size exceeds supported maximum 2^20");
    }
    FieldCtx ctx;
    ctx.p_ = p;
    ctx.k_ = k;
    ctx.q_ = q;
    if (k > 1) ctx.modulus_ = smallest_irreducible(p, k);
    if (q <= kTableCap) {
        size_t n = size_t(q) * q;
        ctx.add_tab_.resize(n);
        ctx.sub_tab_.resize(n);
        ctx.mul_tab_.resize(n);
        ctx.inv_tab_.assign(q, 0);
        for (uint64_t a = 0; a < q; ++a)
            for (uint64_t b = 0; b < q; ++b) {
                Fe fa{uint32_t(a)}, fb{uint32_t(b)};
                ctx.add_tab_[a * q + b] = ctx.add_slow(fa, fb).code;
                ctx.sub_tab_[a * q + b] = ctx.sub_slow(fa, fb).code;
                uint32_t m = ctx.mul_slow(fa, fb).code;
                ctx.mul_tab_[a * q + b] = m;
                if (m == 1) ctx.inv_tab_[a] = uint32_t(b);
            }
        ctx.tables_ = true;
    }
    return ctx;
}

FieldCtx FieldCtx::parse(const std::string& text) {
    auto [p, k] = parse_prime_power(text);
    return make(p, k);
}

Fe FieldCtx::element(uint64_t code) const {
    if (code >= q_) throw std::invalid_argument("element code " + std::to_string(code) + " out of range for q=" + std::to_string(q_));
    return {uint32_t(code)};
}

std::vector<Fe> FieldCtx::elements() const {
    std::vector<Fe> out(q_);
    for (uint64_t i = 0; i < q_; ++i) out[i] = {uint32_t(i)};
    return out;
}

Fe FieldCtx::from_int(int64_t v) const {
    int64_t m = v % int64_t(p_);
    if (m < 0) m += int64_t(p_);
    return {uint32_t(m)};
}

Fe FieldCtx::add_slow(Fe a, Fe b) const {
    if (k_ == 1) return {uint32_t((uint64_t(a.code) + b.code) % p_)};
    uint32_t out = 0, place = 1;
    uint64_t x = a.code, y = b.code;
    for (unsigned i = 0; i < k_; ++i) {
        out += uint32_t((x % p_ + y % p_) % p_) * place;
        x /= p_;
        y /= p_;
        place = uint32_t(place * p_);
    }
    return {out};
}

Fe FieldCtx::sub_slow(Fe a, Fe b) const {
    if (k_ == 1) return {uint32_t((uint64_t(a.code) + p_ - b.code % p_) % p_)};
    uint32_t out = 0, place = 1;
    uint64_t x = a.code, y = b.code;
    for (unsigned i = 0; i < k_; ++i) {
        out += uint32_t((x % p_ + p_ - y % p_) % p_) * place;
        x /= p_;
        y /= p_;
        place = uint32_t(place * p_);
    }
    return {out};
}

Fe FieldCtx::mul_slow(Fe a, Fe b) const {
    if (k_ == 1) return {uint32_t(uint64_t(a.code) * b.code % p_)};
    uint32_t da[32], db[32];
    uint64_t x = a.code, y = b.code;
    for (unsigned i = 0; i < k_; ++i) {
        da[i] = uint32_t(x % p_);
        db[i] = uint32_t(y % p_);
        x /= p_;
        y /= p_;
    }
    uint64_t prod[63] = {0};
    for (unsigned i = 0; i < k_; ++i) {
        if (da[i] == 0) continue;
        for (unsigned j = 0; j < k_; ++j) prod[i + j] += uint64_t(da[i]) * db[j];
    }
    for (unsigned i = 2 * k_ - 2; i + 1 > k_; --i) {
        uint64_t c = prod[i] % p_;
        if (c != 0)
            for (unsigned j = 0; j < k_; ++j)
                prod[i - k_ + j] += c * (p_ - modulus_[j] % p_);
        prod[i] = 0;
    }
    uint32_t out = 0, place = 1;
    for (unsigned i = 0; i < k_; ++i) {
        out += uint32_t(prod[i] % p_) * place;
        place = uint32_t(place * p_);
    }
    return {out};
}

Fe FieldCtx::inv(Fe a) const {
    if (a.code == 0) throw std::domain_error("inverse of zero");
    if (tables_) return {inv_tab_[a.code]};
    return pow(a, q_ - 2);
}

Fe FieldCtx::pow(Fe a, uint64_t e) const {
    Fe r = one(), b = a;
    while (e) {
        if (e & 1) r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

bool FieldCtx::is_square(Fe a) const {
    if (a.code == 0 || p_ == 2) return true;
    return pow(a, (q_ - 1) / 2) == one();
}

Fe FieldCtx::find_nonsquare() const {
    if (p_ == 2) throw std::invalid_argument("every element of a characteristic-2 field is a square");
    for (uint64_t c = 2; c < q_; ++c)
        if (!is_square({uint32_t(c)})) return {uint32_t(c)};
    throw std::logic_error("no nonsquare found");
}

std::pair<uint64_t, unsigned> parse_prime_power(const std::string& text) {
    auto parse_u64 = [](const std::string& s) -> uint64_t {
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("malformed prime power '" + s + "'");
        if (s.size() > 12) throw std::invalid_argument("prime power out of range '" + s + "'");
        return std::stoull(s);
    };
    auto caret = text.find('^');
    if (caret != std::string::npos) {
        uint64_t p = parse_u64(text.substr(0, caret));
        uint64_t k = parse_u64(text.substr(caret + 1));
        if (!is_prime(p)) throw std::invalid_argument("base " + std::to_string(p) + " is not prime");
        if (k == 0 || k > 63) throw std::invalid_argument("exponent out of range");
        return {p, unsigned(k)};
    }
    uint64_t q = parse_u64(text);
    if (q < 2) throw std::invalid_argument(std::to_string(q) + " is not a prime power");
    uint64_t p = q;
    for (uint64_t d = 2; d * d <= q; ++d)
        if (q % d == 0) {
            p = d;
            break;
        }
    unsigned k = 0;
    uint64_t rest = q;
    while (rest % p == 0) {
        rest /= p;
        ++k;
    }
    if (rest != 1) throw std::invalid_argument(std::to_string(q) + " is not a prime power");
    return {p, k};
}

}  // namespace qforest
