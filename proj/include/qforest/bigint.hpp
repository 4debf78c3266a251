#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>

namespace qforest {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline BigInt bi_pow(const BigInt& base, uint64_t e) {
    BigInt r = 1, b = base;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

inline BigInt binomial(int64_t n, int64_t r) {
    if (r < 0 || r > n) return 0;
    BigInt num = 1;
    for (int64_t i = 0; i < r; ++i) num = num * (n - i) / (i + 1);
    return num;
}

}  // namespace qforest
