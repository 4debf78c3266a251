#include "qforest/fit.hpp"

#include "qforest/counting.hpp"
#include "qforest/formulas.hpp"
#include "qforest/graph.hpp"

#include "doctest.h"

#include <algorithm>
#include <random>

using namespace qforest;

namespace {

using Points = std::vector<std::pair<BigInt, BigInt>>;

RationalPoly poly_from_ints(const std::vector<long>& ascending) {
    RationalPoly p;
    for (long c : ascending) p.coeffs.emplace_back(c);
    while (!p.coeffs.empty() && p.coeffs.back() == 0) p.coeffs.pop_back();
    return p;
}

}  // namespace

TEST_CASE("interpolate recovers forced polynomials") {
    CHECK(interpolate({{2, 2}, {3, 6}, {4, 12}}) == poly_from_ints({0, -1, 1}));
    CHECK(interpolate({{2, 7}}) == poly_from_ints({7}));
    CHECK(interpolate({{1, 5}, {2, 5}, {9, 5}}) == poly_from_ints({5}));
    CHECK(interpolate({{0, 0}, {1, 0}, {2, 0}}).coeffs.empty());
    CHECK_THROWS_AS(interpolate({}), std::invalid_argument);
    CHECK_THROWS_AS(interpolate({{2, 1}, {2, 2}}), std::invalid_argument);
}

TEST_CASE("interpolate reproduces every input point") {
    std::mt19937_64 rng(20240814);
    for (int trial = 0; trial < 25; ++trial) {
        Points pts;
        std::vector<long> xs{-8, -3, -1, 0, 2, 5, 7, 11, 13};
        std::shuffle(xs.begin(), xs.end(), rng);
        size_t n = 1 + rng() % 8;
        for (size_t i = 0; i < n; ++i)
            pts.emplace_back(xs[i], long(rng() % 2001) - 1000);
        RationalPoly p = interpolate(pts);
        CHECK(p.degree() < int(n));
        for (const auto& [x, y] : pts) CHECK(p.eval(BigRat(x)) == BigRat(y));
    }
}

TEST_CASE("polynomiality_probe on a genuine polynomial sequence") {
    Points pts;
    for (uint64_t q : {2, 3, 4, 5, 7, 8})
        pts.emplace_back(q, count_nonvanishing(cycle_graph(4), CountKind::g,
                                               FieldCtx::parse(std::to_string(q))));
    auto probe = polynomiality_probe(pts, 4);
    REQUIRE(probe.polynomial.has_value());
    CHECK(!probe.witness.has_value());
    // q(q-1)(q^2-2) expanded.
    CHECK(*probe.polynomial == poly_from_ints({0, 2, -2, -1, 1}));
    CHECK(integer_coeff_check(*probe.polynomial));

    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 5; ++trial) {
        std::shuffle(pts.begin(), pts.end(), rng);
        auto again = polynomiality_probe(pts, 4);
        REQUIRE(again.polynomial.has_value());
        CHECK(*again.polynomial == *probe.polynomial);
    }
}

TEST_CASE("polynomiality_probe flags the first mismatching point") {
    // Branch values of the four-point-line count; no single polynomial fits.
    Points pts{{2, 10}, {3, 54}, {4, 180}, {5, 520}, {7, 2016}, {9, 5832}};
    auto probe = polynomiality_probe(pts, 4);
    CHECK(!probe.polynomial.has_value());
    REQUIRE(probe.witness.has_value());
    CHECK(probe.witness->first == 9);
    CHECK(probe.witness->second == 5832);
    CHECK_THROWS_AS(polynomiality_probe(Points{{2, 1}, {3, 1}}, 4), std::invalid_argument);
}

TEST_CASE("probe accepts constant sequences") {
    Points pts{{2, 9}, {3, 9}, {5, 9}, {7, 9}};
    auto probe = polynomiality_probe(pts, 1);
    REQUIRE(probe.polynomial.has_value());
    CHECK(probe.polynomial->degree() == 0);
}

TEST_CASE("quasipoly_probe finds the smallest certified modulus") {
    // f(q) = q^2 on even q, q on odd q.
    Points pts;
    for (long q = 1; q <= 12; ++q) pts.emplace_back(q, q % 2 == 0 ? q * q : q);
    auto probe = quasipoly_probe(pts, 4, 2);
    REQUIRE(probe.result.has_value());
    CHECK(probe.result->modulus == 2);
    CHECK(probe.result->branches[0] == poly_from_ints({0, 0, 1}));
    CHECK(probe.result->branches[1] == poly_from_ints({0, 1}));
}

TEST_CASE("quasipoly_probe returns modulus 1 on plain polynomials") {
    Points pts;
    for (long q = 2; q <= 9; ++q) pts.emplace_back(q, q * q * q);
    auto probe = quasipoly_probe(pts, 3, 3);
    REQUIRE(probe.result.has_value());
    CHECK(probe.result->modulus == 1);
    CHECK(probe.result->branches[0] == poly_from_ints({0, 0, 0, 1}));
}

TEST_CASE("quasipoly_probe reports class gaps instead of guessing") {
    Points pts{{2, 1}, {3, 2}, {4, 3}, {5, 4}, {7, 5}, {8, 6}, {9, 7}};
    auto probe = quasipoly_probe(pts, 3, 21);
    CHECK(!probe.result.has_value());
    REQUIRE(!probe.insufficiencies.empty());
    CHECK(probe.insufficiencies[0].modulus == 1);
    CHECK(probe.insufficiencies[0].have == 7);
    CHECK(probe.insufficiencies[0].need == 22);
}

TEST_CASE("integer_coeff_check") {
    CHECK(integer_coeff_check(poly_from_ints({0, -1, 1})));
    RationalPoly half;
    half.coeffs = {BigRat(0), BigRat(0), BigRat(1, 2)};
    CHECK(!integer_coeff_check(half));
    CHECK(integer_coeff_check(RationalPoly{}));
}

TEST_CASE("fitted closed-form sequences have integer coefficients") {
    std::vector<uint64_t> primepows{2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27};
    auto take = [&](int count, auto&& value) {
        Points pts;
        for (int i = 0; i < count; ++i) pts.emplace_back(primepows[size_t(i)], value(primepows[size_t(i)]));
        return pts;
    };
    auto poly = interpolate(take(11, [](uint64_t q) { return g_complete(5, q); }));
    CHECK(poly.degree() == 10);
    CHECK(integer_coeff_check(poly));
    poly = interpolate(take(9, [](uint64_t q) { return g_minus_star(5, 1, q); }));
    CHECK(poly.degree() == 9 - 1);
    CHECK(integer_coeff_check(poly));
    poly = interpolate(take(7, [](uint64_t q) { return cycle_counts(6, q, CountKind::g); }));
    CHECK(integer_coeff_check(poly));
}

TEST_CASE("values file parsing") {
    auto pts = parse_points("# counts\nq,count\n2,4\n 3 , 42 \n# done\n");
    REQUIRE(pts.size() == 2);
    CHECK(pts[0] == std::pair<BigInt, BigInt>{2, 4});
    CHECK(pts[1] == std::pair<BigInt, BigInt>{3, 42});
    CHECK_THROWS_AS(parse_points("2,4\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_points("q,count\n2;4\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_points("q,count\n2,fish\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_points(""), std::invalid_argument);
}
