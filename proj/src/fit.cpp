#include "qforest/fit.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qforest {
namespace {

using Points = std::vector<std::pair<BigInt, BigInt>>;

Points sorted_distinct(const Points& points) {
    Points out = points;
    std::sort(out.begin(), out.end());
    for (size_t i = 1; i < out.size(); ++i)
        if (out[i].first == out[i - 1].first)
            throw std::invalid_argument("duplicate abscissa " + out[i].first.str());
    return out;
}

void strip_trailing_zeros(RationalPoly& p) {
    while (!p.coeffs.empty() && p.coeffs.back() == 0) p.coeffs.pop_back();
}

RationalPoly fit_prefix(const Points& pts, size_t count) {
    return interpolate(Points(pts.begin(), pts.begin() + long(count)));
}

// Validates pts[from..] against the fit; returns the first mismatch.
std::optional<std::pair<BigInt, BigInt>> first_mismatch(const RationalPoly& poly,
                                                        const Points& pts, size_t from) {
    for (size_t i = from; i < pts.size(); ++i)
        if (poly.eval(BigRat(pts[i].first)) != BigRat(pts[i].second)) return pts[i];
    return std::nullopt;
}

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

BigRat RationalPoly::eval(const BigRat& x) const {
    BigRat acc = 0;
    for (size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
    return acc;
}

RationalPoly interpolate(const std::vector<std::pair<BigInt, BigInt>>& points) {
    if (points.empty()) throw std::invalid_argument("interpolate needs at least one point");
    Points pts = sorted_distinct(points);
    size_t n = pts.size();
    // Newton divided differences, then expansion to the monomial basis.
    std::vector<BigRat> xs(n), dd(n);
    for (size_t i = 0; i < n; ++i) {
        xs[i] = BigRat(pts[i].first);
        dd[i] = BigRat(pts[i].second);
    }
    for (size_t j = 1; j < n; ++j)
        for (size_t i = n; i-- > j;) dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j]);
    RationalPoly poly;
    poly.coeffs.assign(n, BigRat(0));
    std::vector<BigRat> basis{BigRat(1)};  // prod_{k<i} (x - x_k)
    for (size_t i = 0; i < n; ++i) {
        for (size_t k = 0; k < basis.size(); ++k) poly.coeffs[k] += dd[i] * basis[k];
        if (i + 1 < n) {  // basis *= (x - x_i)
            basis.push_back(BigRat(0));
            for (size_t k = basis.size(); k-- > 1;) basis[k] = basis[k - 1] - xs[i] * basis[k];
            basis[0] = -xs[i] * basis[0];
        }
    }
    strip_trailing_zeros(poly);
    return poly;
}

bool integer_coeff_check(const RationalPoly& poly) {
    for (const auto& c : poly.coeffs)
        if (boost::multiprecision::denominator(c) != 1) return false;
    return true;
}

PolyProbe polynomiality_probe(const std::vector<std::pair<BigInt, BigInt>>& points,
                              int degree_bound) {
    if (degree_bound < 0) throw std::invalid_argument("degree bound must be >= 0");
    Points pts = sorted_distinct(points);
    size_t need = size_t(degree_bound) + 1;
    if (pts.size() < need + 1)
        throw std::invalid_argument("polynomiality probe needs at least degree_bound+2 points");
    RationalPoly poly = fit_prefix(pts, need);
    PolyProbe out;
    if (auto bad = first_mismatch(poly, pts, need))
        out.witness = bad;
    else
        out.polynomial = std::move(poly);
    return out;
}

QuasiProbe quasipoly_probe(const std::vector<std::pair<BigInt, BigInt>>& points, int max_modulus,
                           int degree_bound) {
    if (degree_bound < 0) throw std::invalid_argument("degree bound must be >= 0");
    if (max_modulus < 1) throw std::invalid_argument("max modulus must be >= 1");
    Points pts = sorted_distinct(points);
    size_t need = size_t(degree_bound) + 1;
    QuasiProbe out;
    for (int N = 1; N <= max_modulus; ++N) {
        std::vector<Points> classes(static_cast<size_t>(N));
        for (const auto& p : pts) classes[size_t(BigInt(p.first % N))].push_back(p);
        bool sufficient = true;
        for (int r = 0; r < N; ++r)
            if (classes[size_t(r)].size() < need) {
                out.insufficiencies.push_back({N, r, int(classes[size_t(r)].size()), int(need)});
                sufficient = false;
            }
        if (!sufficient) continue;
        Quasipolynomial cand;
        cand.modulus = N;
        bool ok = true;
        for (int r = 0; r < N && ok; ++r) {
            RationalPoly branch = fit_prefix(classes[size_t(r)], need);
            ok = !first_mismatch(branch, classes[size_t(r)], need).has_value();
            cand.branches.push_back(std::move(branch));
        }
        if (ok) {
            out.result = std::move(cand);
            return out;
        }
    }
    return out;
}

std::vector<std::pair<BigInt, BigInt>> parse_points(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    bool header_seen = false;
    Points out;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        size_t comma = line.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("line " + std::to_string(lineno) + ": expected 'q,count'");
        std::string left = trim(line.substr(0, comma));
        std::string right = trim(line.substr(comma + 1));
        if (!header_seen) {
            if (left != "q" || right != "count")
                throw std::invalid_argument("line " + std::to_string(lineno) +
                                            ": header must be 'q,count'");
            header_seen = true;
            continue;
        }
        try {
            out.emplace_back(BigInt(left), BigInt(right));
        } catch (const std::exception&) {
            throw std::invalid_argument("line " + std::to_string(lineno) + ": bad integer row");
        }
    }
    if (!header_seen) throw std::invalid_argument("missing 'q,count' header");
    return out;
}

std::vector<std::pair<BigInt, BigInt>> load_points(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open values file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_points(buf.str());
}

}  // namespace qforest
