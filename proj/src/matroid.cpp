#include "qforest/matroid.hpp"

#include "qforest/detail/enumerate.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace qforest {
namespace {

using detail::guard_budget;
using detail::pow_double;
using detail::sharded_enumerate;

// Picks a random element of a random pair of bases and requires some swap
// from the other basis to land in the basis list again. A spot check, not a
// proof: 64 deterministic trials.
void spot_check_exchange(const Matroid& M) {
    if (M.bases.size() < 2) return;
    std::mt19937_64 rng(0x716672657374ULL);
    for (int trial = 0; trial < 64; ++trial) {
        uint32_t a = M.bases[rng() % M.bases.size()];
        uint32_t b = M.bases[rng() % M.bases.size()];
        uint32_t only_a = a & ~b;
        if (only_a == 0) continue;
        std::vector<int> picks;
        for (int e = 0; e < M.ground; ++e)
            if (only_a >> e & 1) picks.push_back(e);
        int x = picks[rng() % picks.size()];
        bool found = false;
        for (int y = 0; y < M.ground && !found; ++y)
            if (b >> y & 1 && !(a >> y & 1))
                found = std::binary_search(M.bases.begin(), M.bases.end(),
                                           (a & ~(uint32_t(1) << x)) | uint32_t(1) << y);
        if (!found) throw std::invalid_argument("basis exchange fails; not a matroid");
    }
}

Matroid finalize(Matroid M) {
    if (M.ground < 0 || M.ground > 32) throw std::invalid_argument("ground size must be in 0..32");
    if (M.bases.empty()) throw std::invalid_argument("matroid needs at least one basis");
    std::sort(M.bases.begin(), M.bases.end());
    if (std::adjacent_find(M.bases.begin(), M.bases.end()) != M.bases.end())
        throw std::invalid_argument("duplicate basis");
    M.rank = std::popcount(M.bases[0]);
    for (uint32_t b : M.bases)
        if (std::popcount(b) != M.rank) throw std::invalid_argument("bases of unequal size");
    spot_check_exchange(M);
    return M;
}

}  // namespace

Matroid uniform_matroid(int r, int n) {
    if (n < 1 || r < 0 || r > n) throw std::invalid_argument("uniform matroid needs 0 <= r <= n");
    Matroid M;
    M.ground = n;
    for (uint32_t mask = 0; mask < (uint32_t(1) << n); ++mask)
        if (std::popcount(mask) == r) M.bases.push_back(mask);
    return finalize(std::move(M));
}

Matroid r10_matroid() {
    std::vector<uint32_t> cols;
    for (int a = 0; a < 5; ++a)
        for (int b = a + 1; b < 5; ++b)
            for (int c = b + 1; c < 5; ++c)
                cols.push_back(uint32_t(1) << a | uint32_t(1) << b | uint32_t(1) << c);
    Matroid M;
    M.ground = 10;
    for (uint32_t mask = 0; mask < (uint32_t(1) << 10); ++mask) {
        if (std::popcount(mask) != 5) continue;
        // Columns are independent over GF(2) iff elimination finds 5 pivots;
        // pivot[bit] holds the reduced column whose leading bit is bit.
        uint32_t pivot[5] = {};
        int found = 0;
        for (int e = 0; e < 10; ++e) {
            if (!(mask >> e & 1)) continue;
            uint32_t v = cols[size_t(e)];
            for (int bit = 4; bit >= 0 && v; --bit) {
                if (!(v >> bit & 1)) continue;
                if (pivot[bit]) {
                    v ^= pivot[bit];
                } else {
                    pivot[bit] = v;
                    ++found;
                    v = 0;
                }
            }
        }
        if (found == 5) M.bases.push_back(mask);
    }
    return finalize(std::move(M));
}

Matroid graphic_matroid(const Graph& g) {
    auto trees = enumerate_trees(g);
    if (trees.empty()) throw std::invalid_argument("graphic matroid requires a connected graph");
    Matroid M;
    M.ground = g.m();
    for (const auto& tree : trees) {
        uint32_t mask = 0;
        for (int e : tree) mask |= uint32_t(1) << (e - 1);
        M.bases.push_back(mask);
    }
    return finalize(std::move(M));
}

Matroid matroid_from_bases(int ground, const std::vector<std::vector<int>>& bases) {
    Matroid M;
    M.ground = ground;
    for (const auto& basis : bases) {
        uint32_t mask = 0;
        for (int e : basis) {
            if (e < 1 || e > ground) throw std::invalid_argument("basis element out of range");
            if (mask >> (e - 1) & 1) throw std::invalid_argument("repeated element in basis");
            mask |= uint32_t(1) << (e - 1);
        }
        M.bases.push_back(mask);
    }
    return finalize(std::move(M));
}

Matroid parse_matroid(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    bool have_header = false;
    long ground = 0, rank = 0;
    std::vector<std::vector<int>> bases;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        if (!have_header) {
            if (!(ls >> ground >> rank)) {
                if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
                throw std::invalid_argument("line " + std::to_string(lineno) +
                                            ": expected \"ground rank\" header");
            }
            if (ground < 0 || ground > 32 || rank < 0 || rank > ground)
                throw std::invalid_argument("ground/rank out of range");
            have_header = true;
            continue;
        }
        std::vector<int> basis;
        long e;
        while (ls >> e) basis.push_back(int(e));
        if (!ls.eof())
            throw std::invalid_argument("line " + std::to_string(lineno) + ": bad element");
        if (basis.empty()) continue;
        if (long(basis.size()) != rank)
            throw std::invalid_argument("line " + std::to_string(lineno) +
                                        ": basis size differs from header rank");
        bases.push_back(std::move(basis));
    }
    if (!have_header) throw std::invalid_argument("missing \"ground rank\" header");
    return matroid_from_bases(int(ground), bases);
}

Matroid load_matroid(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_matroid(buf.str());
}

Fe eval_basis_poly(const Matroid& M, std::span<const Fe> x, const FieldCtx& ctx) {
    if (int(x.size()) != M.ground) throw std::invalid_argument("assignment size != ground size");
    Fe acc = ctx.zero();
    for (uint32_t basis : M.bases) {
        Fe prod = ctx.one();
        for (int e = 0; e < M.ground && prod.code != 0; ++e)
            if (basis >> e & 1) prod = ctx.mul(prod, x[size_t(e)]);
        acc = ctx.add(acc, prod);
    }
    return acc;
}

BigInt count_g_matroid(const Matroid& M, const FieldCtx& ctx, const CountOptions& opt) {
    int threads = resolve_threads(opt.threads);
    uint64_t q = ctx.q();
    if (M.ground == 0) return eval_basis_poly(M, {}, ctx).code != 0 ? 1 : 0;
    int s = M.ground;
    // Split on the last element: Q = A + B x_s with A, B prefix polynomials.
    std::vector<uint32_t> a_bases, b_bases;
    uint32_t last = uint32_t(1) << (s - 1);
    for (uint32_t basis : M.bases)
        (basis & last ? b_bases : a_bases).push_back(basis & ~last);
    guard_budget(pow_double(double(q), s - 1) *
                     (double(M.bases.size()) * M.rank + 8),
                 opt);
    struct State {
        uint64_t count = 0;
    };
    auto eval_split = [&](const std::vector<uint32_t>& bases, const uint32_t* d, uint32_t zmask) {
        Fe acc = ctx.zero();
        for (uint32_t basis : bases) {
            if (basis & zmask) continue;
            Fe prod = ctx.one();
            for (int e = 0; e < s - 1; ++e)
                if (basis >> e & 1) prod = ctx.mul(prod, Fe{d[e]});
            acc = ctx.add(acc, prod);
        }
        return acc;
    };
    auto states = sharded_enumerate<State>(
        s - 1, q, threads, State{}, [&](State& st, const uint32_t* d) {
            uint32_t zmask = 0;
            for (int e = 0; e < s - 1; ++e)
                if (d[e] == 0) zmask |= uint32_t(1) << e;
            Fe b = eval_split(b_bases, d, zmask);
            if (b.code != 0) {
                st.count += q - 1;
            } else if (eval_split(a_bases, d, zmask).code != 0) {
                st.count += q;
            }
        });
    BigInt total = 0;
    for (const auto& st : states) total += st.count;
    return total;
}

BigInt fourpoint_formula(const BigInt& q) {
    if (q < 2) throw std::invalid_argument("fourpoint_formula: q must be >= 2");
    BigInt r = q % 3;
    if (r == 1) return q * (q - 1) * (q * q - 1);
    if (r == 2) return q * (q - 1) * (q * q + 1);
    return q * q * q * (q - 1);
}

}  // namespace qforest
