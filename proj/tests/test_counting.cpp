#include "qforest/counting.hpp"

#include "doctest.h"

#include <random>
#include <stdexcept>

using namespace qforest;

namespace {

Graph random_connected_simple(std::mt19937_64& rng, int max_n) {
    std::uniform_int_distribution<int> nd(2, max_n);
    int n = nd(rng);
    Graph g{n, {}};
    std::set<std::pair<int, int>> used;
    for (int v = 2; v <= n; ++v) {
        std::uniform_int_distribution<int> ud(1, v - 1);
        int u = ud(rng);
        g.edges.emplace_back(u, v);
        used.insert({u, v});
    }
    std::uniform_int_distribution<int> extra(0, n), vd(1, n);
    for (int i = extra(rng); i > 0; --i) {
        int u = vd(rng), v = vd(rng);
        if (u == v) continue;
        auto key = std::minmax(u, v);
        if (used.insert(key).second) g.edges.emplace_back(key.first, key.second);
    }
    return g;
}

// Independent oracle: enumerate every assignment and classify by its exact
// zero set, evaluating the requested polynomial directly.
BigInt oracle_exact_zero_count(const Graph& g, const std::set<int>& S, CountKind kind,
                               const FieldCtx& ctx) {
    auto trees = enumerate_trees(g);
    std::vector<Fe> x(size_t(g.m()), ctx.zero());
    BigInt count = 0;
    auto rec = [&](auto&& self, int e) -> void {
        if (e > g.m()) {
            for (int i = 1; i <= g.m(); ++i)
                if ((x[size_t(i) - 1].code == 0) != (S.count(i) > 0)) return;
            Fe val = eval_tree_poly(trees, g.m(), x,
                                    kind == CountKind::g ? TreePolyKind::tree : TreePolyKind::complement, ctx);
            if (val.code != 0) ++count;
            return;
        }
        for (uint64_t c = 0; c < ctx.q(); ++c) {
            x[size_t(e) - 1] = Fe{uint32_t(c)};
            self(self, e + 1);
        }
    };
    rec(rec, 1);
    return count;
}

SupportPattern offdiag_pattern(int n) {
    SupportPattern pat;
    pat.n = n;
    for (int r = 1; r <= n; ++r)
        for (int c = 1; c <= n; ++c)
            if (r != c) pat.cells.emplace_back(r, c);
    return pat;
}

}  // namespace

TEST_CASE("nonvanishing counts match hand-enumerated values") {
    auto f2 = FieldCtx::make(2, 1);
    auto f3 = FieldCtx::make(3, 1);
    CHECK(count_nonvanishing(complete_graph(3), CountKind::g, f2) == 4);
    CHECK(count_nonvanishing(cycle_graph(4), CountKind::g, f2) == 4);
    CHECK(count_nonvanishing(cycle_graph(4), CountKind::g, f3) == 42);
    CHECK(count_nonvanishing(cycle_graph(4), CountKind::f, f2) == 8);
    CHECK(count_nonvanishing(complete_graph(4), CountKind::g, f2) == 28);
    CHECK(count_nonvanishing(complete_graph(5), CountKind::g, f2) == 448);
    CHECK(count_nonvanishing(complete_graph(4), CountKind::g, f3) == 468);
    CHECK(count_nonvanishing(cycle_graph(2), CountKind::g, f3) == 6);  // q(q-1)
}

TEST_CASE("degenerate graphs") {
    auto f3 = FieldCtx::make(3, 1);
    Graph disc{4, {{1, 2}, {3, 4}}};
    CHECK(count_nonvanishing(disc, CountKind::g, f3) == 0);
    CHECK(count_nonvanishing(disc, CountKind::f, f3) == 0);
    Graph single{1, {}};
    CHECK(count_nonvanishing(single, CountKind::g, f3) == 1);
    CHECK(count_nonvanishing(single, CountKind::f, f3) == 1);
    Graph loop1{1, {{1, 1}}};
    CHECK(count_nonvanishing(loop1, CountKind::g, f3) == 3);   // free loop scales by q
    CHECK(count_nonvanishing(loop1, CountKind::f, f3) == 2);   // complement keeps the loop variable
}

TEST_CASE("loop and doubled-edge scaling") {
    std::mt19937_64 rng(20240814);
    auto f2 = FieldCtx::make(2, 1);
    auto f3 = FieldCtx::make(3, 1);
    for (int trial = 0; trial < 8; ++trial) {
        Graph g = random_connected_simple(rng, 4);
        for (const auto& ctx : {f2, f3}) {
            BigInt base = count_nonvanishing(g, CountKind::g, ctx);
            Graph with_loop = g;
            with_loop.edges.emplace_back(1, 1);
            CHECK(count_nonvanishing(with_loop, CountKind::g, ctx) == BigInt(ctx.q()) * base);
            Graph doubled = g;
            doubled.edges.push_back(g.edges[0]);
            CHECK(count_nonvanishing(doubled, CountKind::g, ctx) == BigInt(ctx.q()) * base);
        }
    }
}

TEST_CASE("root choice does not change det-nonvanishing counts") {
    std::mt19937_64 rng(99);
    auto f2 = FieldCtx::make(2, 1);
    auto f3 = FieldCtx::make(3, 1);
    for (int trial = 0; trial < 6; ++trial) {
        Graph g = random_connected_simple(rng, 5);
        for (const auto& ctx : {f2, f3}) {
            BigInt expected = count_nonvanishing(g, CountKind::g, ctx);
            for (int root = 1; root <= g.n; ++root) {
                RankProfile prof = rank_profile(g, root, ctx);
                CHECK(prof.counts[size_t(g.n) - 1] == expected);
            }
        }
    }
}

TEST_CASE("zero-set counts: at-least mode equals deletion/contraction counts") {
    std::mt19937_64 rng(7);
    auto f2 = FieldCtx::make(2, 1);
    auto f3 = FieldCtx::make(3, 1);
    CHECK(count_zero_set(cycle_graph(4), {1}, CountKind::g, ZeroMode::at_least, f3) == 8);
    for (int trial = 0; trial < 10; ++trial) {
        Graph g = random_connected_simple(rng, 5);
        std::uniform_int_distribution<int> ed(1, g.m());
        std::set<int> S{ed(rng)};
        if (g.m() > 2) S.insert(ed(rng));
        for (const auto& ctx : {f2, f3}) {
            CHECK(count_zero_set(g, S, CountKind::g, ZeroMode::at_least, ctx) ==
                  count_nonvanishing(minor(g, S, {}), CountKind::g, ctx));
            // Contracting an acyclic zero set preserves the complement count.
            Graph contracted = minor(g, {}, S);
            BigInt lhs = count_zero_set(g, S, CountKind::f, ZeroMode::at_least, ctx);
            if (spanning_tree_count(minor(g, {}, S)) != 0 && int(S.size()) == g.n - contracted.n)
                CHECK(lhs == count_nonvanishing(contracted, CountKind::f, ctx));
        }
    }
    // A zero set containing a cycle kills every complement monomial.
    CHECK(count_zero_set(complete_graph(3), {1, 2, 3}, CountKind::f, ZeroMode::at_least, f3) == 0);
}

TEST_CASE("zero-set counts: exact mode matches direct classification") {
    std::mt19937_64 rng(11);
    auto f2 = FieldCtx::make(2, 1);
    auto f3 = FieldCtx::make(3, 1);
    for (int trial = 0; trial < 8; ++trial) {
        Graph g = random_connected_simple(rng, 4);
        if (g.m() > 5) continue;
        std::set<int> S;
        std::uniform_int_distribution<int> ed(1, g.m());
        if (trial % 2) S.insert(ed(rng));
        for (const auto& ctx : {f2, f3})
            for (CountKind kind : {CountKind::g, CountKind::f})
                CHECK(count_zero_set(g, S, kind, ZeroMode::exact, ctx) ==
                      oracle_exact_zero_count(g, S, kind, ctx));
    }
    // Nowhere-zero counts agree between the two polynomials.
    for (const auto& ctx : {f2, f3})
        for (const Graph& g : {cycle_graph(4), complete_graph(4)})
            CHECK(count_zero_set(g, {}, CountKind::f, ZeroMode::exact, ctx) ==
                  count_zero_set(g, {}, CountKind::g, ZeroMode::exact, ctx));
}

TEST_CASE("rank profiles") {
    auto f2 = FieldCtx::make(2, 1);
    RankProfile prof = rank_profile(complete_minus_clique(4, 3), 4, f2);
    REQUIRE(prof.counts.size() == 4);
    CHECK(prof.counts == std::vector<BigInt>{1, 3, 3, 1});
    Graph loopy{2, {{1, 1}, {1, 2}}};
    CHECK_THROWS_AS(rank_profile(loopy, 1, f2), std::invalid_argument);
}

TEST_CASE("symmetric rank census small cases") {
    auto f2 = FieldCtx::make(2, 1);
    CHECK(sym_rank_census(2, f2).counts == std::vector<BigInt>{1, 3, 4});
    CHECK(sym_rank_census(3, f2).counts == std::vector<BigInt>{1, 7, 28, 28});
}

TEST_CASE("support counting, brute and span_dp") {
    auto f2 = FieldCtx::make(2, 1);
    auto f3 = FieldCtx::make(3, 1);
    CHECK(count_support_invertible(SupportPattern::full(2), f2, SupportAlgo::brute) == 6);
    CHECK(count_support_invertible(SupportPattern::full(2), f2, SupportAlgo::span_dp) == 6);

    SupportPattern diag;
    diag.n = 3;
    diag.cells = {{1, 1}, {2, 2}, {3, 3}};
    CHECK(count_support_invertible(diag, f3, SupportAlgo::brute) == 8);
    CHECK(count_support_invertible(diag, f3, SupportAlgo::span_dp) == 8);

    SupportPattern fano = SupportPattern::fano();
    CHECK(fano.cells.size() == 21);
    CHECK(count_support_invertible(fano, f2, SupportAlgo::brute) ==
          count_support_invertible(fano, f2, SupportAlgo::span_dp));

    std::mt19937_64 rng(20240814);
    for (int trial = 0; trial < 24; ++trial) {
        SupportPattern pat;
        pat.n = 3 + trial % 2;
        std::uniform_int_distribution<int> coin(0, 2);
        for (int r = 1; r <= pat.n; ++r)
            for (int c = 1; c <= pat.n; ++c)
                if (coin(rng) > 0) pat.cells.emplace_back(r, c);
        const auto& ctx = trial % 3 == 0 ? f3 : f2;
        CHECK(count_support_invertible(pat, ctx, SupportAlgo::brute) ==
              count_support_invertible(pat, ctx, SupportAlgo::span_dp));
    }
}

TEST_CASE("symmetric support counting") {
    auto f2 = FieldCtx::make(2, 1);
    auto f3 = FieldCtx::make(3, 1);
    auto f4 = FieldCtx::make(2, 2);
    CHECK(count_support_symmetric(SupportPattern::full(3), f2) == 28);
    CHECK(count_support_symmetric(offdiag_pattern(3), f2) == 0);
    CHECK(count_support_symmetric(offdiag_pattern(3), f4) == 0);
    CHECK(count_support_symmetric(offdiag_pattern(3), f3) == 8);

    SupportPattern asym;
    asym.n = 2;
    asym.cells = {{1, 2}};
    CHECK_THROWS_AS(count_support_symmetric(asym, f2), std::invalid_argument);
}

TEST_CASE("block-embedding reduces asymmetric support counts to symmetric ones") {
    std::mt19937_64 rng(5);
    auto f2 = FieldCtx::make(2, 1);
    auto f3 = FieldCtx::make(3, 1);
    for (int trial = 0; trial < 6; ++trial) {
        int n = 2 + trial % 2;
        SupportPattern t;
        t.n = n;
        std::uniform_int_distribution<int> coin(0, 1);
        for (int r = 1; r <= n; ++r)
            for (int c = 1; c <= n; ++c)
                if (coin(rng)) t.cells.emplace_back(r, c);
        SupportPattern block;
        block.n = 2 * n;
        for (auto [r, c] : t.cells) {
            block.cells.emplace_back(r, c + n);
            block.cells.emplace_back(c + n, r);
        }
        std::sort(block.cells.begin(), block.cells.end());
        for (const auto& ctx : {f2, f3})
            CHECK(count_support_symmetric(block, ctx) ==
                  count_support_invertible(t, ctx, SupportAlgo::brute));
    }
}

TEST_CASE("ordered basis counts for tiny graphs") {
    auto f2 = FieldCtx::make(2, 1);
    auto f3 = FieldCtx::make(3, 1);
    Graph path{3, {{1, 3}, {2, 3}}};  // apex 3; constraint <u_1,u_2> = 0
    CHECK(ordered_basis_count(path, FormKind::plus, f2) == 2);
    CHECK(ordered_basis_count(path, FormKind::minus, f2) == 0);
    CHECK(ordered_basis_count(path, FormKind::plus, f3) == 16);
    CHECK(ordered_basis_count(path, FormKind::minus, f3) == 8);
    // No constraints: every ordered basis counts.
    CHECK(ordered_basis_count(complete_graph(3), FormKind::plus, f2) == 6);

    Graph no_apex{3, {{1, 2}}};
    CHECK_THROWS_AS(ordered_basis_count(no_apex, FormKind::plus, f2), std::invalid_argument);
}

TEST_CASE("isotropic vector counts") {
    auto f2 = FieldCtx::make(2, 1);
    auto f3 = FieldCtx::make(3, 1);
    CHECK(isotropic_count(2, FormKind::plus, f2) == 2);
    CHECK(isotropic_count(2, FormKind::minus, f2) == 4);
    CHECK(isotropic_count(2, FormKind::plus, f3) == 1);
    CHECK(isotropic_count(2, FormKind::minus, f3) == 5);
    CHECK(isotropic_count(3, FormKind::plus, f2) == 4);
    CHECK_THROWS_AS(isotropic_count(3, FormKind::minus, f2), std::invalid_argument);
}

TEST_CASE("budget guard refuses oversized enumerations") {
    auto f8 = FieldCtx::make(2, 3);
    CHECK_THROWS_AS(count_nonvanishing(complete_graph(12), CountKind::g, f8), BudgetError);
    try {
        count_nonvanishing(complete_graph(12), CountKind::g, f8);
    } catch (const BudgetError& e) {
        CHECK(e.estimated_ops > kOpBudget);
    }
}

TEST_CASE("counts are identical across thread settings") {
    auto f3 = FieldCtx::make(3, 1);
    Graph g = complete_graph(4);
    BigInt expected = count_nonvanishing(g, CountKind::g, f3, {.threads = 1});
    for (int threads : {2, 3, 7}) {
        CountOptions opt;
        opt.threads = threads;
        CHECK(count_nonvanishing(g, CountKind::g, f3, opt) == expected);
    }
    RankProfile base = sym_rank_census(3, f3, {.threads = 1});
    RankProfile par = sym_rank_census(3, f3, {.threads = 4});
    CHECK(base.counts == par.counts);
}

TEST_CASE("pattern parsing") {
    SupportPattern pat = SupportPattern::parse("# sample\n2\n10\n01\n");
    CHECK(pat.n == 2);
    CHECK(pat.cells == std::vector<std::pair<int, int>>{{1, 1}, {2, 2}});
    CHECK(pat.is_symmetric());
    CHECK(pat.contains(1, 1));
    CHECK_FALSE(pat.contains(1, 2));

    CHECK_THROWS_AS(SupportPattern::parse("2\n10\n"), std::invalid_argument);
    CHECK_THROWS_AS(SupportPattern::parse("2\n101\n01\n"), std::invalid_argument);
    CHECK_THROWS_AS(SupportPattern::parse("2\n1x\n01\n"), std::invalid_argument);
    CHECK_THROWS_AS(SupportPattern::parse("2\n10\n01\n11\n"), std::invalid_argument);
    CHECK(SupportPattern::fano().is_symmetric());
}
