#pragma once

#include "qforest/counting.hpp"

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace qforest {
namespace detail {

inline double pow_double(double base, int e) {
    double r = 1;
    while (e-- > 0) r *= base;
    return r;
}

inline void guard_budget(double estimated_ops, const CountOptions& opt) {
    if (estimated_ops > 9.2e18) throw BudgetError(estimated_ops);  // cannot even index
    if (estimated_ops > kOpBudget && !opt.force) throw BudgetError(estimated_ops);
}

// Enumerates all q^m digit vectors split into prefix units; body(state, d)
// runs once per vector with d[0..m). Unit results are combined by the caller
// in unit order, so totals are identical for every shard/thread setting.
template <class State, class Body>
std::vector<State> sharded_enumerate(int m, uint64_t q, int threads, const State& init, Body&& body) {
    int prefix = 0;
    uint64_t units = 1;
    if (threads > 1)
        while (prefix < m && units < uint64_t(16) * threads) {
            units *= q;
            ++prefix;
        }
    int low = m - prefix;
    std::vector<State> states(units, init);
    auto run_unit = [&](uint64_t u) {
        std::vector<uint32_t> d(size_t(m), 0);
        uint64_t rest = u;
        for (int i = low; i < m; ++i) {
            d[size_t(i)] = uint32_t(rest % q);
            rest /= q;
        }
        State& st = states[u];
        for (;;) {
            body(st, d.data());
            int i = 0;
            while (i < low && ++d[size_t(i)] == q) {
                d[size_t(i)] = 0;
                ++i;
            }
            if (i == low) break;
        }
    };
    if (threads <= 1 || units == 1) {
        for (uint64_t u = 0; u < units; ++u) run_unit(u);
    } else {
        std::atomic<uint64_t> next{0};
        auto worker = [&] {
            for (;;) {
                uint64_t u = next.fetch_add(1);
                if (u >= units) break;
                run_unit(u);
            }
        };
        std::vector<std::thread> pool;
        int nthreads = int(std::min<uint64_t>(units, uint64_t(threads)));
        pool.reserve(size_t(nthreads));
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return states;
}

}  // namespace detail
}  // namespace qforest
