#include "qforest/counting.hpp"

#include "qforest/detail/enumerate.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>
#include <unordered_map>

namespace qforest {
namespace {

using detail::guard_budget;
using detail::pow_double;
using detail::sharded_enumerate;

// Reduced Laplacian that ignores loops but keeps original edge indices.
GenericLaplacian laplacian_skip_loops(const Graph& g, int root) {
    Graph noloop{g.n, {}};
    std::vector<int> orig;
    for (int e = 1; e <= g.m(); ++e) {
        auto [u, v] = g.edges[size_t(e) - 1];
        if (u == v) continue;
        noloop.edges.emplace_back(u, v);
        orig.push_back(e);
    }
    GenericLaplacian L = reduced_laplacian(noloop, root);
    for (auto& cell : L.cells)
        for (auto& term : cell) term.edge = orig[size_t(term.edge) - 1];
    return L;
}

struct DetState {
    uint64_t count = 0;
    std::vector<uint32_t> mat;
    std::vector<Fe> x;
};

// Counts assignments (digits indexed by free_edges) with det L != 0; fixed
// edges keep the preset values in x_init.
uint64_t count_det_nonzero(const GenericLaplacian& L, const std::vector<int>& free_edges,
                           const std::vector<Fe>& x_init, const FieldCtx& ctx, int threads) {
    DetState init;
    init.mat.assign(size_t(L.dim) * L.dim, 0);
    init.x = x_init;
    auto states = sharded_enumerate<DetState>(
        int(free_edges.size()), ctx.q(), threads, init, [&](DetState& st, const uint32_t* d) {
            for (size_t i = 0; i < free_edges.size(); ++i) st.x[size_t(free_edges[i]) - 1] = Fe{d[i]};
            for (size_t cell = 0; cell < st.mat.size(); ++cell) {
                Fe acc = ctx.zero();
                for (auto [edge, sign] : L.cells[cell]) {
                    Fe xv = st.x[size_t(edge) - 1];
                    acc = sign > 0 ? ctx.add(acc, xv) : ctx.sub(acc, xv);
                }
                st.mat[cell] = acc.code;
            }
            if (detail::det_rank_inplace(st.mat.data(), L.dim, ctx).det.code != 0) ++st.count;
        });
    uint64_t total = 0;
    for (const auto& st : states) total += st.count;
    return total;
}

struct TreeState {
    uint64_t count = 0;
    std::vector<Fe> x;
};

uint64_t count_treepoly_nonzero(const std::vector<std::vector<int>>& trees, int m,
                                const std::vector<int>& free_edges, const std::vector<Fe>& x_init,
                                TreePolyKind kind, const FieldCtx& ctx, int threads) {
    TreeState init;
    init.x = x_init;
    auto states = sharded_enumerate<TreeState>(
        int(free_edges.size()), ctx.q(), threads, init, [&](TreeState& st, const uint32_t* d) {
            for (size_t i = 0; i < free_edges.size(); ++i) st.x[size_t(free_edges[i]) - 1] = Fe{d[i]};
            if (eval_tree_poly(trees, m, st.x, kind, ctx).code != 0) ++st.count;
        });
    uint64_t total = 0;
    for (const auto& st : states) total += st.count;
    return total;
}

std::vector<int> all_edges_except(const Graph& g, const std::set<int>& fixed, bool skip_loops) {
    std::vector<int> out;
    for (int e = 1; e <= g.m(); ++e) {
        if (fixed.count(e)) continue;
        auto [u, v] = g.edges[size_t(e) - 1];
        if (skip_loops && u == v) continue;
        out.push_back(e);
    }
    return out;
}

BigInt count_with_fixed_zeros(const Graph& g, const std::set<int>& S, CountKind kind,
                              const FieldCtx& ctx, const CountOptions& opt) {
    for (int e : S)
        if (e < 1 || e > g.m()) throw std::invalid_argument("zero-set edge index out of range");
    if (!g.is_connected()) return 0;
    int threads = resolve_threads(opt.threads);
    std::vector<Fe> x_init(size_t(g.m()), ctx.zero());
    if (kind == CountKind::g) {
        // Loops never enter the determinant: free loops contribute a factor q
        // each, loops pinned to zero contribute a factor 1.
        GenericLaplacian L = laplacian_skip_loops(g, g.n);
        std::vector<int> free_edges = all_edges_except(g, S, true);
        int free_loops = 0;
        for (int e = 1; e <= g.m(); ++e) {
            auto [u, v] = g.edges[size_t(e) - 1];
            if (u == v && !S.count(e)) ++free_loops;
        }
        double dim = L.dim;
        guard_budget(pow_double(double(ctx.q()), int(free_edges.size())) * (dim * dim * dim + 4 * g.m() + 8), opt);
        BigInt count = count_det_nonzero(L, free_edges, x_init, ctx, threads);
        return count * bi_pow(BigInt(ctx.q()), uint64_t(free_loops));
    }
    auto trees = enumerate_trees(g);
    if (trees.empty()) return 0;
    std::vector<int> free_edges = all_edges_except(g, S, false);
    guard_budget(pow_double(double(ctx.q()), int(free_edges.size())) *
                     (double(trees.size()) * g.n + g.m()),
                 opt);
    return count_treepoly_nonzero(trees, g.m(), free_edges, x_init, TreePolyKind::complement, ctx,
                                  threads);
}

struct RankHistState {
    std::vector<uint64_t> hist;
    std::vector<uint32_t> mat;
};

// Free cells are flattened 0-indexed positions; mirror[i] is a second
// position receiving the same digit, or -1.
RankProfile matrix_rank_histogram(int n, const std::vector<int>& free_pos,
                                  const std::vector<int>& mirror, const FieldCtx& ctx,
                                  int threads) {
    RankHistState init;
    init.hist.assign(size_t(n) + 1, 0);
    init.mat.assign(size_t(n) * n, 0);
    auto states = sharded_enumerate<RankHistState>(
        int(free_pos.size()), ctx.q(), threads, init, [&](RankHistState& st, const uint32_t* d) {
            std::fill(st.mat.begin(), st.mat.end(), 0);
            for (size_t i = 0; i < free_pos.size(); ++i) {
                st.mat[size_t(free_pos[i])] = d[i];
                if (mirror[i] >= 0) st.mat[size_t(mirror[i])] = d[i];
            }
            ++st.hist[size_t(detail::det_rank_inplace(st.mat.data(), n, ctx).rank)];
        });
    RankProfile out;
    out.counts.assign(size_t(n) + 1, 0);
    for (const auto& st : states)
        for (size_t r = 0; r <= size_t(n); ++r) out.counts[r] += st.hist[r];
    return out;
}

struct FormCtx {
    bool eform = false;  // pairwise form in characteristic 2
    Fe alpha;            // scale on the first coordinate (one for plus)
};

FormCtx make_form(FormKind form, int n, const FieldCtx& ctx) {
    FormCtx out;
    out.alpha = ctx.one();
    if (form == FormKind::minus) {
        if (ctx.p() != 2) {
            out.alpha = ctx.find_nonsquare();
        } else if (n % 2 == 0) {
            out.eform = true;
        } else {
            throw std::invalid_argument(
                "minus form undefined for odd dimension in characteristic 2");
        }
    }
    return out;
}

Fe form_dot(const FormCtx& fc, const uint32_t* u, const uint32_t* v, int n, const FieldCtx& ctx) {
    Fe acc = ctx.zero();
    if (fc.eform) {
        for (int i = 0; i + 1 < n; i += 2) {
            acc = ctx.add(acc, ctx.mul(Fe{u[i]}, Fe{v[i + 1]}));
            acc = ctx.add(acc, ctx.mul(Fe{u[i + 1]}, Fe{v[i]}));
        }
        return acc;
    }
    acc = ctx.mul(fc.alpha, ctx.mul(Fe{u[0]}, Fe{v[0]}));
    for (int i = 1; i < n; ++i) acc = ctx.add(acc, ctx.mul(Fe{u[i]}, Fe{v[i]}));
    return acc;
}

// Row-by-row dynamic program: state = reduced-row-echelon basis of the span
// of the rows placed so far, candidates enumerated over the row's free cells,
// rows inside the current span discarded.
BigInt span_dp_count(const SupportPattern& pat, const FieldCtx& ctx, const CountOptions& opt) {
    int n = pat.n;
    uint64_t q = ctx.q();
    if (q > 65535) throw std::invalid_argument("span_dp supports q <= 65535");
    std::vector<std::vector<int>> rowcols(static_cast<size_t>(n));
    for (auto [r, c] : pat.cells) rowcols[size_t(r) - 1].push_back(c - 1);

    {  // budget: sum over rows of reachable-state bound times candidate count
        double est = 0, states_bound = 1;
        for (int i = 0; i < n; ++i) {
            double gauss = pow_double(double(q), i * (n - i)) * 4;  // loose Gaussian binom bound
            est += std::min(states_bound, gauss) * pow_double(double(q), int(rowcols[size_t(i)].size())) *
                   double(n) * n;
            states_bound *= pow_double(double(q), int(rowcols[size_t(i)].size()));
        }
        guard_budget(est, opt);
    }

    using Basis = std::vector<std::vector<uint32_t>>;  // rows in pivot order
    auto encode = [n](const Basis& b) {
        std::string key(b.size() * size_t(n) * 2, '\0');
        size_t at = 0;
        for (const auto& row : b)
            for (int c = 0; c < n; ++c) {
                key[at++] = char(row[size_t(c)] & 0xff);
                key[at++] = char((row[size_t(c)] >> 8) & 0xff);
            }
        return key;
    };
    auto decode = [n](const std::string& key) {
        Basis b(key.size() / (size_t(n) * 2), std::vector<uint32_t>(size_t(n)));
        size_t at = 0;
        for (auto& row : b)
            for (int c = 0; c < n; ++c) {
                row[size_t(c)] = uint32_t(uint8_t(key[at])) | (uint32_t(uint8_t(key[at + 1])) << 8);
                at += 2;
            }
        return b;
    };
    auto pivot_of = [n](const std::vector<uint32_t>& row) {
        for (int c = 0; c < n; ++c)
            if (row[size_t(c)] != 0) return c;
        return n;
    };

    std::unordered_map<std::string, uint64_t> cur;
    cur.emplace(std::string(), 1);
    std::vector<uint32_t> cand(static_cast<size_t>(n));
    for (int rowi = 0; rowi < n; ++rowi) {
        std::unordered_map<std::string, uint64_t> next;
        const auto& cols = rowcols[size_t(rowi)];
        for (const auto& [key, cnt] : cur) {
            Basis basis = decode(key);
            std::vector<int> pivots(basis.size());
            for (size_t i = 0; i < basis.size(); ++i) pivots[i] = pivot_of(basis[i]);
            std::vector<uint32_t> digits(cols.size(), 0);
            for (;;) {
                std::fill(cand.begin(), cand.end(), 0);
                for (size_t i = 0; i < cols.size(); ++i) cand[size_t(cols[i])] = digits[i];
                // reduce the candidate by the basis
                for (size_t i = 0; i < basis.size(); ++i) {
                    Fe f{cand[size_t(pivots[i])]};
                    if (f.code == 0) continue;
                    for (int c = pivots[i]; c < n; ++c)
                        cand[size_t(c)] = ctx.sub(Fe{cand[size_t(c)]}, ctx.mul(f, Fe{basis[i][size_t(c)]})).code;
                }
                int pv = pivot_of(cand);
                if (pv < n) {
                    // normalize, clear the pivot column above, insert in order
                    Basis nb = basis;
                    std::vector<uint32_t> w(cand);
                    Fe scale = ctx.inv(Fe{w[size_t(pv)]});
                    for (int c = pv; c < n; ++c) w[size_t(c)] = ctx.mul(scale, Fe{w[size_t(c)]}).code;
                    for (auto& row : nb) {
                        Fe f{row[size_t(pv)]};
                        if (f.code == 0) continue;
                        for (int c = pv; c < n; ++c)
                            row[size_t(c)] = ctx.sub(Fe{row[size_t(c)]}, ctx.mul(f, Fe{w[size_t(c)]})).code;
                    }
                    auto where = nb.begin();
                    while (where != nb.end() && pivot_of(*where) < pv) ++where;
                    nb.insert(where, w);
                    next[encode(nb)] += cnt;
                }
                size_t i = 0;
                while (i < digits.size() && ++digits[i] == q) {
                    digits[i] = 0;
                    ++i;
                }
                if (i == digits.size()) break;
            }
        }
        cur = std::move(next);
        if (cur.empty()) return 0;
    }
    BigInt total = 0;
    for (const auto& [key, cnt] : cur) total += cnt;
    return total;
}

}  // namespace

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("QFOREST_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? int(hw) : 1;
}

BigInt count_nonvanishing(const Graph& g, CountKind kind, const FieldCtx& ctx,
                          const CountOptions& opt) {
    return count_with_fixed_zeros(g, {}, kind, ctx, opt);
}

BigInt count_zero_set(const Graph& g, const std::set<int>& S, CountKind kind, ZeroMode mode,
                      const FieldCtx& ctx, const CountOptions& opt) {
    if (mode == ZeroMode::at_least) return count_with_fixed_zeros(g, S, kind, ctx, opt);
    // exact: inclusion-exclusion over supersets of S
    std::vector<int> rest;
    for (int e = 1; e <= g.m(); ++e)
        if (!S.count(e)) rest.push_back(e);
    if (rest.size() > 30) throw BudgetError(pow_double(2.0, int(rest.size())));
    guard_budget(pow_double(double(ctx.q()) + 1, int(rest.size())) * 64, opt);
    BigInt total = 0;
    for (uint64_t mask = 0; mask < (uint64_t(1) << rest.size()); ++mask) {
        std::set<int> super(S);
        for (size_t i = 0; i < rest.size(); ++i)
            if (mask >> i & 1) super.insert(rest[i]);
        BigInt term = count_with_fixed_zeros(g, super, kind, ctx, opt);
        if (std::popcount(mask) % 2 == 0)
            total += term;
        else
            total -= term;
    }
    return total;
}

RankProfile rank_profile(const Graph& g, int root, const FieldCtx& ctx, const CountOptions& opt) {
    if (!g.is_simple()) throw std::invalid_argument("rank_profile requires a simple graph");
    GenericLaplacian L = reduced_laplacian(g, root);
    double dim = L.dim;
    guard_budget(pow_double(double(ctx.q()), g.m()) * (dim * dim * dim + 4 * g.m() + 8), opt);
    int threads = resolve_threads(opt.threads);

    struct ProfState {
        std::vector<uint64_t> hist;
        std::vector<uint32_t> mat;
        std::vector<Fe> x;
    };
    ProfState init;
    init.hist.assign(size_t(g.n), 0);
    init.mat.assign(size_t(L.dim) * L.dim, 0);
    init.x.assign(size_t(g.m()), ctx.zero());
    auto states = sharded_enumerate<ProfState>(
        g.m(), ctx.q(), threads, init, [&](ProfState& st, const uint32_t* d) {
            for (int e = 0; e < g.m(); ++e) st.x[size_t(e)] = Fe{d[e]};
            for (size_t cell = 0; cell < st.mat.size(); ++cell) {
                Fe acc = ctx.zero();
                for (auto [edge, sign] : L.cells[cell]) {
                    Fe xv = st.x[size_t(edge) - 1];
                    acc = sign > 0 ? ctx.add(acc, xv) : ctx.sub(acc, xv);
                }
                st.mat[cell] = acc.code;
            }
            ++st.hist[size_t(detail::det_rank_inplace(st.mat.data(), L.dim, ctx).rank)];
        });
    RankProfile out;
    out.counts.assign(size_t(g.n), 0);
    for (const auto& st : states)
        for (size_t r = 0; r < size_t(g.n); ++r) out.counts[r] += st.hist[r];
    return out;
}

SupportPattern SupportPattern::parse(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    SupportPattern pat;
    int rows_seen = 0;
    bool have_n = false;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::string tokens;
        for (char c : line)
            if (!std::isspace(static_cast<unsigned char>(c))) tokens.push_back(c);
        if (tokens.empty()) continue;
        if (!have_n) {
            try {
                pat.n = std::stoi(tokens);
            } catch (...) {
                throw std::invalid_argument("line " + std::to_string(lineno) + ": expected matrix size");
            }
            if (pat.n < 1 || pat.n > 64) throw std::invalid_argument("pattern size out of range");
            have_n = true;
            continue;
        }
        if (rows_seen >= pat.n) throw std::invalid_argument("line " + std::to_string(lineno) + ": too many pattern rows");
        if (int(tokens.size()) != pat.n)
            throw std::invalid_argument("line " + std::to_string(lineno) + ": expected " + std::to_string(pat.n) + " cells");
        ++rows_seen;
        for (int c = 0; c < pat.n; ++c) {
            if (tokens[size_t(c)] == '1')
                pat.cells.emplace_back(rows_seen, c + 1);
            else if (tokens[size_t(c)] != '0')
                throw std::invalid_argument("line " + std::to_string(lineno) + ": pattern cells must be '0' or '1'");
        }
    }
    if (!have_n || rows_seen != pat.n) throw std::invalid_argument("pattern has missing rows");
    return pat;
}

SupportPattern SupportPattern::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open pattern file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

SupportPattern SupportPattern::full(int n) {
    if (n < 1) throw std::invalid_argument("pattern size out of range");
    SupportPattern pat;
    pat.n = n;
    for (int r = 1; r <= n; ++r)
        for (int c = 1; c <= n; ++c) pat.cells.emplace_back(r, c);
    return pat;
}

SupportPattern SupportPattern::fano() {
    static const int lines[7][3] = {{1, 2, 3}, {1, 4, 5}, {1, 6, 7}, {2, 4, 6},
                                    {2, 5, 7}, {3, 4, 7}, {3, 5, 6}};
    SupportPattern pat;
    pat.n = 7;
    for (int r = 0; r < 7; ++r)
        for (int c : lines[r]) pat.cells.emplace_back(r + 1, c);
    std::sort(pat.cells.begin(), pat.cells.end());
    return pat;
}

bool SupportPattern::is_symmetric() const {
    std::set<std::pair<int, int>> set(cells.begin(), cells.end());
    for (auto [r, c] : cells)
        if (!set.count({c, r})) return false;
    return true;
}

bool SupportPattern::contains(int r, int c) const {
    return std::binary_search(cells.begin(), cells.end(), std::pair<int, int>{r, c});
}

BigInt count_support_invertible(const SupportPattern& pat, const FieldCtx& ctx, SupportAlgo algo,
                                const CountOptions& opt) {
    if (pat.n < 1) throw std::invalid_argument("empty pattern");
    if (algo == SupportAlgo::span_dp) return span_dp_count(pat, ctx, opt);
    double nd = pat.n;
    guard_budget(pow_double(double(ctx.q()), int(pat.cells.size())) * (nd * nd * nd + 2 * nd * nd), opt);
    std::vector<int> free_pos, mirror;
    for (auto [r, c] : pat.cells) {
        free_pos.push_back((r - 1) * pat.n + (c - 1));
        mirror.push_back(-1);
    }
    RankProfile prof = matrix_rank_histogram(pat.n, free_pos, mirror, ctx, resolve_threads(opt.threads));
    return prof.counts[size_t(pat.n)];
}

BigInt count_support_symmetric(const SupportPattern& pat, const FieldCtx& ctx,
                               const CountOptions& opt) {
    if (pat.n < 1) throw std::invalid_argument("empty pattern");
    if (!pat.is_symmetric()) throw std::invalid_argument("pattern is not symmetric");
    std::vector<int> free_pos, mirror;
    for (auto [r, c] : pat.cells) {
        if (r > c) continue;
        free_pos.push_back((r - 1) * pat.n + (c - 1));
        mirror.push_back(r == c ? -1 : (c - 1) * pat.n + (r - 1));
    }
    double nd = pat.n;
    guard_budget(pow_double(double(ctx.q()), int(free_pos.size())) * (nd * nd * nd + 2 * nd * nd), opt);
    RankProfile prof = matrix_rank_histogram(pat.n, free_pos, mirror, ctx, resolve_threads(opt.threads));
    return prof.counts[size_t(pat.n)];
}

RankProfile sym_rank_census(int n, const FieldCtx& ctx, const CountOptions& opt) {
    if (n < 1) throw std::invalid_argument("census dimension must be positive");
    std::vector<int> free_pos, mirror;
    for (int r = 0; r < n; ++r)
        for (int c = r; c < n; ++c) {
            free_pos.push_back(r * n + c);
            mirror.push_back(r == c ? -1 : c * n + r);
        }
    double nd = n;
    guard_budget(pow_double(double(ctx.q()), int(free_pos.size())) * (nd * nd * nd + 2 * nd * nd), opt);
    return matrix_rank_histogram(n, free_pos, mirror, ctx, resolve_threads(opt.threads));
}

BigInt ordered_basis_count(const Graph& g, FormKind form, const FieldCtx& ctx,
                           const CountOptions& opt) {
    int n = g.n - 1;
    if (n < 1) throw std::invalid_argument("graph must have at least two vertices");
    if (!g.is_simple()) throw std::invalid_argument("ordered_basis_count requires a simple graph");
    if (!is_apex(g, g.n)) throw std::invalid_argument("vertex n+1 must be an apex");
    FormCtx fc = make_form(form, n, ctx);
    std::vector<std::pair<int, int>> missing;
    std::set<std::pair<int, int>> present;
    for (auto [u, v] : g.edges) present.insert(std::minmax(u, v));
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            if (!present.count({i, j})) missing.emplace_back(i - 1, j - 1);
    double nd = n;
    guard_budget(pow_double(double(ctx.q()), n * n) *
                     (nd * nd * nd + double(missing.size()) * nd + nd * nd),
                 opt);
    int threads = resolve_threads(opt.threads);
    struct TupleState {
        uint64_t count = 0;
        std::vector<uint32_t> mat;
    };
    TupleState init;
    init.mat.assign(size_t(n) * n, 0);
    auto states = sharded_enumerate<TupleState>(
        n * n, ctx.q(), threads, init, [&](TupleState& st, const uint32_t* d) {
            for (auto [i, j] : missing)
                if (form_dot(fc, d + size_t(i) * n, d + size_t(j) * n, n, ctx).code != 0) return;
            std::copy(d, d + size_t(n) * n, st.mat.begin());
            if (detail::det_rank_inplace(st.mat.data(), n, ctx).rank == n) ++st.count;
        });
    BigInt total = 0;
    for (const auto& st : states) total += st.count;
    return total;
}

BigInt isotropic_count(int n, FormKind form, const FieldCtx& ctx, const CountOptions& opt) {
    if (n < 1) throw std::invalid_argument("dimension must be positive");
    FormCtx fc = make_form(form, n, ctx);
    guard_budget(pow_double(double(ctx.q()), n) * (2.0 * n), opt);
    int threads = resolve_threads(opt.threads);
    struct VecState {
        uint64_t count = 0;
    };
    auto states = sharded_enumerate<VecState>(n, ctx.q(), threads, VecState{},
                                              [&](VecState& st, const uint32_t* d) {
                                                  if (form_dot(fc, d, d, n, ctx).code == 0) ++st.count;
                                              });
    BigInt total = 0;
    for (const auto& st : states) total += st.count;
    return total;
}

}  // namespace qforest
