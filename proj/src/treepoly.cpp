#include "qforest/treepoly.hpp"

#include <numeric>
#include <stdexcept>

namespace qforest {

GenericLaplacian reduced_laplacian(const Graph& g, int root) {
    if (root < 1 || root > g.n) throw std::invalid_argument("root out of range");
    if (g.has_loop()) throw std::invalid_argument("reduced_laplacian requires a loop-free graph");
    GenericLaplacian L;
    L.dim = g.n - 1;
    L.cells.assign(size_t(L.dim) * L.dim, {});
    // Row index of vertex v after deleting the root row/column.
    auto idx = [&](int v) { return v < root ? v - 1 : v - 2; };
    for (int e = 1; e <= g.m(); ++e) {
        auto [u, v] = g.edges[e - 1];
        if (u != root) L.cells[size_t(idx(u)) * L.dim + idx(u)].push_back({e, +1});
        if (v != root) L.cells[size_t(idx(v)) * L.dim + idx(v)].push_back({e, +1});
        if (u != root && v != root) {
            L.cells[size_t(idx(u)) * L.dim + idx(v)].push_back({e, -1});
            L.cells[size_t(idx(v)) * L.dim + idx(u)].push_back({e, -1});
        }
    }
    return L;
}

namespace detail {

DetRank det_rank_inplace(uint32_t* mat, int dim, const FieldCtx& ctx) {
    DetRank out{ctx.one(), 0};
    bool neg = false;
    for (int col = 0; col < dim; ++col) {
        int pivot = -1;
        for (int r = out.rank; r < dim; ++r)
            if (mat[size_t(r) * dim + col] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        if (pivot != out.rank) {
            for (int c = col; c < dim; ++c) std::swap(mat[size_t(pivot) * dim + c], mat[size_t(out.rank) * dim + c]);
            neg = !neg;
        }
        Fe pv{mat[size_t(out.rank) * dim + col]};
        out.det = ctx.mul(out.det, pv);
        Fe pv_inv = ctx.inv(pv);
        for (int r = out.rank + 1; r < dim; ++r) {
            Fe f = ctx.mul(Fe{mat[size_t(r) * dim + col]}, pv_inv);
            if (f.code == 0) continue;
            for (int c = col; c < dim; ++c) {
                Fe cur{mat[size_t(r) * dim + c]};
                mat[size_t(r) * dim + c] = ctx.sub(cur, ctx.mul(f, Fe{mat[size_t(out.rank) * dim + c]})).code;
            }
        }
        ++out.rank;
    }
    if (out.rank < dim)
        out.det = ctx.zero();
    else if (neg)
        out.det = ctx.neg(out.det);
    return out;
}

}  // namespace detail

DetRank eval_det_rank(const GenericLaplacian& L, std::span<const Fe> x, const FieldCtx& ctx) {
    std::vector<uint32_t> mat(size_t(L.dim) * L.dim, 0);
    for (size_t cell = 0; cell < mat.size(); ++cell) {
        Fe acc = ctx.zero();
        for (auto [edge, sign] : L.cells[cell]) {
            Fe xv = x[size_t(edge) - 1];
            acc = sign > 0 ? ctx.add(acc, xv) : ctx.sub(acc, xv);
        }
        mat[cell] = acc.code;
    }
    return detail::det_rank_inplace(mat.data(), L.dim, ctx);
}

std::vector<std::vector<int>> enumerate_trees(const Graph& g) {
    std::vector<std::vector<int>> out;
    if (g.n == 0) return out;
    int need = g.n - 1;
    std::vector<int> parent(g.n), size(g.n, 1);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
        while (parent[v] != v) v = parent[v];
        return v;
    };
    std::vector<int> chosen;
    auto rec = [&](auto&& self, int e) -> void {
        if (int(chosen.size()) == need) {
            out.push_back(chosen);
            return;
        }
        if (e > g.m() || g.m() - e + 1 < need - int(chosen.size())) return;
        auto [u, v] = g.edges[e - 1];
        int ru = find(u - 1), rv = find(v - 1);
        if (ru != rv) {
            if (size[ru] > size[rv]) std::swap(ru, rv);
            parent[ru] = rv;
            size[rv] += size[ru];
            chosen.push_back(e);
            self(self, e + 1);
            chosen.pop_back();
            size[rv] -= size[ru];
            parent[ru] = ru;
        }
        self(self, e + 1);
    };
    rec(rec, 1);
    return out;
}

Fe eval_tree_poly(const Graph& g, std::span<const Fe> x, TreePolyKind kind, const FieldCtx& ctx) {
    return eval_tree_poly(enumerate_trees(g), g.m(), x, kind, ctx);
}

Fe eval_tree_poly(const std::vector<std::vector<int>>& trees, int m, std::span<const Fe> x,
                  TreePolyKind kind, const FieldCtx& ctx) {
    if (int(x.size()) != m) throw std::invalid_argument("assignment size does not match edge count");
    Fe total = ctx.zero();
    std::vector<char> in_tree(size_t(m) + 1, 0);
    for (const auto& t : trees) {
        Fe term = ctx.one();
        if (kind == TreePolyKind::tree) {
            for (int e : t) term = ctx.mul(term, x[size_t(e) - 1]);
        } else {
            for (int e : t) in_tree[e] = 1;
            for (int e = 1; e <= m; ++e)
                if (!in_tree[e]) term = ctx.mul(term, x[size_t(e) - 1]);
            for (int e : t) in_tree[e] = 0;
        }
        total = ctx.add(total, term);
    }
    return total;
}

}  // namespace qforest
