#pragma once

#include "qforest/gf.hpp"
#include "qforest/graph.hpp"

#include <span>
#include <vector>

namespace qforest {

// Generic reduced Laplacian: the root row/column removed, each remaining cell
// a signed sum of edge variables (diagonal: +x_e per incident edge,
// off-diagonal: -x_e per connecting edge).
struct GenericLaplacian {
    struct Term {
        int edge;  // 1-indexed
        int sign;  // +1 or -1
    };
    int dim = 0;
    std::vector<std::vector<Term>> cells;  // row-major, dim*dim entries

    const std::vector<Term>& cell(int r, int c) const { return cells[size_t(r) * dim + c]; }
};

// Requires a loop-free graph (callers strip loops; they never enter L) and a
// root in 1..n.
GenericLaplacian reduced_laplacian(const Graph& g, int root);

struct DetRank {
    Fe det;
    int rank = 0;
};

// Evaluates determinant and rank at the assignment x (x[e-1] is the value of
// edge e) by Gaussian elimination. The 0x0 matrix has det 1 and rank 0.
DetRank eval_det_rank(const GenericLaplacian& L, std::span<const Fe> x, const FieldCtx& ctx);

namespace detail {
// In-place determinant + rank of a dim x dim matrix of element codes.
DetRank det_rank_inplace(uint32_t* mat, int dim, const FieldCtx& ctx);
}  // namespace detail

// All spanning trees as increasing edge-index lists, in lexicographic order.
// Loops never participate; a disconnected graph has no trees.
std::vector<std::vector<int>> enumerate_trees(const Graph& g);

enum class TreePolyKind {
    tree,        // Q_G: one monomial prod_{e in T} x_e per spanning tree
    complement,  // P_G: one monomial prod_{e not in T} x_e per spanning tree
};

Fe eval_tree_poly(const Graph& g, std::span<const Fe> x, TreePolyKind kind, const FieldCtx& ctx);
// Same, over a precomputed tree list (m = edge count of the original graph).
Fe eval_tree_poly(const std::vector<std::vector<int>>& trees, int m, std::span<const Fe> x,
                  TreePolyKind kind, const FieldCtx& ctx);

}  // namespace qforest
