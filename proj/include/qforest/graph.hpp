#pragma once

#include "qforest/bigint.hpp"

#include <set>
#include <string>
#include <utility>
#include <vector>

namespace qforest {

// Undirected multigraph with 1-indexed vertices and edges; edge e is
// edges[e-1]. Loops and parallel edges are allowed unless stated otherwise.
struct Graph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;

    int m() const { return int(edges.size()); }
    bool has_loop() const;
    bool is_simple() const;     // no loops, no parallel edges
    bool is_connected() const;  // vacuously true for n <= 1
};

// Edge-list format: first non-comment line is the vertex count, each later
// non-comment line "u v" adds one edge; '#' starts a comment. Endpoints are
// 1-indexed and range-checked.
Graph parse_graph(const std::string& text);
Graph load_graph(const std::string& path);

Graph cycle_graph(int n);                   // n >= 2; C_2 is a doubled edge
Graph complete_graph(int n);                // n >= 1, edges in lexicographic order
Graph complete_minus_clique(int n, int k);  // K_n minus the clique on 1..k, n > k >= 1
Graph complete_minus_star(int n, int s);    // K_n minus edges 1-2 .. 1-(s+1), n > s+1, s >= 1

// Deletes `del` edges and contracts `contract` edges (disjoint 1-indexed
// sets). Contraction glues each merged vertex class to its minimum label and
// compacts labels; contracted edges disappear, loops arising from parallel
// edges are kept.
Graph minor(const Graph& g, const std::set<int>& del, const std::set<int>& contract);

// True when v is adjacent to every other vertex.
bool is_apex(const Graph& g, int v);

// Number of spanning trees, by fraction-free integer determinant of the
// reduced Laplacian. Loops are ignored; disconnected graphs give 0.
BigInt spanning_tree_count(const Graph& g);

}  // namespace qforest
