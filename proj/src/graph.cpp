#include "qforest/graph.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qforest {
namespace {

struct Dsu {
    std::vector<int> parent;
    explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

bool Graph::has_loop() const {
    for (auto [u, v] : edges)
        if (u == v) return true;
    return false;
}

bool Graph::is_simple() const {
    std::set<std::pair<int, int>> seen;
    for (auto [u, v] : edges) {
        if (u == v) return false;
        auto key = std::minmax(u, v);
        if (!seen.insert(key).second) return false;
    }
    return true;
}

bool Graph::is_connected() const {
    if (n <= 1) return true;
    Dsu dsu(n);
    for (auto [u, v] : edges) dsu.unite(u - 1, v - 1);
    int root = dsu.find(0);
    for (int v = 1; v < n; ++v)
        if (dsu.find(v) != root) return false;
    return true;
}

Graph parse_graph(const std::string& text) {
    Graph g;
    std::istringstream in(text);
    std::string line;
    bool have_n = false;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        if (!have_n) {
            long n;
            if (!(ls >> n)) continue;  // blank or comment-only line
            std::string extra;
            if (ls >> extra) throw std::invalid_argument("line " + std::to_string(lineno) + ": expected a single vertex count");
            if (n < 1 || n > 1000000) throw std::invalid_argument("line " + std::to_string(lineno) + ": bad vertex count");
            g.n = int(n);
            have_n = true;
            continue;
        }
        long u, v;
        if (!(ls >> u)) continue;
        if (!(ls >> v)) throw std::invalid_argument("line " + std::to_string(lineno) + ": expected 'u v'");
        std::string extra;
        if (ls >> extra) throw std::invalid_argument("line " + std::to_string(lineno) + ": trailing tokens after edge");
        if (u < 1 || u > g.n || v < 1 || v > g.n)
            throw std::invalid_argument("line " + std::to_string(lineno) + ": endpoint out of range 1.." + std::to_string(g.n));
        g.edges.emplace_back(int(u), int(v));
    }
    if (!have_n) throw std::invalid_argument("missing vertex count line");
    return g;
}

Graph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open graph file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_graph(buf.str());
}

Graph cycle_graph(int n) {
    if (n < 2) throw std::invalid_argument("cycle requires n >= 2");
    Graph g{n, {}};
    for (int i = 1; i < n; ++i) g.edges.emplace_back(i, i + 1);
    g.edges.emplace_back(n, 1);
    return g;
}

Graph complete_graph(int n) {
    if (n < 1) throw std::invalid_argument("complete graph requires n >= 1");
    Graph g{n, {}};
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) g.edges.emplace_back(i, j);
    return g;
}

Graph complete_minus_clique(int n, int k) {
    if (k < 1 || k >= n) throw std::invalid_argument("complete_minus_clique requires n > k >= 1");
    Graph g{n, {}};
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            if (j > k) g.edges.emplace_back(i, j);
    return g;
}

Graph complete_minus_star(int n, int s) {
    if (s < 1 || s + 1 >= n) throw std::invalid_argument("complete_minus_star requires n > s+1, s >= 1");
    Graph g{n, {}};
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            if (!(i == 1 && j <= s + 1)) g.edges.emplace_back(i, j);
    return g;
}

Graph minor(const Graph& g, const std::set<int>& del, const std::set<int>& contract) {
    for (int e : del)
        if (e < 1 || e > g.m()) throw std::invalid_argument("deleted edge index out of range");
    for (int e : contract) {
        if (e < 1 || e > g.m()) throw std::invalid_argument("contracted edge index out of range");
        if (del.count(e)) throw std::invalid_argument("edge both deleted and contracted");
    }
    Dsu dsu(g.n);
    for (int e : contract) {
        auto [u, v] = g.edges[e - 1];
        dsu.unite(u - 1, v - 1);
    }
    // Classes get compact labels ordered by their minimum original label.
    std::vector<int> min_label(g.n, -1);
    for (int v = 0; v < g.n; ++v) {
        int r = dsu.find(v);
        if (min_label[r] < 0) min_label[r] = v;
    }
    std::map<int, int> relabel;  // min original label -> new label
    for (int v = 0; v < g.n; ++v)
        if (min_label[dsu.find(v)] == v) relabel[v] = 0;
    int next = 1;
    for (auto& [mv, lab] : relabel) lab = next++;
    Graph out;
    out.n = int(relabel.size());
    for (int e = 1; e <= g.m(); ++e) {
        if (del.count(e) || contract.count(e)) continue;
        auto [u, v] = g.edges[e - 1];
        out.edges.emplace_back(relabel.at(min_label[dsu.find(u - 1)]), relabel.at(min_label[dsu.find(v - 1)]));
    }
    return out;
}

bool is_apex(const Graph& g, int v) {
    if (v < 1 || v > g.n) throw std::invalid_argument("vertex out of range");
    std::vector<bool> adj(g.n + 1, false);
    for (auto [a, b] : g.edges) {
        if (a == v) adj[b] = true;
        if (b == v) adj[a] = true;
    }
    for (int u = 1; u <= g.n; ++u)
        if (u != v && !adj[u]) return false;
    return true;
}

BigInt spanning_tree_count(const Graph& g) {
    if (g.n == 0) return 0;
    if (g.n == 1) return 1;
    int d = g.n - 1;  // root at vertex n
    std::vector<std::vector<BigInt>> a(d, std::vector<BigInt>(d, 0));
    for (auto [u, v] : g.edges) {
        if (u == v) continue;
        if (u <= d) a[u - 1][u - 1] += 1;
        if (v <= d) a[v - 1][v - 1] += 1;
        if (u <= d && v <= d) {
            a[u - 1][v - 1] -= 1;
            a[v - 1][u - 1] -= 1;
        }
    }
    // Bareiss fraction-free elimination.
    BigInt prev = 1;
    int sign = 1;
    for (int c = 0; c < d; ++c) {
        int pivot = -1;
        for (int r = c; r < d; ++r)
            if (a[r][c] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) return 0;
        if (pivot != c) {
            std::swap(a[pivot], a[c]);
            sign = -sign;
        }
        for (int r = c + 1; r < d; ++r) {
            for (int j = c + 1; j < d; ++j) a[r][j] = (a[r][j] * a[c][c] - a[r][c] * a[c][j]) / prev;
            a[r][c] = 0;
        }
        prev = a[c][c];
    }
    return sign > 0 ? a[d - 1][d - 1] : -a[d - 1][d - 1];
}

}  // namespace qforest
