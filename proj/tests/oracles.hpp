#pragma once

// Brute-force reference implementations used by the unit and acceptance tests.

#include "fracnet/graph.hpp"
#include "fracnet/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <random>
#include <utility>
#include <vector>

namespace fracnet::testing {

inline std::vector<std::vector<int>> floyd_warshall(const FractureGraph& g) {
    const int n = g.n_nodes();
    const int inf = 1 << 28;
    std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
    for (int i = 0; i < n; ++i) {
        d[i][i] = 0;
        for (int j : g.neighbors(i)) d[i][j] = 1;
    }
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    for (auto& row : d)
        for (int& v : row)
            if (v >= inf) v = -1;
    return d;
}

// Canonical form of a 4-node induced subgraph: lexicographically smallest
// adjacency bitmask over all 24 relabelings.
inline int canonical4(const FractureGraph& g, const std::array<int, 4>& nodes) {
    std::array<int, 4> perm{0, 1, 2, 3};
    int best = 1 << 10;
    do {
        int mask = 0, bit = 0;
        for (int a = 0; a < 4; ++a)
            for (int b = a + 1; b < 4; ++b, ++bit)
                if (g.has_edge(nodes[perm[a]], nodes[perm[b]])) mask |= 1 << bit;
        best = std::min(best, mask);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

inline bool connected4(const FractureGraph& g, const std::array<int, 4>& nodes) {
    int reach = 1;
    for (int round = 0; round < 4; ++round)
        for (int a = 0; a < 4; ++a)
            if (reach >> a & 1)
                for (int b = 0; b < 4; ++b)
                    if (g.has_edge(nodes[a], nodes[b])) reach |= 1 << b;
    return reach == 15;
}

// Brute-force census keyed on canonical forms; class order fixed by the
// canonical forms of the six reference graphs.
inline Census4 brute_census(const FractureGraph& g) {
    static const std::map<int, int> index = [] {
        const std::vector<std::vector<std::pair<int, int>>> refs = {
            {{0, 1}, {1, 2}, {2, 3}},                                 // path
            {{0, 1}, {0, 2}, {0, 3}},                                 // star
            {{0, 1}, {1, 2}, {0, 2}, {2, 3}},                         // paw
            {{0, 1}, {1, 2}, {2, 3}, {3, 0}},                         // cycle
            {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}},                 // diamond
            {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}},         // clique
        };
        std::map<int, int> m;
        for (int c = 0; c < 6; ++c) m[canonical4(FractureGraph::from_edges(4, refs[c]), {0, 1, 2, 3})] = c;
        return m;
    }();
    Census4 out{};
    const int n = g.n_nodes();
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c)
                for (int d = c + 1; d < n; ++d) {
                    const std::array<int, 4> nodes{a, b, c, d};
                    if (connected4(g, nodes)) ++out[index.at(canonical4(g, nodes))];
                }
    return out;
}

// Edges among neighbors counted over all vertex triples.
inline double brute_clustering(const FractureGraph& g) {
    const int n = g.n_nodes();
    if (n == 0) return 0.0;
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        const int k = g.degree(i);
        if (k < 2) continue;
        int links = 0;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                if (g.has_edge(i, a) && g.has_edge(i, b) && g.has_edge(a, b)) ++links;
        total += 2.0 * links / (k * (k - 1.0));
    }
    return total / n;
}

// Connected random graph: a random spanning tree plus extra edges.
inline FractureGraph connected_random_graph(int n, double p, std::mt19937_64& rng) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i < n; ++i) edges.emplace_back(std::uniform_int_distribution<int>(0, i - 1)(rng), i);
    std::bernoulli_distribution coin(p);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (coin(rng)) edges.emplace_back(i, j);
    return FractureGraph::from_edges(n, edges);
}

// Dirichlet problem L u = 0 on free nodes, solved by dense Gaussian elimination
// with partial pivoting.
inline std::vector<double> dense_harmonic(const FractureGraph& g, const std::vector<int>& src, const std::vector<int>& snk,
                                   double u_src, double u_snk) {
    const int n = g.n_nodes();
    std::vector<double> fixed(n, std::nan(""));
    for (int i : src) fixed[i] = u_src;
    for (int i : snk) fixed[i] = u_snk;
    std::vector<int> free_idx(n, -1), free_nodes;
    for (int i = 0; i < n; ++i)
        if (std::isnan(fixed[i])) {
            free_idx[i] = static_cast<int>(free_nodes.size());
            free_nodes.push_back(i);
        }
    const int m = static_cast<int>(free_nodes.size());
    std::vector<std::vector<double>> a(m, std::vector<double>(m + 1, 0.0));
    for (int r = 0; r < m; ++r) {
        const int i = free_nodes[r];
        a[r][r] = g.degree(i);
        for (int j : g.neighbors(i)) {
            if (free_idx[j] >= 0) a[r][free_idx[j]] -= 1.0;
            else a[r][m] += fixed[j];
        }
    }
    for (int c = 0; c < m; ++c) {
        int piv = c;
        for (int r = c + 1; r < m; ++r)
            if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
        std::swap(a[c], a[piv]);
        for (int r = 0; r < m; ++r) {
            if (r == c) continue;
            const double f = a[r][c] / a[c][c];
            for (int k = c; k <= m; ++k) a[r][k] -= f * a[c][k];
        }
    }
    std::vector<double> u(n);
    for (int i = 0; i < n; ++i) u[i] = std::isnan(fixed[i]) ? a[free_idx[i]][m] / a[free_idx[i]][free_idx[i]] : fixed[i];
    return u;
}

} // namespace fracnet::testing
