#pragma once

// Test-only oracles shared by several suites.

#include "fracnet/dfn.hpp"
#include "fracnet/graph.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <utility>
#include <vector>

namespace fracnet::testing {

/// Kolmogorov-Smirnov statistic of `samples` against `cdf`.
inline double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double F = cdf(samples[i]);
        d = std::max({d, std::abs((i + 1) / n - F), std::abs(F - i / n)});
    }
    return d;
}

/// Erdos-Renyi style graph with n nodes and edge probability p.
inline FractureGraph random_graph(int n, double p, std::mt19937_64& rng) {
    std::bernoulli_distribution coin(p);
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (coin(rng)) edges.emplace_back(i, j);
    return FractureGraph::from_edges(n, edges);
}

inline FractureGraph path_graph(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return FractureGraph::from_edges(n, e);
}

inline FractureGraph complete_graph(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
    return FractureGraph::from_edges(n, e);
}

/// Network wrapper around hand-placed segments.
inline FractureNetwork network_from_segments(const std::vector<Segment>& segs, double domain,
                                             double aperture = 3.0) {
    FractureNetwork net;
    net.domain = domain;
    net.config.n = domain;
    net.config.alpha = 2.5 * domain;
    for (std::size_t i = 0; i < segs.size(); ++i) {
        Fracture f;
        f.id = static_cast<int>(i);
        f.segment = segs[i];
        f.center = 0.5 * (segs[i].a + segs[i].b);
        f.length = std::hypot(segs[i].b.x - segs[i].a.x, segs[i].b.y - segs[i].a.y);
        f.aperture = aperture;
        net.fractures.push_back(f);
    }
    return net;
}

} // namespace fracnet::testing
