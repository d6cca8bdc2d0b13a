#pragma once

#include "fracnet/graph.hpp"
#include "fracnet/stats.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace fracnet {

/// Local clustering c_i: edges among the neighbors of i over k_i (k_i - 1) / 2,
/// and 0 when k_i <= 1.
double local_clustering(const FractureGraph& g, int i);

/// Mean of local_clustering over all nodes.
double clustering_coefficient(const FractureGraph& g);

struct DegreeBin {
    int k = 0;
    int count = 0;
    double frequency = 0.0;
};

struct DegreeDistribution {
    std::vector<DegreeBin> bins; // ascending k, nonzero counts only
    /// log10(frequency) vs log10(k) over bins with k >= 2; needs 3 such bins.
    std::optional<LinearFit> fit;
};

DegreeDistribution degree_distribution(const FractureGraph& g);

struct PathStats {
    std::optional<double> mean_length; // absent without edges
    std::vector<int> distances;        // row-major N x N hop counts, -1 = unreachable
    double giant_fraction = 0.0;
    int n = 0;

    int distance(int i, int j) const { return distances[static_cast<std::size_t>(i) * n + j]; }
};

/// BFS from every node; the mean runs over reachable unordered pairs.
PathStats mean_path_length(const FractureGraph& g);

/// Connected induced 4-node classes in canonical order.
enum class Motif4 { Path = 0, Star, Paw, Cycle, Diamond, Clique };
inline constexpr std::array<std::string_view, 6> kMotif4Names{"path", "star", "paw", "cycle", "diamond", "clique"};

using Census4 = std::array<std::uint64_t, 6>;

inline constexpr std::uint64_t kDefaultCensusCap = 100'000'000;

/// Classifies a connected 4-node induced subgraph by its edge count and maximum degree.
Motif4 classify_motif4(int edges, int max_degree);

/// ESU enumeration of connected induced 4-node subgraphs. Throws ResourceError
/// once more than `cap` subgraphs have been found.
Census4 subgraph_census4(const FractureGraph& g, std::uint64_t cap = kDefaultCensusCap);

struct CkSpectrum {
    std::vector<std::pair<int, double>> points; // (k, mean c) for every degree k >= 2
    /// log10(c) vs log10(k) over points with mean c > 0; needs 3 such points.
    std::optional<LinearFit> fit;
};

CkSpectrum ck_spectrum(const FractureGraph& g);

struct MetricsReport {
    double C = 0.0;
    std::vector<double> c_local;
    DegreeDistribution degree;
    PathStats paths;
    CkSpectrum ck;
    Census4 census{};
};

MetricsReport compute_metrics(const FractureGraph& g, std::uint64_t census_cap = kDefaultCensusCap);

} // namespace fracnet
