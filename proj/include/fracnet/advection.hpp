#pragma once

#include "fracnet/graph.hpp"

#include <cstdint>
#include <vector>

namespace fracnet {

/// Sparse rows of L_ij = A_ij - k_i delta_ij, diagonal stored first in each row.
class LaplacianView {
public:
    explicit LaplacianView(const FractureGraph& g);

    int size() const { return static_cast<int>(row_ptr_.size()) - 1; }
    int diagonal(int i) const { return val_[row_ptr_[i]]; }
    int entry(int i, int j) const;
    long long row_sum(int i) const;
    /// out_i = sum_j L_ij u_j
    void apply(const std::vector<double>& u, std::vector<double>& out) const;
    /// Upper bound on the spectral radius: max over edges of k_i + k_j.
    int spectral_bound() const { return spectral_bound_; }

private:
    std::vector<int> row_ptr_;
    std::vector<int> col_;
    std::vector<int> val_;
    int spectral_bound_ = 0;
};

LaplacianView laplacian(const FractureGraph& g);

struct AdvectionState {
    std::vector<double> u;
    std::vector<int> sources;
    std::vector<int> sinks;
    double u_src = 10.0;
    double u_snk = -10.0;
    double epsilon = 1.0;
    double dt = 0.1;
    std::int64_t t = 0;

    /// State with every node at zero except the clamped ones.
    static AdvectionState init(int n_nodes, std::vector<int> sources, std::vector<int> sinks,
                               double u_src = 10.0, double u_snk = -10.0);
};

/// Largest admissible Euler step for the given Laplacian (exclusive).
double max_stable_dt(const LaplacianView& lap, double epsilon);

/// One synchronous explicit Euler step of du/dt = eps L u; clamped nodes keep
/// their values. Throws StabilityError when dt is not below max_stable_dt.
void advect_step(AdvectionState& state, const LaplacianView& lap);

struct SteadyOptions {
    double u_src = 10.0;
    double u_snk = -10.0;
    double epsilon = 1.0;
    double dt = 0.0; // 0 selects 0.9 * max_stable_dt
    double tol = 1e-10;
    std::int64_t max_steps = 10'000'000;
};

struct SteadyResult {
    std::vector<double> u;
    std::vector<int> unreached; // free nodes with no path to a clamped node (held at 0)
    std::int64_t steps = 0;
    double dt = 0.0;
    double max_defect = 0.0; // max |u_i - mean(u_neighbors)| over free nodes
};

/// Iterates advect_step until every free node is within `tol` of the mean of its
/// neighbors. Throws NonConvergence after max_steps.
SteadyResult solve_steady(const FractureGraph& g, const std::vector<int>& sources, const std::vector<int>& sinks,
                          const SteadyOptions& opt = {});

/// First and last ten nodes in creation order; first/last 10% (at least one)
/// when fewer than 25 nodes.
void default_source_sink(int n_nodes, std::vector<int>& sources, std::vector<int>& sinks);

struct Histogram {
    std::vector<double> centers;
    std::vector<double> counts;
    std::vector<double> frequency;
};

struct HistogramBins {
    double lo = -10.5;
    double hi = 10.5;
    int n = 21;
};

/// Values outside [lo, hi] fall into the end bins.
Histogram node_value_distribution(const std::vector<double>& values, const HistogramBins& bins = {});

/// Bin-wise mean of histograms sharing the same bins.
Histogram mean_histogram(const std::vector<Histogram>& hs);

/// eps (u_i - u_j) for every edge i < j.
std::vector<double> edge_fluxes(const FractureGraph& g, const std::vector<double>& u, double epsilon = 1.0);

} // namespace fracnet
