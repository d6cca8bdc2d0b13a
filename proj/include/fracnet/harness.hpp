#pragma once

#include "fracnet/advection.hpp"
#include "fracnet/config.hpp"
#include "fracnet/dfn.hpp"
#include "fracnet/lbm.hpp"
#include "fracnet/metrics.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace fracnet {

/// Stages a realization runs after generation and graph construction.
struct Stages {
    bool metrics = true;
    bool advect = false;
    bool lbm = false;
};

struct RealizationResult {
    std::size_t grid_index = 0;
    int realization = 0;
    std::uint64_t seed = 0;
    bool ok = false;
    std::string failure;

    FractureNetwork network;
    FractureGraph graph;
    int n_fractures = 0;
    std::size_t n_edges = 0;

    std::optional<MetricsReport> metrics;
    std::optional<SteadyResult> steady;
    std::vector<double> node_values; // steady values of clamp-reachable nodes
    std::optional<Histogram> histogram;
    std::optional<double> node_variance;
    std::optional<double> node_kurtosis;

    std::optional<lbm::Mask> mask;
    std::optional<lbm::PermeabilityResult> permeability;
    std::int64_t lbm_iterations = 0;
    bool lbm_converged = false;
};

/// Generate, build the graph, then run the requested stages. Failures are
/// captured in the result instead of thrown.
RealizationResult run_realization(const GeneratorConfig& cfg, const PipelineOptions& opt, const Stages& stages,
                                  const HistogramBins& bins = {});

struct SweepSpec {
    GeneratorConfig base;
    /// Parameters varied together; "azimuth" rotates set 1 and keeps set 2
    /// perpendicular, any other name is a numeric GeneratorConfig field.
    std::vector<std::string> vary;
    std::vector<std::vector<double>> grid; // one value per name in `vary`
    int realizations = 5;
    Stages stages;
    PipelineOptions options;
    std::uint64_t master_seed = 1;
    HistogramBins bins;
};

/// Applies one grid value to a copy of `base`.
GeneratorConfig apply_parameter(GeneratorConfig cfg, const std::string& name, double value);

struct EnsembleRow {
    std::vector<double> point;
    std::vector<RealizationResult> runs;
    int failed = 0;

    std::optional<double> mean_K, sd_K;
    std::optional<double> mean_L, sd_L;
    std::optional<double> mean_C, sd_C;
    std::optional<double> mean_kurtosis, mean_variance;
    std::optional<Histogram> mean_histogram;
};

struct SweepResult {
    SweepSpec spec;
    std::vector<EnsembleRow> rows;
    std::vector<std::string> verdicts;
};

/// Runs every (grid point, realization) pair with seeds derived from the
/// master seed; realizations fan out over `options.workers` threads and the
/// result does not depend on the worker count. Throws Error if more than half
/// of the runs fail.
SweepResult run_sweep(const SweepSpec& spec);

/// Permeability vs power-law exponent. Verdict: Spearman sign of mean K vs gamma.
SweepResult sweep_gamma(SweepSpec spec);
/// Permeability vs joint-set azimuth (no hubs). Verdict: spread of mean K.
SweepResult sweep_azimuth(SweepSpec spec);
/// Advection distributions over (hub_growth, back_growth) pairs.
SweepResult sweep_hub_growth(SweepSpec spec);

struct CorrelationReport {
    std::size_t n = 0;
    std::optional<double> spearman;
    std::optional<double> pearson;
    std::vector<std::pair<double, double>> points; // (L, K)
};

/// Rank and linear correlation of (L, K). Throws InsufficientData below 10 pairs.
CorrelationReport correlate_L_vs_K(const std::vector<std::pair<double, double>>& points);
/// Collects (L, K) from every successful realization with both values.
std::vector<std::pair<double, double>> collect_L_K(const std::vector<SweepResult>& sweeps);
CorrelationReport correlate_L_vs_K(const SweepSpec& spec);

/// Spearman correlation of mean K against the first varied parameter.
std::optional<double> trend_spearman(const SweepResult& r);
bool monotone_non_increasing_K(const SweepResult& r);

/// sweep.csv, report.txt and one point_<i>/ directory per grid point.
void write_sweep(const SweepResult& r, const std::filesystem::path& dir);
void write_correlation(const CorrelationReport& r, const std::filesystem::path& dir);

} // namespace fracnet
