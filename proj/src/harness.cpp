#include "fracnet/harness.hpp"

#include "fracnet/error.hpp"
#include "fracnet/io.hpp"
#include "fracnet/stats.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace fracnet {

RealizationResult run_realization(const GeneratorConfig& cfg, const PipelineOptions& opt, const Stages& stages,
                                  const HistogramBins& bins) {
    RealizationResult r;
    r.seed = cfg.seed;
    try {
        r.network = generate_network(cfg);
        r.graph = build_graph(r.network);
        r.n_fractures = static_cast<int>(r.network.size());
        r.n_edges = r.graph.edge_count();

        if (stages.metrics) r.metrics = compute_metrics(r.graph, opt.census_cap);

        if (stages.advect) {
            std::vector<int> sources, sinks;
            default_source_sink(r.graph.n_nodes(), sources, sinks);
            SteadyOptions so;
            so.tol = opt.advect_tol;
            r.steady = solve_steady(r.graph, sources, sinks, so);
            std::vector<char> unreached(r.graph.n_nodes(), 0);
            for (int i : r.steady->unreached) unreached[i] = 1;
            for (int i = 0; i < r.graph.n_nodes(); ++i)
                if (!unreached[i]) r.node_values.push_back(r.steady->u[i]);
            r.histogram = node_value_distribution(r.node_values, bins);
            r.node_variance = variance_population(r.node_values);
            r.node_kurtosis = excess_kurtosis(r.node_values);
        }

        if (stages.lbm) {
            r.mask = lbm::rasterize(r.network, opt.grid_n);
            lbm::BoundaryConfig bc{lbm::BoundaryKind::PressureX, opt.rho_in, opt.rho_out};
            lbm::Lattice lattice(*r.mask, bc, 1);
            lbm::RunOptions ro;
            ro.tau = opt.tau;
            ro.tol = opt.tol;
            ro.max_iters = opt.max_iters;
            const lbm::FlowField flow = lbm::run_to_steady(lattice, ro);
            r.lbm_iterations = flow.iterations;
            r.lbm_converged = flow.converged;
            r.permeability = lbm::permeability(flow, bc, opt.tau);
        }
        r.ok = true;
    } catch (const Error& e) {
        r.failure = e.what();
    }
    return r;
}

GeneratorConfig apply_parameter(GeneratorConfig cfg, const std::string& name, double value) {
    auto as_int = [&](const std::string& field) {
        if (value != std::floor(value)) throw ValidationError(field + " takes integer values");
        return static_cast<int>(value);
    };
    if (name == "gamma") cfg.gamma = value;
    else if (name == "alpha") cfg.alpha = value;
    else if (name == "l_min") cfg.l_min = value;
    else if (name == "aperture_mean") cfg.aperture_mean = value;
    else if (name == "n") cfg.n = value;
    else if (name == "n_g") cfg.n_g = as_int(name);
    else if (name == "hub_growth") cfg.hub_growth = as_int(name);
    else if (name == "back_growth") cfg.back_growth = as_int(name);
    else if (name == "n_fz") cfg.n_fz = as_int(name);
    else if (name == "azimuth") {
        const double spread = cfg.joint_set_azimuths.empty() ? 5.0 : cfg.joint_set_azimuths.front().spread_deg;
        if (cfg.njs <= 1) {
            cfg.njs = 1;
            cfg.joint_set_azimuths = {{value, spread}};
        } else {
            cfg.joint_set_azimuths[0].mean_deg = value;
            cfg.joint_set_azimuths[1].mean_deg = value + 90.0;
        }
    } else {
        throw ValidationError("cannot vary unknown parameter '" + name + "'");
    }
    return cfg;
}

namespace {

void validate_spec(const SweepSpec& spec) {
    if (spec.realizations < 1) throw ValidationError("realizations must be >= 1");
    if (spec.vary.empty()) throw ValidationError("sweep must vary at least one parameter");
    if (spec.grid.empty()) throw ValidationError("sweep grid is empty");
    for (const auto& p : spec.grid) {
        if (p.size() != spec.vary.size())
            throw ValidationError("every grid point needs one value per varied parameter");
        GeneratorConfig cfg = spec.base;
        for (std::size_t k = 0; k < p.size(); ++k) cfg = apply_parameter(cfg, spec.vary[k], p[k]);
        validate(cfg);
    }
    validate(spec.options);
}

template <class F>
std::optional<double> mean_of(const std::vector<RealizationResult>& runs, F get, std::optional<double>* sd) {
    std::vector<double> v;
    for (const auto& r : runs)
        if (r.ok)
            if (auto x = get(r)) v.push_back(*x);
    if (v.empty()) return std::nullopt;
    if (sd) *sd = stddev(v);
    return mean(v);
}

} // namespace

SweepResult run_sweep(const SweepSpec& spec) {
    validate_spec(spec);
    const std::size_t points = spec.grid.size();
    const std::size_t reps = static_cast<std::size_t>(spec.realizations);
    const std::size_t jobs = points * reps;
    std::vector<RealizationResult> results(jobs);

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t j = next++; j < jobs; j = next++) {
            const std::size_t g = j / reps;
            const int rep = static_cast<int>(j % reps);
            GeneratorConfig cfg = spec.base;
            for (std::size_t k = 0; k < spec.vary.size(); ++k) cfg = apply_parameter(cfg, spec.vary[k], spec.grid[g][k]);
            cfg.seed = derive_seed(spec.master_seed, g, static_cast<std::uint64_t>(rep));
            RealizationResult r = run_realization(cfg, spec.options, spec.stages, spec.bins);
            r.grid_index = g;
            r.realization = rep;
            results[j] = std::move(r);
        }
    };
    const int threads = std::max(1, std::min<int>(spec.options.workers, static_cast<int>(jobs)));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    SweepResult out;
    out.spec = spec;
    std::size_t failed = 0;
    for (std::size_t g = 0; g < points; ++g) {
        EnsembleRow row;
        row.point = spec.grid[g];
        for (std::size_t rep = 0; rep < reps; ++rep) {
            RealizationResult& r = results[g * reps + rep];
            if (!r.ok) ++row.failed;
            row.runs.push_back(std::move(r));
        }
        failed += static_cast<std::size_t>(row.failed);
        row.mean_K = mean_of(
            row.runs, [](const RealizationResult& r) -> std::optional<double> {
                return r.permeability ? std::optional(r.permeability->K) : std::nullopt;
            },
            &row.sd_K);
        row.mean_L = mean_of(
            row.runs, [](const RealizationResult& r) -> std::optional<double> {
                return r.metrics ? r.metrics->paths.mean_length : std::nullopt;
            },
            &row.sd_L);
        row.mean_C = mean_of(
            row.runs, [](const RealizationResult& r) -> std::optional<double> {
                return r.metrics ? std::optional(r.metrics->C) : std::nullopt;
            },
            &row.sd_C);
        row.mean_kurtosis = mean_of(row.runs, [](const RealizationResult& r) { return r.node_kurtosis; }, nullptr);
        row.mean_variance = mean_of(row.runs, [](const RealizationResult& r) { return r.node_variance; }, nullptr);
        std::vector<Histogram> hs;
        for (const auto& r : row.runs)
            if (r.ok && r.histogram) hs.push_back(*r.histogram);
        if (!hs.empty()) row.mean_histogram = mean_histogram(hs);
        out.rows.push_back(std::move(row));
    }
    if (2 * failed > jobs)
        throw Error("sweep failed: " + std::to_string(failed) + " of " + std::to_string(jobs) + " realizations failed");
    return out;
}

std::optional<double> trend_spearman(const SweepResult& r) {
    std::vector<double> x, y;
    for (const auto& row : r.rows) {
        if (!row.mean_K) continue;
        x.push_back(row.point.front());
        y.push_back(*row.mean_K);
    }
    return spearman(x, y);
}

bool monotone_non_increasing_K(const SweepResult& r) {
    std::optional<double> prev;
    for (const auto& row : r.rows) {
        if (!row.mean_K) return false;
        if (prev && *row.mean_K > *prev) return false;
        prev = row.mean_K;
    }
    return true;
}

SweepResult sweep_gamma(SweepSpec spec) {
    if (spec.vary != std::vector<std::string>{"gamma"}) throw ValidationError("sweep_gamma varies gamma only");
    for (const auto& p : spec.grid)
        if (!(p.at(0) > 0.0 && p.at(0) <= 1.5)) throw ValidationError("gamma grid values must lie in (0, 1.5]");
    spec.stages.lbm = true;
    std::sort(spec.grid.begin(), spec.grid.end());
    SweepResult r = run_sweep(spec);
    const auto rho = trend_spearman(r);
    r.verdicts.push_back("spearman(mean K, gamma) = " + (rho ? io::format_double(*rho) : std::string("absent")));
    r.verdicts.push_back(std::string("mean K monotone non-increasing in gamma: ") +
                         (monotone_non_increasing_K(r) ? "yes" : "no"));
    return r;
}

SweepResult sweep_azimuth(SweepSpec spec) {
    if (spec.vary != std::vector<std::string>{"azimuth"}) throw ValidationError("sweep_azimuth varies azimuth only");
    if (spec.grid.empty()) throw ValidationError("sweep grid is empty");
    if (spec.base.n_fz != 0) throw ValidationError("sweep_azimuth requires n_fz = 0");
    spec.stages.lbm = true;
    SweepResult r = run_sweep(spec);
    double lo = HUGE_VAL, hi = -HUGE_VAL;
    for (const auto& row : r.rows)
        if (row.mean_K) lo = std::min(lo, *row.mean_K), hi = std::max(hi, *row.mean_K);
    r.verdicts.push_back("permeability spread (max - min of mean K) = " +
                         (hi >= lo ? io::format_double(hi - lo) : std::string("absent")));
    return r;
}

SweepResult sweep_hub_growth(SweepSpec spec) {
    if (spec.vary != std::vector<std::string>{"hub_growth", "back_growth"})
        throw ValidationError("sweep_hub_growth varies (hub_growth, back_growth) pairs");
    spec.stages.advect = true;
    SweepResult r = run_sweep(spec);
    for (const auto& row : r.rows) {
        r.verdicts.push_back("HG=" + io::format_double(row.point[0]) + " BG=" + io::format_double(row.point[1]) +
                             ": mean variance = " +
                             (row.mean_variance ? io::format_double(*row.mean_variance) : std::string("absent")) +
                             ", mean excess kurtosis = " +
                             (row.mean_kurtosis ? io::format_double(*row.mean_kurtosis) : std::string("absent")));
    }
    return r;
}

CorrelationReport correlate_L_vs_K(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 10)
        throw InsufficientData("L-K correlation needs at least 10 pairs, got " + std::to_string(points.size()));
    CorrelationReport rep;
    rep.n = points.size();
    rep.points = points;
    std::vector<double> L, K;
    for (auto [l, k] : points) {
        L.push_back(l);
        K.push_back(k);
    }
    rep.spearman = spearman(L, K);
    rep.pearson = pearson(L, K);
    return rep;
}

std::vector<std::pair<double, double>> collect_L_K(const std::vector<SweepResult>& sweeps) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& s : sweeps)
        for (const auto& row : s.rows)
            for (const auto& r : row.runs)
                if (r.ok && r.metrics && r.metrics->paths.mean_length && r.permeability)
                    pts.emplace_back(*r.metrics->paths.mean_length, r.permeability->K);
    return pts;
}

CorrelationReport correlate_L_vs_K(const SweepSpec& spec) {
    SweepSpec s = spec;
    s.stages.metrics = true;
    s.stages.lbm = true;
    return correlate_L_vs_K(collect_L_K({run_sweep(s)}));
}

void write_sweep(const SweepResult& r, const std::filesystem::path& dir) {
    namespace fs = std::filesystem;
    using io::format_double;
    fs::create_directories(dir);
    auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string{}; };

    std::string csv = "point";
    for (const auto& name : r.spec.vary) csv += ',' + name;
    csv += ",realization,seed,ok,n_fractures,n_edges,K,L,C,degree_slope,ck_slope";
    for (auto name : kMotif4Names) csv += ",census_" + std::string(name);
    csv += ",node_variance,node_kurtosis,lbm_iterations,lbm_converged,failure\n";
    std::string report;
    for (const auto& v : r.verdicts) report += v + '\n';
    report += '\n';

    for (std::size_t g = 0; g < r.rows.size(); ++g) {
        const EnsembleRow& row = r.rows[g];
        const fs::path pdir = dir / ("point_" + std::to_string(g));
        fs::create_directories(pdir);
        report += "point " + std::to_string(g) + " (";
        for (std::size_t k = 0; k < r.spec.vary.size(); ++k)
            report += (k ? ", " : "") + r.spec.vary[k] + "=" + format_double(row.point[k]);
        report += "): mean K = " + opt(row.mean_K) + " sd " + opt(row.sd_K) + "; mean L = " + opt(row.mean_L) +
                  " sd " + opt(row.sd_L) + "; mean C = " + opt(row.mean_C) + "; mean kurtosis = " +
                  opt(row.mean_kurtosis) + "; failed " + std::to_string(row.failed) + '\n';
        if (row.mean_histogram) io::write_histogram(*row.mean_histogram, pdir / "mean_histogram.csv");

        for (const RealizationResult& run : row.runs) {
            csv += std::to_string(g);
            for (double v : row.point) csv += ',' + format_double(v);
            const auto* m = run.metrics ? &*run.metrics : nullptr;
            csv += ',' + std::to_string(run.realization) + ',' + std::to_string(run.seed) + ',' +
                   (run.ok ? "1" : "0") + ',' + std::to_string(run.n_fractures) + ',' + std::to_string(run.n_edges) +
                   ',' + opt(run.permeability ? std::optional(run.permeability->K) : std::nullopt) + ',' +
                   opt(m ? m->paths.mean_length : std::nullopt) + ',' + opt(m ? std::optional(m->C) : std::nullopt) +
                   ',' + opt(m && m->degree.fit ? std::optional(m->degree.fit->slope) : std::nullopt) + ',' +
                   opt(m && m->ck.fit ? std::optional(m->ck.fit->slope) : std::nullopt);
            for (int c = 0; c < 6; ++c) csv += ',' + (m ? std::to_string(m->census[c]) : std::string{});
            csv += ',' + opt(run.node_variance) + ',' + opt(run.node_kurtosis) + ',' +
                   std::to_string(run.lbm_iterations) + ',' + (run.lbm_converged ? "1" : "0") + ',';
            std::string why = run.failure;
            std::replace(why.begin(), why.end(), ',', ';');
            csv += why + '\n';

            if (!run.ok) continue;
            const fs::path rdir = pdir / ("r" + std::to_string(run.realization));
            io::write_network_csv(run.network, rdir / "network.csv");
            io::write_edge_list(run.graph, rdir / "edges.csv");
            if (run.steady) io::write_steady_state(run.steady->u, rdir / "steady.csv");
            if (run.histogram) io::write_histogram(*run.histogram, rdir / "histogram.csv");
            if (run.mask) io::write_pgm(*run.mask, rdir / "mask.pgm");
        }
    }
    io::write_text(dir / "sweep.csv", csv);
    io::write_text(dir / "report.txt", report);
}

void write_correlation(const CorrelationReport& r, const std::filesystem::path& dir) {
    using io::format_double;
    std::string csv = "L,K\n";
    for (auto [l, k] : r.points) csv += format_double(l) + ',' + format_double(k) + '\n';
    io::write_text(dir / "scatter_L_K.csv", csv);
    auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string("absent"); };
    io::write_text(dir / "correlation.txt", "n = " + std::to_string(r.n) + "\nspearman = " + opt(r.spearman) +
                                                "\npearson = " + opt(r.pearson) + '\n');
}

} // namespace fracnet
