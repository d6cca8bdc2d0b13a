// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "fracnet/advection.hpp"
#include "fracnet/harness.hpp"
#include "fracnet/io.hpp"
#include "fracnet/lbm.hpp"
#include "fracnet/metrics.hpp"
#include "fracnet/stats.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>

using namespace fracnet;
using namespace fracnet::testing;
namespace fs = std::filesystem;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

// Fig. 1 defaults at desk scale: n = 128, alpha = 5 n / 2, all generations run,
// networks required to span along x.
GeneratorConfig desk_config() {
    GeneratorConfig c;
    c.n = 128;
    c.alpha = 320;
    c.mode = GenerationMode::FixedCount;
    c.require_spanning = true;
    return c;
}

PipelineOptions desk_options() {
    PipelineOptions o;
    o.grid_n = 128;
    o.tol = 1e-7;
    return o;
}

Verdict poiseuille() {
    const auto t0 = std::chrono::steady_clock::now();
    const int W = 128, H = 128, h = 20;
    lbm::Mask m(W, H);
    for (int y = (H - h) / 2; y < (H - h) / 2 + h; ++y)
        for (int x = 0; x < W; ++x) m.set(x, y, true);
    const lbm::BoundaryConfig bc{lbm::BoundaryKind::PressureX, 1.001, 0.999};
    lbm::Lattice lat(m, bc);
    lat.init_rest();
    lbm::RunOptions ro;
    ro.tau = 1.0;
    ro.tol = 1e-7;
    const auto flow = lbm::run_to_steady(lat, ro);
    const double K = lbm::permeability(flow, bc, 1.0).K;
    const double want = h * h * h / (12.0 * H);
    const double err = std::abs(K - want) / want;
    const double t = seconds_since(t0);
    return {flow.converged && err < 0.05 && t < 120.0,
            "K=" + fmt("%.5f", K) + " analytic=" + fmt("%.5f", want) + " rel.err=" + fmt("%.4f", err) +
                " time=" + fmt("%.1fs", t)};
}

Verdict conservation() {
    lbm::Mask m(64, 64);
    std::fill(m.fluid.begin(), m.fluid.end(), std::uint8_t{1});
    lbm::Lattice lat(m, {lbm::BoundaryKind::Periodic});
    lat.init_uniform(1.0, 0.05, -0.03);
    // Perturb so the flow is not a trivial fixed point.
    for (int y = 20; y < 30; ++y)
        for (int x = 20; x < 30; ++x) lat.set_populations(x, y, lbm::equilibrium(1.05, -0.04, 0.02));
    const double m0 = lat.total_mass();
    for (int k = 0; k < 10000; ++k) lat.step(1.0);
    const double drift = std::abs(lat.total_mass() - m0) / m0;

    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> R(0.5, 2.0), V(-0.3, 0.3);
    double worst = 0.0;
    for (int t = 0; t < 1000; ++t) {
        const double rho = R(rng), vx = V(rng), vy = V(rng);
        const auto f = lbm::equilibrium(rho, vx, vy);
        double s0 = 0, sx = 0, sy = 0;
        for (int i = 0; i < 9; ++i) {
            s0 += f[i];
            sx += f[i] * lbm::kEx[i];
            sy += f[i] * lbm::kEy[i];
        }
        worst = std::max({worst, std::abs(s0 - rho), std::abs(sx - rho * vx), std::abs(sy - rho * vy)});
    }
    return {drift < 1e-10 && worst < 1e-13,
            "mass drift=" + fmt("%.2e", drift) + " over 1e4 steps, max moment error=" + fmt("%.2e", worst)};
}

Verdict graph_oracles() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(7);
    int mismatches = 0;
    for (int t = 0; t < 100; ++t) {
        const auto g = random_graph(4 + t % 9, 0.15 + 0.6 * (t % 5) / 4.0, rng);
        if (std::abs(clustering_coefficient(g) - brute_clustering(g)) > 1e-12) ++mismatches;
        const auto d = floyd_warshall(g);
        double sum = 0;
        long pairs = 0;
        for (int i = 0; i < g.n_nodes(); ++i)
            for (int j = i + 1; j < g.n_nodes(); ++j)
                if (d[i][j] > 0) sum += d[i][j], ++pairs;
        const auto L = mean_path_length(g).mean_length;
        if (pairs == 0 ? L.has_value() : (!L || std::abs(*L - sum / pairs) > 1e-12)) ++mismatches;
        if (subgraph_census4(g) != brute_census(g)) ++mismatches;
    }
    const double t = seconds_since(t0);
    return {mismatches == 0 && t < 30.0,
            std::to_string(mismatches) + " mismatches on 100 graphs (clustering, path length, census), time=" +
                fmt("%.2fs", t)};
}

Verdict advection() {
    const auto path = solve_steady(path_graph(5), {0}, {4});
    const double want[] = {10, 5, 0, -5, -10};
    double path_err = 0;
    for (int i = 0; i < 5; ++i) path_err = std::max(path_err, std::abs(path.u[i] - want[i]));

    std::mt19937_64 rng(11);
    double dense_err = 0, harmonic_err = 0;
    bool bounded = true;
    for (int t = 0; t < 30; ++t) {
        const int n = 6 + (t % 25);
        const auto g = connected_random_graph(n, 0.1, rng);
        std::vector<int> src, snk;
        default_source_sink(n, src, snk);
        SteadyOptions opt;
        opt.tol = 1e-12;
        const auto r = solve_steady(g, src, snk, opt);
        const auto ref = dense_harmonic(g, src, snk, 10.0, -10.0);
        std::vector<char> clamped(n, 0);
        for (int i : src) clamped[i] = 1;
        for (int i : snk) clamped[i] = 1;
        for (int i = 0; i < n; ++i) {
            dense_err = std::max(dense_err, std::abs(r.u[i] - ref[i]));
            bounded &= r.u[i] <= 10.0 + 1e-12 && r.u[i] >= -10.0 - 1e-12;
            if (clamped[i]) continue;
            double m = 0;
            for (int j : g.neighbors(i)) m += r.u[j];
            harmonic_err = std::max(harmonic_err, std::abs(r.u[i] - m / g.degree(i)));
        }
    }
    return {path_err < 1e-8 && dense_err < 1e-8 && harmonic_err < 1e-10 && bounded,
            "path-of-5 err=" + fmt("%.1e", path_err) + ", dense-solve err=" + fmt("%.1e", dense_err) +
                ", harmonic defect=" + fmt("%.1e", harmonic_err) + ", max principle " + (bounded ? "holds" : "violated")};
}

Verdict scale_free() {
    SweepSpec s;
    s.base = desk_config();
    s.options = desk_options();
    s.vary = {"gamma"};
    s.grid = {{0.55}, {0.75}, {0.85}};
    s.realizations = 5;
    const auto r = run_sweep(s);
    int neg = 0, total = 0;
    for (const auto& row : r.rows)
        for (const auto& run : row.runs) {
            ++total;
            if (run.ok && run.metrics && run.metrics->degree.fit && run.metrics->degree.fit->slope < 0) ++neg;
        }
    return {total > 0 && neg >= 0.9 * total,
            std::to_string(neg) + "/" + std::to_string(total) + " runs with negative degree-distribution slope"};
}

SweepResult gamma_sweep() {
    SweepSpec s;
    s.base = desk_config();
    s.options = desk_options();
    s.vary = {"gamma"};
    s.grid = {{0.55}, {0.70}, {0.85}};
    s.realizations = 5;
    return sweep_gamma(s);
}

Verdict gamma_trend(const SweepResult& r, double secs) {
    std::string detail = "mean K:";
    for (const auto& row : r.rows)
        detail += " gamma=" + fmt("%.2f", row.point[0]) + "->" + (row.mean_K ? fmt("%.4f", *row.mean_K) : "absent");
    const bool mono = monotone_non_increasing_K(r);
    detail += ", time=" + fmt("%.0fs", secs);
    return {mono && secs < 1800.0, detail};
}

Verdict lk_correlation(const SweepResult& gamma) {
    SweepSpec s;
    s.base = desk_config();
    s.options = desk_options();
    s.vary = {"n_fz"};
    s.grid = {{0}, {2}, {3}};
    s.realizations = 5;
    s.stages.lbm = true;
    s.master_seed = 2;
    const auto hubs = run_sweep(s);
    const auto rep = correlate_L_vs_K(collect_L_K({gamma, hubs}));
    return {rep.spearman && *rep.spearman < 0.0,
            "spearman(L, K)=" + (rep.spearman ? fmt("%.3f", *rep.spearman) : std::string("absent")) + " over " +
                std::to_string(rep.n) + " realizations (gamma and hub-count sweeps)"};
}

Verdict hub_growth() {
    SweepSpec s;
    s.base = desk_config();
    s.options = desk_options();
    s.stages.metrics = false;
    s.vary = {"hub_growth", "back_growth"};
    s.realizations = 5;
    s.base.n_fz = 3;
    s.grid = {{2, 8}};
    const auto strong = sweep_hub_growth(s);
    s.base.n_fz = 0;
    s.grid = {{8, 2}};
    const auto none = sweep_hub_growth(s);
    const auto ks = strong.rows[0].mean_kurtosis, kn = none.rows[0].mean_kurtosis;
    return {ks && kn && *ks > *kn,
            "mean excess kurtosis: strong hubs (n_fz=3, HG=2, BG=8)=" + (ks ? fmt("%.3f", *ks) : "absent") +
                ", no hubs (n_fz=0, HG=8, BG=2)=" + (kn ? fmt("%.3f", *kn) : "absent")};
}

std::string read_all(const fs::path& dir) {
    std::vector<fs::path> files;
    for (const auto& e : fs::recursive_directory_iterator(dir))
        if (e.is_regular_file()) files.push_back(fs::relative(e.path(), dir));
    std::sort(files.begin(), files.end());
    std::string out;
    for (const auto& f : files) out += f.generic_string() + "\n" + io::read_text(dir / f);
    return out;
}

Verdict determinism() {
    const fs::path root = fs::temp_directory_path() / "fracnet_acceptance_determinism";
    fs::remove_all(root);
    auto stage_artifacts = [&](const fs::path& dir, int workers) {
        GeneratorConfig cfg = desk_config();
        cfg.n_fz = 2;
        cfg.seed = 99;
        const auto net = generate_network(cfg);
        io::write_network_csv(net, dir / "network.csv");
        const auto g = build_graph(net);
        io::write_edge_list(g, dir / "edges.csv");
        io::write_metrics(compute_metrics(g), dir / "metrics");
        std::vector<int> src, snk;
        default_source_sink(g.n_nodes(), src, snk);
        const auto st = solve_steady(g, src, snk);
        io::write_steady_state(st.u, dir / "steady.csv");
        const auto mask = lbm::rasterize(net, 128);
        io::write_pgm(mask, dir / "mask.pgm");
        lbm::Lattice lat(mask, {}, workers);
        lat.init_rest();
        lbm::RunOptions ro;
        ro.tol = 1e-7;
        const auto flow = lbm::run_to_steady(lat, ro);
        io::write_flow_fields(flow, dir / "flow");
        io::write_text(dir / "K.txt", io::format_double(lbm::permeability(flow, {}, 1.0).K));

        SweepSpec s;
        s.base = desk_config();
        s.base.n = 64;
        s.base.alpha = 160;
        s.base.n_g = 100;
        s.options.grid_n = 64;
        s.options.tol = 1e-6;
        s.options.workers = workers;
        s.stages.advect = true;
        s.vary = {"gamma"};
        s.grid = {{0.55}, {0.85}};
        s.realizations = 3;
        write_sweep(sweep_gamma(s), dir / "sweep");
    };
    stage_artifacts(root / "a", 1);
    stage_artifacts(root / "b", 1);
    stage_artifacts(root / "c", 4);
    const std::string a = read_all(root / "a");
    const bool same_rerun = a == read_all(root / "b");
    const bool same_workers = a == read_all(root / "c");
    return {same_rerun && same_workers,
            std::string("rerun ") + (same_rerun ? "identical" : "DIFFERS") + ", 1 vs 4 workers " +
                (same_workers ? "identical" : "DIFFERS") + " (" + std::to_string(a.size()) + " bytes compared)"};
}

} // namespace

int main() {
    int failed = 0;
    auto report = [&](int id, const char* name, const std::function<Verdict()>& run) {
        Verdict v;
        try {
            v = run();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        std::printf("[%s] %d %s: %s\n", v.pass ? "PASS" : "FAIL", id, name, v.detail.c_str());
        std::fflush(stdout);
        failed += !v.pass;
    };

    report(1, "Poiseuille permeability", poiseuille);
    report(2, "LBM conservation and stability", conservation);
    report(3, "graph-metric oracle equivalence", graph_oracles);
    report(4, "advection correctness", advection);
    report(5, "scale-free degree trend", scale_free);

    SweepResult gamma;
    double gamma_secs = 0;
    bool gamma_ok = true;
    std::string gamma_error;
    try {
        const auto t0 = std::chrono::steady_clock::now();
        gamma = gamma_sweep();
        gamma_secs = seconds_since(t0);
    } catch (const std::exception& e) {
        gamma_ok = false;
        gamma_error = e.what();
    }
    report(6, "permeability vs gamma trend", [&] {
        if (!gamma_ok) return Verdict{false, "exception: " + gamma_error};
        return gamma_trend(gamma, gamma_secs);
    });
    report(7, "L-K anti-correlation", [&] {
        if (!gamma_ok) return Verdict{false, "exception: " + gamma_error};
        return lk_correlation(gamma);
    });
    report(8, "hub-growth advection transition", hub_growth);
    report(9, "determinism", determinism);

    std::printf("%d/9 criteria passed\n", 9 - failed);
    return failed == 0 ? 0 : 1;
}
