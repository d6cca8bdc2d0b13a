#include "fracnet/advection.hpp"
#include "fracnet/config.hpp"
#include "fracnet/error.hpp"
#include "fracnet/harness.hpp"
#include "fracnet/io.hpp"
#include "fracnet/lbm.hpp"
#include "fracnet/metrics.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <chrono>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace fracnet;

namespace {

struct Common {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> set;
    std::string out_dir;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--config", c.config, "key=value config file")->check(CLI::ExistingFile);
    cmd->add_option("--seed", c.seed, "overrides the config seed");
    cmd->add_option("--set", c.set, "override one config key, key=value (repeatable)");
    cmd->add_option("--out-dir", c.out_dir, "output directory (default ./runs/<timestamp>)");
}

std::string timestamp() {
    const std::time_t t = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y%m%d-%H%M%S", std::localtime(&t));
    return buf;
}

RunConfig resolve_config(const Common& c) {
    RunConfig cfg = c.config.empty() ? parse_config_text("") : parse_config(c.config);
    for (const auto& kv : c.set) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw ValidationError("--set expects key=value, got '" + kv + "'");
        set_config_value(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (c.seed) cfg.generator.seed = *c.seed;
    validate(cfg.generator);
    validate(cfg.run);
    return cfg;
}

fs::path resolve_out_dir(const Common& c, const std::string& out_file) {
    if (!c.out_dir.empty()) return c.out_dir;
    if (!out_file.empty()) {
        const fs::path parent = fs::path(out_file).parent_path();
        return parent.empty() ? fs::path(".") : parent;
    }
    return fs::path("runs") / timestamp();
}

class Manifest {
public:
    Manifest(std::string command, int argc, char** argv) : start_(std::chrono::steady_clock::now()) {
        doc_["command"] = std::move(command);
        std::vector<std::string> args(argv, argv + argc);
        doc_["argv"] = args;
        doc_["tool_version"] = FRACNET_VERSION;
        doc_["started_at"] = timestamp();
        doc_["outputs"] = json::array();
    }

    void set_config(const RunConfig& cfg) {
        json c = json::object();
        std::istringstream in(format_config(cfg));
        for (std::string line; std::getline(in, line);) {
            const auto eq = line.find('=');
            if (eq != std::string::npos) c[line.substr(0, eq)] = line.substr(eq + 1);
        }
        doc_["config"] = c;
        doc_["config_text"] = format_config(cfg);
        doc_["seed"] = cfg.generator.seed;
    }

    void output(const fs::path& p) { doc_["outputs"].push_back(p.generic_string()); }
    json& operator[](const char* key) { return doc_[key]; }

    void write(const fs::path& path) {
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        doc_["wall_clock_seconds"] = secs;
        io::write_text(path, doc_.dump(2) + "\n");
        std::cout << "manifest: " << path.generic_string() << "\n";
    }

private:
    json doc_;
    std::chrono::steady_clock::time_point start_;
};

FractureNetwork load_or_generate(const std::string& network_path, const RunConfig& cfg) {
    if (!network_path.empty()) return io::read_network_csv(network_path, cfg.generator);
    return generate_network(cfg.generator);
}

FractureGraph load_graph(const std::string& edges, const std::string& network_path, const RunConfig& cfg) {
    if (!edges.empty()) return io::read_edge_list(edges);
    return build_graph(load_or_generate(network_path, cfg));
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::istringstream in(text);
    for (std::string tok; std::getline(in, tok, ',');) {
        try {
            out.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw ValidationError("not a number in list: '" + tok + "'");
        }
    }
    return out;
}

// "2:8,8:2" -> {{2, 8}, {8, 2}}
std::vector<std::vector<double>> parse_pairs(const std::string& text) {
    std::vector<std::vector<double>> out;
    std::istringstream in(text);
    for (std::string tok; std::getline(in, tok, ',');) {
        const auto colon = tok.find(':');
        if (colon == std::string::npos) throw ValidationError("expected HG:BG pairs, got '" + tok + "'");
        out.push_back({std::stod(tok.substr(0, colon)), std::stod(tok.substr(colon + 1))});
    }
    return out;
}

std::vector<std::string> permeability_header() {
    std::vector<std::string> h{"source", "K", "v_avg", "grad_p", "mu", "tau", "nu", "rho_mean", "iterations", "converged"};
    for (const auto& k : config_keys()) h.push_back(k);
    return h;
}

std::vector<std::string> permeability_row(const std::string& source, const lbm::PermeabilityResult& p,
                                          const lbm::FlowField& flow, const RunConfig& cfg) {
    using io::format_double;
    std::vector<std::string> row{source,
                                 format_double(p.K),
                                 format_double(p.v_avg),
                                 format_double(p.grad_p),
                                 format_double(p.mu),
                                 format_double(p.tau),
                                 format_double(p.nu),
                                 format_double(p.rho_mean),
                                 std::to_string(flow.iterations),
                                 flow.converged ? "1" : "0"};
    std::map<std::string, std::string> values;
    std::istringstream in(format_config(cfg));
    for (std::string line; std::getline(in, line);) {
        const auto eq = line.find('=');
        if (eq != std::string::npos) values[line.substr(0, eq)] = line.substr(eq + 1);
    }
    for (const auto& k : config_keys()) {
        std::string v = values[k];
        std::replace(v.begin(), v.end(), ',', ';');
        row.push_back(v);
    }
    return row;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fracture network generation, graph analysis, advection and lattice-Boltzmann flow"};
    app.set_version_flag("--version", FRACNET_VERSION);
    app.require_subcommand(1);

    Common c;
    std::string out, network, edges, mask_path, kind = "gamma", grid;
    int realizations = 5;
    std::uint64_t master_seed = 1;
    std::optional<int> workers;

    auto* generate = app.add_subcommand("generate", "generate a fracture network");
    add_common(generate, c);
    generate->add_option("--out", out, "network CSV path");

    auto* graph = app.add_subcommand("graph", "build the fracture graph");
    add_common(graph, c);
    graph->add_option("--network", network, "network CSV (generated from the config when absent)");
    graph->add_option("--out", out, "edge list path");

    auto* metrics = app.add_subcommand("metrics", "graph metrics");
    add_common(metrics, c);
    metrics->add_option("--network", network, "network CSV");
    metrics->add_option("--edges", edges, "edge list (takes precedence over --network)");

    auto* advect = app.add_subcommand("advect", "steady-state advection on the graph");
    add_common(advect, c);
    advect->add_option("--network", network, "network CSV");
    advect->add_option("--edges", edges, "edge list (takes precedence over --network)");

    auto* lbm_cmd = app.add_subcommand("lbm", "lattice-Boltzmann flow and permeability");
    add_common(lbm_cmd, c);
    lbm_cmd->add_option("--network", network, "network CSV");
    lbm_cmd->add_option("--mask", mask_path, "PGM mask (takes precedence over --network)");
    lbm_cmd->add_option("--workers", workers, "threads for the lattice update");

    auto* sweep = app.add_subcommand("sweep", "Monte Carlo ensembles");
    add_common(sweep, c);
    sweep->add_option("--kind", kind, "gamma | azimuth | hub-growth | correlation")
        ->check(CLI::IsMember({"gamma", "azimuth", "hub-growth", "correlation"}));
    sweep->add_option("--grid", grid, "comma-separated values, or HG:BG pairs for hub-growth");
    sweep->add_option("--realizations", realizations, "realizations per grid point");
    sweep->add_option("--master-seed", master_seed, "seed the realization seeds derive from");
    sweep->add_option("--workers", workers, "parallel realizations");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        if (rc == 0) return 0;
        std::cerr << app.help();
        return 1;
    }

    CLI::App* cmd = app.get_subcommands().front();
    try {
        RunConfig cfg = resolve_config(c);
        if (workers) cfg.run.workers = *workers;
        Manifest manifest(cmd->get_name(), argc, argv);
        manifest.set_config(cfg);

        if (cmd == generate) {
            const fs::path dir = resolve_out_dir(c, out);
            const fs::path path = out.empty() ? dir / "network.csv" : fs::path(out);
            const auto net = generate_network(cfg.generator);
            io::write_network_csv(net, path);
            io::write_text(dir / "config.txt", format_config(cfg));
            manifest.output(path);
            manifest.output(dir / "config.txt");
            manifest["n_fractures"] = net.size();
            manifest.write(out.empty() ? dir / "manifest.json" : fs::path(out + ".manifest.json"));
            std::cout << "fractures: " << net.size() << " percolates: " << (percolates(net) ? "yes" : "no") << "\n";
        } else if (cmd == graph) {
            const fs::path dir = resolve_out_dir(c, out);
            const fs::path path = out.empty() ? dir / "edges.csv" : fs::path(out);
            const auto net = load_or_generate(network, cfg);
            if (network.empty()) {
                io::write_network_csv(net, dir / "network.csv");
                manifest.output(dir / "network.csv");
            }
            const auto g = build_graph(net);
            io::write_edge_list(g, path);
            manifest.output(path);
            manifest["n_nodes"] = g.n_nodes();
            manifest["n_edges"] = g.edge_count();
            manifest.write(out.empty() ? dir / "manifest.json" : fs::path(out + ".manifest.json"));
            std::cout << "nodes: " << g.n_nodes() << " edges: " << g.edge_count() << "\n";
        } else if (cmd == metrics) {
            const fs::path dir = resolve_out_dir(c, "");
            const auto g = load_graph(edges, network, cfg);
            const auto report = compute_metrics(g, cfg.run.census_cap);
            io::write_metrics(report, dir);
            for (const char* f : {"degree_hist.csv", "ck.csv", "census.csv", "distances.csv", "summary.csv"})
                manifest.output(dir / f);
            manifest["C"] = report.C;
            if (report.paths.mean_length) manifest["L"] = *report.paths.mean_length;
            manifest.write(dir / "manifest.json");
            std::cout << "C: " << report.C << " L: "
                      << (report.paths.mean_length ? io::format_double(*report.paths.mean_length) : "absent") << "\n";
        } else if (cmd == advect) {
            const fs::path dir = resolve_out_dir(c, "");
            const auto g = load_graph(edges, network, cfg);
            std::vector<int> sources, sinks;
            default_source_sink(g.n_nodes(), sources, sinks);
            SteadyOptions so;
            so.tol = cfg.run.advect_tol;
            const auto r = solve_steady(g, sources, sinks, so);
            std::vector<char> unreached(g.n_nodes(), 0);
            for (int i : r.unreached) unreached[i] = 1;
            std::vector<double> values;
            for (int i = 0; i < g.n_nodes(); ++i)
                if (!unreached[i]) values.push_back(r.u[i]);
            io::write_steady_state(r.u, dir / "steady.csv");
            io::write_histogram(node_value_distribution(values), dir / "histogram.csv");
            manifest.output(dir / "steady.csv");
            manifest.output(dir / "histogram.csv");
            manifest["steps"] = r.steps;
            manifest["dt"] = r.dt;
            manifest["unreached"] = r.unreached;
            manifest.write(dir / "manifest.json");
            std::cout << "steps: " << r.steps << " unreached: " << r.unreached.size() << "\n";
        } else if (cmd == lbm_cmd) {
            const fs::path dir = resolve_out_dir(c, "");
            lbm::Mask mask = !mask_path.empty() ? io::read_pgm(mask_path)
                                                : lbm::rasterize(load_or_generate(network, cfg), cfg.run.grid_n);
            const lbm::BoundaryConfig bc{lbm::BoundaryKind::PressureX, cfg.run.rho_in, cfg.run.rho_out};
            lbm::Lattice lattice(mask, bc, cfg.run.workers);
            lattice.init_rest();
            lbm::RunOptions ro;
            ro.tau = cfg.run.tau;
            ro.tol = cfg.run.tol;
            ro.max_iters = cfg.run.max_iters;
            const auto flow = lbm::run_to_steady(lattice, ro);
            const auto perm = lbm::permeability(flow, bc, cfg.run.tau);
            io::write_pgm(mask, dir / "mask.pgm");
            io::write_flow_fields(flow, dir);
            io::append_csv_row(dir / "permeability.csv", permeability_header(),
                               permeability_row(mask_path.empty() ? (network.empty() ? "generated" : network) : mask_path,
                                                perm, flow, cfg));
            for (const char* f : {"mask.pgm", "vx.csv", "vy.csv", "rho.csv", "speed_log10.csv", "permeability.csv"})
                manifest.output(dir / f);
            manifest["K"] = perm.K;
            manifest["iterations"] = flow.iterations;
            manifest["converged"] = flow.converged;
            manifest["boundary"] = "pressure-x equilibrium inlet/outlet, halfway bounce-back";
            manifest.write(dir / "manifest.json");
            std::cout << "K: " << io::format_double(perm.K) << " iterations: " << flow.iterations
                      << " converged: " << (flow.converged ? "yes" : "no") << "\n";
            if (!flow.converged) throw NonConvergence("lattice did not converge within max_iters");
        } else if (cmd == sweep) {
            const fs::path dir = resolve_out_dir(c, "");
            SweepSpec spec;
            spec.base = cfg.generator;
            spec.options = cfg.run;
            spec.realizations = realizations;
            spec.master_seed = master_seed;
            SweepResult result;
            if (kind == "gamma" || kind == "correlation") {
                spec.vary = {"gamma"};
                for (double v : parse_list(grid.empty() ? "0.55,0.70,0.85" : grid)) spec.grid.push_back({v});
            } else if (kind == "azimuth") {
                spec.vary = {"azimuth"};
                for (double v : parse_list(grid.empty() ? "0,30,60,90" : grid)) spec.grid.push_back({v});
            } else {
                spec.vary = {"hub_growth", "back_growth"};
                spec.grid = parse_pairs(grid.empty() ? "2:8,8:2" : grid);
            }
            if (kind == "gamma") result = sweep_gamma(spec);
            else if (kind == "azimuth") result = sweep_azimuth(spec);
            else if (kind == "hub-growth") result = sweep_hub_growth(spec);
            else {
                spec.stages.lbm = true;
                result = run_sweep(spec);
                const auto corr = correlate_L_vs_K(collect_L_K({result}));
                write_correlation(corr, dir);
                manifest.output(dir / "scatter_L_K.csv");
                manifest.output(dir / "correlation.txt");
                result.verdicts.push_back("spearman(L, K) = " +
                                          (corr.spearman ? io::format_double(*corr.spearman) : std::string("absent")));
            }
            write_sweep(result, dir);
            manifest.output(dir / "sweep.csv");
            manifest.output(dir / "report.txt");
            manifest["kind"] = kind;
            manifest["master_seed"] = master_seed;
            manifest["realizations"] = realizations;
            manifest["verdicts"] = result.verdicts;
            manifest.write(dir / "manifest.json");
            for (const auto& v : result.verdicts) std::cout << v << "\n";
        }
        return 0;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
