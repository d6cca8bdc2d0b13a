#include "fracnet/config.hpp"

#include "fracnet/error.hpp"
#include "fracnet/io.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace fracnet {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos == v.size()) return d;
    } catch (const std::exception&) {
    }
    throw ValidationError(key + ": expected a number, got '" + v + "'");
}

template <class Int>
Int parse_int(const std::string& key, const std::string& v) {
    Int out{};
    auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc() || res.ptr != v.data() + v.size())
        throw ValidationError(key + ": expected an integer, got '" + v + "'");
    return out;
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ValidationError(key + ": expected true/false, got '" + v + "'");
}

std::vector<JointSet> parse_joint_sets(const std::string& v) {
    std::vector<JointSet> sets;
    if (trim(v).empty()) return sets;
    std::istringstream in(v);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = trim(item);
        const auto colon = item.find(':');
        JointSet js;
        js.mean_deg = parse_double("joint_set_azimuths", trim(item.substr(0, colon)));
        if (colon != std::string::npos) js.spread_deg = parse_double("joint_set_azimuths", trim(item.substr(colon + 1)));
        sets.push_back(js);
    }
    return sets;
}

} // namespace

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys{
        "n_g",       "n",          "njs",     "gamma",   "alpha",      "hub_growth",       "back_growth",
        "n_fz",      "joint_set_azimuths",    "aperture_mean",         "aperture_mode",    "seed",
        "l_min",     "mode",       "require_spanning",   "grid_n",     "tau",              "rho_in",
        "rho_out",   "tol",        "max_iters",          "workers",    "advect_tol",       "census_cap"};
    return keys;
}

std::string format_joint_sets(const std::vector<JointSet>& sets) {
    std::string s;
    for (std::size_t i = 0; i < sets.size(); ++i) {
        if (i) s += ',';
        s += io::format_double(sets[i].mean_deg) + ':' + io::format_double(sets[i].spread_deg);
    }
    return s;
}

void set_config_value(RunConfig& cfg, const std::string& key, const std::string& value) {
    GeneratorConfig& g = cfg.generator;
    PipelineOptions& r = cfg.run;
    const std::string v = trim(value);
    if (key == "n_g") g.n_g = parse_int<int>(key, v);
    else if (key == "n") g.n = parse_double(key, v);
    else if (key == "njs") g.njs = parse_int<int>(key, v);
    else if (key == "gamma") g.gamma = parse_double(key, v);
    else if (key == "alpha") g.alpha = parse_double(key, v);
    else if (key == "hub_growth") g.hub_growth = parse_int<int>(key, v);
    else if (key == "back_growth") g.back_growth = parse_int<int>(key, v);
    else if (key == "n_fz") g.n_fz = parse_int<int>(key, v);
    else if (key == "joint_set_azimuths") g.joint_set_azimuths = parse_joint_sets(v);
    else if (key == "aperture_mean") g.aperture_mean = parse_double(key, v);
    else if (key == "aperture_mode") {
        if (v == "fixed") g.aperture_mode = ApertureMode::Fixed;
        else if (v == "uniform-range") g.aperture_mode = ApertureMode::UniformRange;
        else throw ValidationError("aperture_mode: expected fixed or uniform-range, got '" + v + "'");
    } else if (key == "seed") g.seed = parse_int<std::uint64_t>(key, v);
    else if (key == "l_min") g.l_min = parse_double(key, v);
    else if (key == "mode") {
        if (v == "threshold") g.mode = GenerationMode::Threshold;
        else if (v == "fixed") g.mode = GenerationMode::FixedCount;
        else throw ValidationError("mode: expected threshold or fixed, got '" + v + "'");
    } else if (key == "require_spanning") g.require_spanning = parse_bool(key, v);
    else if (key == "grid_n") r.grid_n = parse_int<int>(key, v);
    else if (key == "tau") r.tau = parse_double(key, v);
    else if (key == "rho_in") r.rho_in = parse_double(key, v);
    else if (key == "rho_out") r.rho_out = parse_double(key, v);
    else if (key == "tol") r.tol = parse_double(key, v);
    else if (key == "max_iters") r.max_iters = parse_int<std::int64_t>(key, v);
    else if (key == "workers") r.workers = parse_int<int>(key, v);
    else if (key == "advect_tol") r.advect_tol = parse_double(key, v);
    else if (key == "census_cap") r.census_cap = parse_int<std::uint64_t>(key, v);
    else throw ValidationError("unknown key '" + key + "'");
    cfg.explicit_keys.insert(key);
}

void validate(const PipelineOptions& r) {
    auto fail = [](const std::string& what) { throw ValidationError("invalid config: " + what); };
    if (r.grid_n < 16) fail("grid_n must be >= 16");
    if (!(r.tau > 0.5)) fail("tau must be > 0.5");
    if (!(r.rho_in > 0.0) || !(r.rho_out > 0.0)) fail("rho_in and rho_out must be > 0");
    if (!(r.rho_in > r.rho_out)) fail("rho_in must exceed rho_out");
    if (!(r.tol > 0.0)) fail("tol must be > 0");
    if (r.max_iters < 1) fail("max_iters must be >= 1");
    if (r.workers < 1) fail("workers must be >= 1");
    if (!(r.advect_tol > 0.0)) fail("advect_tol must be > 0");
}

RunConfig parse_config_text(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("expected key=value", lineno);
        const std::string key = trim(line.substr(0, eq));
        if (std::find(config_keys().begin(), config_keys().end(), key) == config_keys().end())
            throw ParseError("unknown key '" + key + "'", lineno);
        if (cfg.explicit_keys.count(key)) throw ParseError("duplicate key '" + key + "'", lineno);
        try {
            set_config_value(cfg, key, line.substr(eq + 1));
        } catch (const ParseError&) {
            throw;
        } catch (const ValidationError& e) {
            throw ParseError(e.what(), lineno);
        }
    }
    GeneratorConfig& g = cfg.generator;
    if (!cfg.explicit_keys.count("alpha")) g.alpha = 2.5 * g.n;
    if (!cfg.explicit_keys.count("joint_set_azimuths")) g.joint_set_azimuths = default_joint_sets(g.njs);
    else if (!cfg.explicit_keys.count("njs")) g.njs = static_cast<int>(g.joint_set_azimuths.size());
    validate(g);
    validate(cfg.run);
    return cfg;
}

RunConfig parse_config(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path)) throw ValidationError("config file not found: " + path.string());
    return parse_config_text(io::read_text(path));
}

std::string format_config(const RunConfig& cfg) {
    const GeneratorConfig& g = cfg.generator;
    const PipelineOptions& r = cfg.run;
    using io::format_double;
    std::string s;
    auto put = [&](const std::string& k, const std::string& v) { s += k + '=' + v + '\n'; };
    put("n_g", std::to_string(g.n_g));
    put("n", format_double(g.n));
    put("njs", std::to_string(g.njs));
    put("gamma", format_double(g.gamma));
    put("alpha", format_double(g.alpha));
    put("hub_growth", std::to_string(g.hub_growth));
    put("back_growth", std::to_string(g.back_growth));
    put("n_fz", std::to_string(g.n_fz));
    put("joint_set_azimuths", format_joint_sets(g.joint_set_azimuths));
    put("aperture_mean", format_double(g.aperture_mean));
    put("aperture_mode", to_string(g.aperture_mode));
    put("seed", std::to_string(g.seed));
    put("l_min", format_double(g.l_min));
    put("mode", to_string(g.mode));
    put("require_spanning", g.require_spanning ? "true" : "false");
    put("grid_n", std::to_string(r.grid_n));
    put("tau", format_double(r.tau));
    put("rho_in", format_double(r.rho_in));
    put("rho_out", format_double(r.rho_out));
    put("tol", format_double(r.tol));
    put("max_iters", std::to_string(r.max_iters));
    put("workers", std::to_string(r.workers));
    put("advect_tol", format_double(r.advect_tol));
    put("census_cap", std::to_string(r.census_cap));
    return s;
}

} // namespace fracnet
