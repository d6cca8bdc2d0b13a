#include "fracnet/dfn.hpp"

#include "fracnet/error.hpp"
#include "fracnet/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fracnet {

void validate(const GeneratorConfig& c) {
    auto fail = [](const std::string& what) { throw ValidationError("invalid config: " + what); };
    if (!(c.gamma > 0.0)) fail("gamma must be > 0");
    if (!(c.l_min > 0.0)) fail("l_min must be > 0");
    if (!(c.alpha > c.l_min)) fail("alpha must be > l_min");
    if (c.n_g < 1) fail("n_g must be >= 1");
    if (!(c.n >= 16.0)) fail("n must be >= 16");
    if (c.n_fz < 0) fail("n_fz must be >= 0");
    if (c.hub_growth < 1) fail("hub_growth must be >= 1");
    if (c.back_growth < 1) fail("back_growth must be >= 1");
    if (c.njs < 0) fail("njs must be >= 0");
    if (static_cast<int>(c.joint_set_azimuths.size()) != c.njs)
        fail("joint_set_azimuths must have exactly njs entries");
    for (const auto& js : c.joint_set_azimuths)
        if (!(js.spread_deg >= 0.0)) fail("joint_set_azimuths spread must be >= 0");
    if (!(c.aperture_mean > 0.0)) fail("aperture_mean must be > 0");
}

std::vector<JointSet> default_joint_sets(int njs) {
    std::vector<JointSet> sets;
    for (int k = 0; k < njs; ++k) sets.push_back({180.0 * k / njs, 5.0});
    return sets;
}

Segment fracture_segment(Vec2 center, double length, double azimuth_deg) {
    const double az = azimuth_deg * std::numbers::pi / 180.0;
    const Vec2 half{0.5 * length * std::cos(az), 0.5 * length * std::sin(az)};
    return {center - half, center + half};
}

double sample_fracture_length(double gamma, double l_min, double l_max, double u) {
    if (!(gamma > 0.0)) throw DomainError("gamma must be > 0");
    if (gamma == 1.0) throw DomainError("gamma == 1: use sample_fracture_length_log");
    if (!(l_min > 0.0) || !(l_max > l_min)) throw DomainError("need l_max > l_min > 0");
    if (!(u >= 0.0 && u < 1.0)) throw DomainError("u must lie in [0, 1)");
    const double e = 1.0 - gamma;
    const double lo = std::pow(l_min, e);
    const double hi = std::pow(l_max, e);
    return std::clamp(std::pow(lo + u * (hi - lo), 1.0 / e), l_min, l_max);
}

double sample_fracture_length_log(double l_min, double l_max, double u) {
    if (!(l_min > 0.0) || !(l_max > l_min)) throw DomainError("need l_max > l_min > 0");
    if (!(u >= 0.0 && u < 1.0)) throw DomainError("u must lie in [0, 1)");
    return std::clamp(l_min * std::pow(l_max / l_min, u), l_min, l_max);
}

double fracture_length_cdf(double gamma, double l_min, double l_max, double l) {
    if (l <= l_min) return 0.0;
    if (l >= l_max) return 1.0;
    if (gamma == 1.0) return std::log(l / l_min) / std::log(l_max / l_min);
    const double e = 1.0 - gamma;
    return (std::pow(l, e) - std::pow(l_min, e)) / (std::pow(l_max, e) - std::pow(l_min, e));
}

std::vector<HubSpec> place_hubs(const GeneratorConfig& cfg, Rng& rng) {
    constexpr int kRetryCap = 1000;
    std::vector<HubSpec> hubs;
    const double mid = 0.5 * cfg.n;
    const double sd = 0.25 * cfg.n;
    for (int h = 0; h < cfg.n_fz; ++h) {
        HubSpec hub;
        int tries = 0;
        for (;; ++tries) {
            if (tries == kRetryCap) throw GenerationFailed("hub placement exceeded retry cap");
            hub.center = {normal(rng, mid, sd), normal(rng, mid, sd)};
            if (hub.center.x >= 0.0 && hub.center.x <= cfg.n && hub.center.y >= 0.0 && hub.center.y <= cfg.n)
                break;
        }
        hub.radius = std::round(10.0 + 10.0 * uniform01(rng));
        hubs.push_back(hub);
    }
    return hubs;
}

double sample_azimuth(AzimuthKind kind, const std::vector<JointSet>& sets, Rng& rng) {
    switch (kind) {
    case AzimuthKind::Hub:
        return uniform(rng, 0.0, 360.0);
    case AzimuthKind::BackgroundFree:
        return uniform(rng, 0.0, 180.0);
    case AzimuthKind::BackgroundWithSets: {
        if (sets.empty()) return uniform(rng, 0.0, 180.0);
        const auto k = std::uniform_int_distribution<std::size_t>(0, sets.size() - 1)(rng);
        const JointSet& js = sets[k];
        double az = js.mean_deg + uniform(rng, -js.spread_deg, js.spread_deg);
        az = std::fmod(az, 360.0);
        if (az < 0.0) az += 360.0;
        return az >= 360.0 ? 0.0 : az;
    }
    }
    return 0.0;
}

namespace {

class Generator {
public:
    explicit Generator(const GeneratorConfig& cfg) : cfg_(cfg), rng_(cfg.seed), tracker_(cfg.n, Axis::X) {
        net_.domain = cfg.n;
        net_.config = cfg;
    }

    FractureNetwork run() {
        net_.hubs = place_hubs(cfg_, rng_);
        const bool threshold = cfg_.mode == GenerationMode::Threshold;
        for (int t = 1; t <= cfg_.n_g; ++t) {
            if (t % cfg_.hub_growth == 0) {
                for (int h = 0; h < static_cast<int>(net_.hubs.size()); ++h) {
                    spawn_hub(h);
                    if (threshold && tracker_.spans()) return std::move(net_);
                }
            }
            if (t % cfg_.back_growth == 0) {
                spawn_background();
                if (threshold && tracker_.spans()) return std::move(net_);
            }
        }
        if (threshold)
            throw GenerationFailed("network did not reach the percolation threshold within n_g generations");
        if (cfg_.require_spanning && !tracker_.spans())
            throw GenerationFailed("fixed-count network does not span the domain");
        return std::move(net_);
    }

private:
    double sample_length() {
        const double u = uniform01(rng_);
        if (cfg_.gamma == 1.0) return sample_fracture_length_log(cfg_.l_min, cfg_.alpha, u);
        return sample_fracture_length(cfg_.gamma, cfg_.l_min, cfg_.alpha, u);
    }

    double sample_aperture() {
        if (cfg_.aperture_mode == ApertureMode::UniformRange)
            return uniform(rng_, 0.5 * cfg_.aperture_mean, 1.5 * cfg_.aperture_mean);
        return cfg_.aperture_mean;
    }

    void spawn_hub(int h) {
        const HubSpec& hub = net_.hubs[h];
        Vec2 c{normal(rng_, hub.center.x, hub.radius), normal(rng_, hub.center.y, hub.radius)};
        c.x = std::clamp(c.x, 0.0, cfg_.n);
        c.y = std::clamp(c.y, 0.0, cfg_.n);
        const double az = sample_azimuth(AzimuthKind::Hub, {}, rng_);
        push(c, az, FractureKind::Hub, h);
    }

    void spawn_background() {
        const Vec2 c{uniform(rng_, 0.0, cfg_.n), uniform(rng_, 0.0, cfg_.n)};
        const auto kind = cfg_.njs > 0 ? AzimuthKind::BackgroundWithSets : AzimuthKind::BackgroundFree;
        const double az = sample_azimuth(kind, cfg_.joint_set_azimuths, rng_);
        push(c, az, FractureKind::Background, std::nullopt);
    }

    void push(Vec2 center, double az, FractureKind kind, std::optional<int> hub_id) {
        Fracture f;
        f.id = static_cast<int>(net_.fractures.size());
        f.center = center;
        f.azimuth = az;
        f.length = sample_length();
        f.aperture = sample_aperture();
        f.kind = kind;
        f.hub_id = hub_id;
        // The center lies inside the closed box, so the clipped segment is never empty.
        f.segment = *clip_to_box(fracture_segment(center, f.length, az), {0.0, 0.0}, {cfg_.n, cfg_.n});
        tracker_.add(f);
        net_.fractures.push_back(f);
    }

    const GeneratorConfig& cfg_;
    Rng rng_;
    SpanningTracker tracker_;
    FractureNetwork net_;
};

} // namespace

FractureNetwork generate_network(const GeneratorConfig& cfg) {
    validate(cfg);
    return Generator(cfg).run();
}

std::string to_string(FractureKind kind) { return kind == FractureKind::Hub ? "hub" : "background"; }

std::string to_string(ApertureMode mode) { return mode == ApertureMode::Fixed ? "fixed" : "uniform-range"; }

std::string to_string(GenerationMode mode) { return mode == GenerationMode::Threshold ? "threshold" : "fixed"; }

} // namespace fracnet
