#pragma once

#include "fracnet/geometry.hpp"
#include "fracnet/rng.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fracnet {

struct JointSet {
    double mean_deg = 0.0;
    double spread_deg = 5.0;
    friend bool operator==(const JointSet&, const JointSet&) = default;
};

enum class ApertureMode { Fixed, UniformRange };

/// Threshold: stop at the first fracture that makes the network span the
/// domain along x. FixedCount: run all generations.
enum class GenerationMode { Threshold, FixedCount };

/// Generator parameters. Field names double as config-file keys.
struct GeneratorConfig {
    int n_g = 200;
    double n = 300.0;
    int njs = 2;
    double gamma = 0.55;
    double alpha = 750.0; // 5 n / 2
    int hub_growth = 3;
    int back_growth = 2;
    int n_fz = 1;
    std::vector<JointSet> joint_set_azimuths{{0.0, 5.0}, {90.0, 5.0}};
    double aperture_mean = 3.0;
    ApertureMode aperture_mode = ApertureMode::Fixed;
    std::uint64_t seed = 1;
    double l_min = 2.0;
    GenerationMode mode = GenerationMode::Threshold;
    /// FixedCount only: fail unless the final network spans along x.
    bool require_spanning = false;

    friend bool operator==(const GeneratorConfig&, const GeneratorConfig&) = default;
};

/// Throws ValidationError naming the first violated invariant.
void validate(const GeneratorConfig& cfg);

/// Evenly spaced sets over [0, 180) with the default +-5 degree spread.
std::vector<JointSet> default_joint_sets(int njs);

struct HubSpec {
    Vec2 center;
    double radius = 10.0;
};

enum class FractureKind { Hub, Background };

struct Fracture {
    int id = 0;
    Vec2 center;
    double length = 0.0;  // sampled length, before clipping
    double azimuth = 0.0; // degrees
    double aperture = 0.0;
    FractureKind kind = FractureKind::Background;
    std::optional<int> hub_id;
    Segment segment; // clipped to the domain

    friend bool operator==(const Fracture&, const Fracture&) = default;
};

/// Unclipped endpoints center +- (length / 2) (cos az, sin az).
Segment fracture_segment(Vec2 center, double length, double azimuth_deg);

struct FractureNetwork {
    std::vector<Fracture> fractures; // creation order
    double domain = 0.0;             // side of the square box [0, domain]^2
    GeneratorConfig config;
    std::vector<HubSpec> hubs;

    std::size_t size() const { return fractures.size(); }
    bool empty() const { return fractures.empty(); }
};

/// Inverse-CDF sample of p(l) ~ l^-gamma truncated to [l_min, l_max].
/// Throws DomainError when gamma == 1 (see sample_fracture_length_log).
double sample_fracture_length(double gamma, double l_min, double l_max, double u);

/// gamma == 1 branch: p(l) ~ 1/l on [l_min, l_max].
double sample_fracture_length_log(double l_min, double l_max, double u);

/// Truncated power-law CDF; the analytic counterpart of the sampler.
double fracture_length_cdf(double gamma, double l_min, double l_max, double l);

std::vector<HubSpec> place_hubs(const GeneratorConfig& cfg, Rng& rng);

enum class AzimuthKind { Hub, BackgroundWithSets, BackgroundFree };

double sample_azimuth(AzimuthKind kind, const std::vector<JointSet>& sets, Rng& rng);

FractureNetwork generate_network(const GeneratorConfig& cfg);

std::string to_string(FractureKind kind);
std::string to_string(ApertureMode mode);
std::string to_string(GenerationMode mode);

} // namespace fracnet
