#include "doctest.h"

#include "fracnet/dfn.hpp"
#include "fracnet/error.hpp"
#include "fracnet/graph.hpp"
#include "fracnet/io.hpp"
#include "test_support.hpp"

#include <cmath>

using namespace fracnet;
using fracnet::testing::ks_statistic;

namespace {

// Bisection on the truncated power-law CDF written out from its integral.
double inverse_cdf_by_bisection(double gamma, double lo, double hi, double u) {
    auto cdf = [&](double l) {
        const double e = 1.0 - gamma;
        return (std::pow(l, e) - std::pow(lo, e)) / (std::pow(hi, e) - std::pow(lo, e));
    };
    double a = lo, b = hi;
    for (int it = 0; it < 200; ++it) {
        const double m = 0.5 * (a + b);
        (cdf(m) < u ? a : b) = m;
    }
    return 0.5 * (a + b);
}

double normal_cdf(double x, double mu, double sd) { return 0.5 * std::erfc(-(x - mu) / (sd * std::sqrt(2.0))); }

GeneratorConfig fixed_config(int n_fz) {
    GeneratorConfig c;
    c.mode = GenerationMode::FixedCount;
    c.n_fz = n_fz;
    return c;
}

} // namespace

TEST_CASE("fracture length sampler hits the truncation bounds") {
    CHECK(sample_fracture_length(0.55, 1.0, 750.0, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    const double top = sample_fracture_length(0.55, 1.0, 750.0, std::nextafter(1.0, 0.0));
    CHECK(top == doctest::Approx(750.0).epsilon(1e-9));
}

TEST_CASE("fracture length sampler inverts the CDF") {
    const double got = sample_fracture_length(0.55, 1.0, 750.0, 0.5);
    const double want = inverse_cdf_by_bisection(0.55, 1.0, 750.0, 0.5);
    CHECK(std::abs(got - want) < 1e-9);
    for (double g : {0.3, 0.85, 1.4, 2.5}) {
        for (double u : {0.1, 0.37, 0.9}) {
            CHECK(std::abs(sample_fracture_length(g, 2.0, 320.0, u) - inverse_cdf_by_bisection(g, 2.0, 320.0, u)) <
                  1e-9);
        }
    }
}

TEST_CASE("inverse CDF is increasing in u on both sides of gamma = 1") {
    for (double g : {0.55, 1.5}) {
        double prev = 0.0;
        for (int k = 0; k < 100; ++k) {
            const double l = sample_fracture_length(g, 2.0, 320.0, k / 100.0);
            CHECK(l >= prev);
            prev = l;
        }
    }
}

TEST_CASE("fracture length sampler rejects invalid arguments") {
    CHECK_THROWS_AS(sample_fracture_length(1.0, 1.0, 10.0, 0.5), DomainError);
    CHECK_THROWS_AS(sample_fracture_length(0.5, 10.0, 10.0, 0.5), DomainError);
    CHECK_THROWS_AS(sample_fracture_length(0.5, 10.0, 5.0, 0.5), DomainError);
    CHECK_THROWS_AS(sample_fracture_length(0.5, 1.0, 5.0, 1.0), DomainError);
    CHECK(sample_fracture_length_log(1.0, 100.0, 0.5) == doctest::Approx(10.0));
}

TEST_CASE("sampled lengths follow the truncated power law") {
    for (double g : {0.55, 0.85, 1.0, 1.7}) {
        Rng rng(42);
        std::vector<double> s;
        for (int i = 0; i < 10000; ++i) {
            const double u = uniform01(rng);
            s.push_back(g == 1.0 ? sample_fracture_length_log(2.0, 320.0, u) : sample_fracture_length(g, 2.0, 320.0, u));
        }
        const double d = ks_statistic(s, [&](double l) { return fracture_length_cdf(g, 2.0, 320.0, l); });
        CHECK(d < 0.02);
    }
}

TEST_CASE("place_hubs") {
    GeneratorConfig cfg;
    Rng rng(7);
    cfg.n_fz = 0;
    CHECK(place_hubs(cfg, rng).empty());

    cfg.n_fz = 3;
    const auto hubs = place_hubs(cfg, rng);
    REQUIRE(hubs.size() == 3);
    for (const auto& h : hubs) {
        CHECK(h.center.x >= 0.0);
        CHECK(h.center.x <= cfg.n);
        CHECK(h.center.y >= 0.0);
        CHECK(h.center.y <= cfg.n);
        CHECK(h.radius >= 10.0);
        CHECK(h.radius <= 20.0);
        CHECK(h.radius == std::round(h.radius));
    }
}

TEST_CASE("hub centers follow a domain-truncated Gaussian around the center") {
    GeneratorConfig cfg;
    cfg.n_fz = 1;
    Rng rng(99);
    std::vector<double> xs, ys;
    for (int i = 0; i < 10000; ++i) {
        const auto h = place_hubs(cfg, rng).front();
        xs.push_back(h.center.x);
        ys.push_back(h.center.y);
    }
    const double mu = cfg.n / 2, sd = cfg.n / 4;
    const double mass = normal_cdf(cfg.n, mu, sd) - normal_cdf(0.0, mu, sd);
    auto truncated = [&](double x) { return (normal_cdf(x, mu, sd) - normal_cdf(0.0, mu, sd)) / mass; };
    // 1% critical value of the one-sample KS test.
    const double critical = 1.63 / std::sqrt(10000.0);
    CHECK(ks_statistic(xs, truncated) < critical);
    CHECK(ks_statistic(ys, truncated) < critical);
}

TEST_CASE("sample_azimuth") {
    Rng rng(3);
    std::vector<double> hub;
    for (int i = 0; i < 10000; ++i) {
        const double a = sample_azimuth(AzimuthKind::Hub, {}, rng);
        CHECK(a >= 0.0);
        CHECK(a < 360.0);
        hub.push_back(a);
    }
    CHECK(ks_statistic(hub, [](double a) { return a / 360.0; }) < 1.63 / std::sqrt(10000.0));

    const std::vector<JointSet> sets{{0.0, 5.0}, {90.0, 5.0}};
    for (int i = 0; i < 2000; ++i) {
        const double a = std::fmod(sample_azimuth(AzimuthKind::BackgroundWithSets, sets, rng), 180.0);
        const bool near0 = a <= 5.0 || a >= 175.0;
        const bool near90 = std::abs(a - 90.0) <= 5.0;
        CHECK((near0 || near90));
    }
    for (int i = 0; i < 2000; ++i) {
        const double a = sample_azimuth(AzimuthKind::BackgroundFree, {}, rng);
        CHECK(a >= 0.0);
        CHECK(a < 180.0);
    }
}

TEST_CASE("fixed-count network without hubs only has background fractures") {
    GeneratorConfig cfg = fixed_config(0);
    cfg.njs = 2;
    cfg.joint_set_azimuths = {{0.0, 5.0}, {90.0, 5.0}};
    const auto net = generate_network(cfg);
    CHECK(net.size() == 100);
    for (const auto& f : net.fractures) {
        CHECK(f.kind == FractureKind::Background);
        CHECK_FALSE(f.hub_id.has_value());
    }
}

TEST_CASE("growth rates set per-hub and background counts") {
    for (auto [hg, bg] : {std::pair{3, 2}, std::pair{2, 8}, std::pair{7, 1}}) {
        GeneratorConfig cfg = fixed_config(3);
        cfg.hub_growth = hg;
        cfg.back_growth = bg;
        cfg.seed = 11;
        const auto net = generate_network(cfg);
        std::vector<int> per_hub(3, 0);
        int background = 0;
        for (const auto& f : net.fractures) {
            if (f.kind == FractureKind::Hub) ++per_hub.at(*f.hub_id);
            else ++background;
        }
        for (int c : per_hub) CHECK(c == cfg.n_g / hg);
        CHECK(background == cfg.n_g / bg);
    }
}

TEST_CASE("default parameters generate valid networks") {
    for (int n_fz = 1; n_fz <= 3; ++n_fz) {
        for (auto mode : {GenerationMode::Threshold, GenerationMode::FixedCount}) {
            GeneratorConfig cfg;
            cfg.n_fz = n_fz;
            cfg.mode = mode;
            cfg.seed = 100 + n_fz;
            const auto net = generate_network(cfg);
            CHECK(net.size() > 0);
            for (const auto& f : net.fractures) {
                CHECK(f.length >= cfg.l_min);
                CHECK(f.length <= 750.0);
                CHECK(f.aperture == 3.0);
                for (Vec2 p : {f.segment.a, f.segment.b}) {
                    CHECK(p.x >= 0.0);
                    CHECK(p.x <= cfg.n);
                    CHECK(p.y >= 0.0);
                    CHECK(p.y <= cfg.n);
                }
            }
        }
    }
}

TEST_CASE("generation is deterministic for a fixed seed") {
    GeneratorConfig cfg = fixed_config(2);
    cfg.seed = 2024;
    const auto a = generate_network(cfg);
    const auto b = generate_network(cfg);
    CHECK(a.fractures == b.fractures);
    CHECK(io::network_csv(a) == io::network_csv(b));
    cfg.seed = 2025;
    CHECK(io::network_csv(generate_network(cfg)) != io::network_csv(a));
}

TEST_CASE("threshold mode stops at the first spanning fracture") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        GeneratorConfig cfg;
        cfg.n = 128;
        cfg.alpha = 320;
        cfg.seed = seed;
        cfg.n_fz = static_cast<int>(seed % 4);
        auto net = generate_network(cfg);
        CHECK(percolates(net, Axis::X));
        net.fractures.pop_back();
        CHECK_FALSE(percolates(net, Axis::X));
    }
}

TEST_CASE("uniform-range apertures stay within half to one and a half of the mean") {
    GeneratorConfig cfg = fixed_config(1);
    cfg.aperture_mode = ApertureMode::UniformRange;
    const auto net = generate_network(cfg);
    bool varied = false;
    for (const auto& f : net.fractures) {
        CHECK(f.aperture >= 1.5);
        CHECK(f.aperture <= 4.5);
        varied |= f.aperture != net.fractures.front().aperture;
    }
    CHECK(varied);
}

TEST_CASE("config validation names the violated field") {
    GeneratorConfig cfg;
    cfg.gamma = -1;
    CHECK_THROWS_WITH_AS(validate(cfg), doctest::Contains("gamma"), ValidationError);
    cfg = {};
    cfg.alpha = 1.0;
    CHECK_THROWS_WITH_AS(validate(cfg), doctest::Contains("alpha"), ValidationError);
    cfg = {};
    cfg.njs = 3;
    CHECK_THROWS_WITH_AS(validate(cfg), doctest::Contains("joint_set_azimuths"), ValidationError);
    cfg = {};
    cfg.n = 8;
    CHECK_THROWS_AS(generate_network(cfg), ValidationError);
}

TEST_CASE("spanning requirement in fixed-count mode") {
    GeneratorConfig cfg = fixed_config(0);
    cfg.n_g = 2;
    cfg.back_growth = 2;
    cfg.alpha = 5.0;
    cfg.require_spanning = true;
    CHECK_THROWS_AS(generate_network(cfg), GenerationFailed);
    cfg.require_spanning = false;
    CHECK(generate_network(cfg).size() == 1);

    GeneratorConfig thr;
    thr.n_g = 2;
    thr.alpha = 5.0;
    thr.n_fz = 0;
    CHECK_THROWS_AS(generate_network(thr), GenerationFailed);
}
