#pragma once

#include "fracnet/dfn.hpp"
#include "fracnet/graph.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace fracnet::lbm {

// D2Q9 ordering: rest, E, N, W, S, NE, NW, SW, SE.
inline constexpr std::array<int, 9> kEx{0, 1, 0, -1, 0, 1, -1, -1, 1};
inline constexpr std::array<int, 9> kEy{0, 0, 1, 0, -1, 1, 1, -1, -1};
inline constexpr std::array<double, 9> kW{4.0 / 9.0,  1.0 / 9.0,  1.0 / 9.0,  1.0 / 9.0, 1.0 / 9.0,
                                          1.0 / 36.0, 1.0 / 36.0, 1.0 / 36.0, 1.0 / 36.0};
inline constexpr std::array<int, 9> kOpposite{0, 3, 4, 1, 2, 7, 8, 5, 6};
inline constexpr double kCs2 = 1.0 / 3.0;

/// Kinematic viscosity for relaxation time tau.
constexpr double viscosity(double tau) { return (tau - 0.5) / 3.0; }

/// Binary fluid/solid raster; cell (x, y) covers [x, x+1) x [y, y+1).
struct Mask {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> fluid; // row-major, y outer

    Mask() = default;
    Mask(int w, int h) : width(w), height(h), fluid(static_cast<std::size_t>(w) * h, 0) {}

    std::size_t index(int x, int y) const { return static_cast<std::size_t>(y) * width + x; }
    bool is_fluid(int x, int y) const { return fluid[index(x, y)] != 0; }
    void set(int x, int y, bool f) { fluid[index(x, y)] = f ? 1 : 0; }
    std::size_t fluid_count() const;
    friend bool operator==(const Mask&, const Mask&) = default;
};

/// Paints each fracture as a capsule of thickness max(1, round(aperture * s))
/// where s = grid_n / domain; a cell is fluid when its center lies in a capsule.
Mask rasterize(const FractureNetwork& network, int grid_n);

/// 8-connected fluid path between the two faces normal to `axis`.
bool mask_percolates(const Mask& mask, Axis axis = Axis::X);

/// Second-order equilibrium populations. Throws DomainError for rho <= 0.
std::array<double, 9> equilibrium(double rho, double vx, double vy);

enum class BoundaryKind {
    Periodic,  // wrap in x and y
    PressureX, // fixed-density inlet (x = 0) / outlet (x = W - 1), solid rows at y = 0 and y = H - 1
};

struct BoundaryConfig {
    BoundaryKind kind = BoundaryKind::PressureX;
    double rho_in = 1.001;
    double rho_out = 0.999;
};

struct FlowField {
    int width = 0;
    int height = 0;
    std::vector<double> rho; // 0 on solid cells
    std::vector<double> vx;
    std::vector<double> vy;
    std::int64_t iterations = 0;
    bool converged = false;

    double pressure(std::size_t cell) const { return kCs2 * rho[cell]; }
};

class Lattice {
public:
    Lattice(const Mask& mask, BoundaryConfig bc = {}, int workers = 1);

    int width() const { return width_; }
    int height() const { return height_; }
    const Mask& mask() const { return mask_; }
    const BoundaryConfig& boundary() const { return bc_; }
    std::size_t fluid_cells() const { return cells_.size(); }

    /// Equilibrium at rest; density linear from rho_in to rho_out under
    /// pressure boundaries, `rho` otherwise.
    void init_rest(double rho = 1.0);
    void init_uniform(double rho, double vx, double vy);
    /// Sets the populations of the fluid cell at (x, y).
    void set_populations(int x, int y, const std::array<double, 9>& f);
    std::array<double, 9> populations(int x, int y) const;

    /// One collide-then-stream update with halfway bounce-back at solid
    /// cells. Throws InstabilityError on negative or non-finite populations.
    void step(double tau);

    double total_mass() const;
    /// Mean of |v| over the whole domain (solid cells count as zero).
    double mean_speed() const;
    FlowField macroscopic() const;

    std::int64_t steps() const { return steps_; }

private:
    std::size_t fluid_id(int x, int y) const { return id_[mask_.index(x, y)]; }
    void apply_pressure_boundaries();

    static constexpr std::int32_t kBounce = -1;
    static constexpr std::int32_t kLeave = -2;
    static constexpr std::size_t kSolid = static_cast<std::size_t>(-1);

    int width_;
    int height_;
    Mask mask_;
    BoundaryConfig bc_;
    int workers_;
    std::vector<std::size_t> id_;                 // grid cell -> fluid index or kSolid
    std::vector<std::size_t> cells_;              // fluid index -> grid cell
    std::vector<std::int32_t> target_;            // [dir * nf + c]
    std::vector<std::pair<std::size_t, std::int64_t>> inlet_, outlet_; // (cell, interior neighbor or -1)
    std::vector<double> f_, tmp_;                 // [dir * nf + c]
    std::int64_t steps_ = 0;
};

struct RunOptions {
    double tau = 1.0;
    double tol = 1e-9;
    std::int64_t max_iters = 2'000'000;
    int check_every = 100;
};

/// Steps until the relative change of the mean speed between checks drops
/// below tol. A lattice with no fluid path along x returns at once with zero
/// velocity and converged = true.
FlowField run_to_steady(Lattice& lattice, const RunOptions& opt = {});

struct PermeabilityResult {
    double K = 0.0;
    double v_avg = 0.0;
    double grad_p = 0.0;
    double mu = 0.0;
    double tau = 1.0;
    double nu = 1.0 / 6.0;
    double rho_mean = 1.0;
};

/// Darcy permeability along x: K = -<v> mu / grad p, with <v> averaged over
/// the whole domain and grad p = cs^2 (rho_out - rho_in) / (W - 1).
PermeabilityResult permeability(const FlowField& flow, const BoundaryConfig& bc, double tau);

/// Direct substitution into Darcy's law.
double darcy_permeability(double v_avg, double mu, double grad_p);

} // namespace fracnet::lbm
