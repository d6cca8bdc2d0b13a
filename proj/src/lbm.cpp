#include "fracnet/lbm.hpp"

#include "fracnet/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace fracnet::lbm {

std::size_t Mask::fluid_count() const {
    return static_cast<std::size_t>(std::count(fluid.begin(), fluid.end(), std::uint8_t{1}));
}

Mask rasterize(const FractureNetwork& network, int grid_n) {
    if (grid_n < 16) throw ValidationError("grid_n must be >= 16");
    Mask mask(grid_n, grid_n);
    if (network.empty()) return mask;
    const double s = grid_n / network.domain;
    for (const Fracture& f : network.fractures) {
        const double thickness = std::max(1.0, std::round(f.aperture * s));
        const double r = 0.5 * thickness;
        const Segment seg{s * f.segment.a, s * f.segment.b};
        const int x0 = std::max(0, static_cast<int>(std::floor(std::min(seg.a.x, seg.b.x) - r - 1.0)));
        const int x1 = std::min(grid_n - 1, static_cast<int>(std::ceil(std::max(seg.a.x, seg.b.x) + r)));
        const int y0 = std::max(0, static_cast<int>(std::floor(std::min(seg.a.y, seg.b.y) - r - 1.0)));
        const int y1 = std::min(grid_n - 1, static_cast<int>(std::ceil(std::max(seg.a.y, seg.b.y) + r)));
        for (int y = y0; y <= y1; ++y)
            for (int x = x0; x <= x1; ++x)
                if (point_segment_distance({x + 0.5, y + 0.5}, seg) <= r) mask.set(x, y, true);
    }
    return mask;
}

bool mask_percolates(const Mask& mask, Axis axis) {
    const int w = mask.width;
    const int h = mask.height;
    if (w == 0 || h == 0) return false;
    std::vector<std::uint8_t> seen(mask.fluid.size(), 0);
    std::vector<std::pair<int, int>> stack;
    const int far = axis == Axis::X ? w - 1 : h - 1;
    const int span = axis == Axis::X ? h : w;
    for (int t = 0; t < span; ++t) {
        const int x = axis == Axis::X ? 0 : t;
        const int y = axis == Axis::X ? t : 0;
        if (mask.is_fluid(x, y) && !seen[mask.index(x, y)]) {
            seen[mask.index(x, y)] = 1;
            stack.emplace_back(x, y);
        }
    }
    while (!stack.empty()) {
        const auto [x, y] = stack.back();
        stack.pop_back();
        if ((axis == Axis::X ? x : y) == far) return true;
        for (int dy = -1; dy <= 1; ++dy)
            for (int dx = -1; dx <= 1; ++dx) {
                const int nx = x + dx;
                const int ny = y + dy;
                if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
                const std::size_t k = mask.index(nx, ny);
                if (mask.fluid[k] && !seen[k]) {
                    seen[k] = 1;
                    stack.emplace_back(nx, ny);
                }
            }
    }
    return false;
}

std::array<double, 9> equilibrium(double rho, double vx, double vy) {
    if (!(rho > 0.0)) throw DomainError("equilibrium needs rho > 0");
    std::array<double, 9> feq{};
    const double usq = 1.5 * (vx * vx + vy * vy);
    for (int i = 0; i < 9; ++i) {
        const double eu = kEx[i] * vx + kEy[i] * vy;
        feq[i] = kW[i] * rho * (1.0 + 3.0 * eu + 4.5 * eu * eu - usq);
    }
    return feq;
}

Lattice::Lattice(const Mask& mask, BoundaryConfig bc, int workers)
    : width_(mask.width), height_(mask.height), mask_(mask), bc_(bc), workers_(std::max(1, workers)) {
    if (width_ < 3 || height_ < 3) throw ValidationError("lattice must be at least 3 x 3");
    if (bc_.kind == BoundaryKind::PressureX) {
        if (!(bc_.rho_in > 0.0) || !(bc_.rho_out > 0.0)) throw ValidationError("boundary densities must be > 0");
        for (int x = 0; x < width_; ++x) {
            mask_.set(x, 0, false);
            mask_.set(x, height_ - 1, false);
        }
    }

    id_.assign(mask_.fluid.size(), kSolid);
    for (std::size_t k = 0; k < mask_.fluid.size(); ++k) {
        if (mask_.fluid[k]) {
            id_[k] = cells_.size();
            cells_.push_back(k);
        }
    }
    const std::size_t nf = cells_.size();
    target_.assign(9 * nf, kBounce);
    const bool periodic = bc_.kind == BoundaryKind::Periodic;
    for (std::size_t c = 0; c < nf; ++c) {
        const int x = static_cast<int>(cells_[c] % width_);
        const int y = static_cast<int>(cells_[c] / width_);
        for (int i = 0; i < 9; ++i) {
            int nx = x + kEx[i];
            int ny = (y + kEy[i] + height_) % height_;
            if (periodic) {
                nx = (nx + width_) % width_;
            } else if (nx < 0 || nx >= width_) {
                target_[i * nf + c] = kLeave;
                continue;
            }
            const std::size_t t = id_[mask_.index(nx, ny)];
            target_[i * nf + c] = t == kSolid ? kBounce : static_cast<std::int32_t>(t);
        }
    }

    if (!periodic) {
        for (int y = 0; y < height_; ++y) {
            if (mask_.is_fluid(0, y)) {
                const std::size_t in = id_[mask_.index(1, y)];
                inlet_.emplace_back(id_[mask_.index(0, y)], in == kSolid ? -1 : static_cast<std::int64_t>(in));
            }
            if (mask_.is_fluid(width_ - 1, y)) {
                const std::size_t out = id_[mask_.index(width_ - 2, y)];
                outlet_.emplace_back(id_[mask_.index(width_ - 1, y)],
                                     out == kSolid ? -1 : static_cast<std::int64_t>(out));
            }
        }
    }

    f_.assign(9 * nf, 0.0);
    tmp_.assign(9 * nf, 0.0);
    init_rest();
}

void Lattice::init_rest(double rho) {
    const std::size_t nf = cells_.size();
    for (std::size_t c = 0; c < nf; ++c) {
        double r = rho;
        if (bc_.kind == BoundaryKind::PressureX) {
            const double x = static_cast<double>(cells_[c] % width_);
            r = bc_.rho_in + (bc_.rho_out - bc_.rho_in) * x / (width_ - 1);
        }
        for (int i = 0; i < 9; ++i) f_[i * nf + c] = kW[i] * r;
    }
    steps_ = 0;
}

void Lattice::init_uniform(double rho, double vx, double vy) {
    const auto feq = equilibrium(rho, vx, vy);
    const std::size_t nf = cells_.size();
    for (std::size_t c = 0; c < nf; ++c)
        for (int i = 0; i < 9; ++i) f_[i * nf + c] = feq[i];
    steps_ = 0;
}

void Lattice::set_populations(int x, int y, const std::array<double, 9>& f) {
    const std::size_t c = fluid_id(x, y);
    if (c == kSolid) throw ValidationError("cell is solid");
    for (int i = 0; i < 9; ++i) f_[i * cells_.size() + c] = f[i];
}

std::array<double, 9> Lattice::populations(int x, int y) const {
    std::array<double, 9> out{};
    const std::size_t c = fluid_id(x, y);
    if (c == kSolid) return out;
    for (int i = 0; i < 9; ++i) out[i] = f_[i * cells_.size() + c];
    return out;
}

void Lattice::step(double tau) {
    if (!(tau > 0.5)) throw ValidationError("tau must be > 0.5");
    const double omega = 1.0 / tau;
    const std::size_t nf = cells_.size();
    const std::int64_t n = static_cast<std::int64_t>(nf);
    const double* f = f_.data();
    double* out = tmp_.data();
    const std::int32_t* tgt = target_.data();
    int bad = 0;

#pragma omp parallel for num_threads(workers_) schedule(static) reduction(| : bad) if (workers_ > 1)
    for (std::int64_t cc = 0; cc < n; ++cc) {
        const std::size_t c = static_cast<std::size_t>(cc);
        double fi[9];
        double rho = 0.0;
        for (int i = 0; i < 9; ++i) {
            fi[i] = f[i * nf + c];
            rho += fi[i];
            bad |= !(fi[i] >= -1e-6);
        }
        const double ux = (fi[1] - fi[3] + fi[5] - fi[6] - fi[7] + fi[8]) / rho;
        const double uy = (fi[2] - fi[4] + fi[5] + fi[6] - fi[7] - fi[8]) / rho;
        const double usq = 1.5 * (ux * ux + uy * uy);
        for (int i = 0; i < 9; ++i) {
            const double eu = kEx[i] * ux + kEy[i] * uy;
            const double feq = kW[i] * rho * (1.0 + 3.0 * eu + 4.5 * eu * eu - usq);
            const double post = fi[i] + omega * (feq - fi[i]);
            const std::int32_t t = tgt[i * nf + c];
            if (t >= 0) {
                out[i * nf + static_cast<std::size_t>(t)] = post;
            } else if (t == kBounce) {
                out[kOpposite[i] * nf + c] = post;
            }
        }
    }
    if (bad) throw InstabilityError("lattice populations became negative or non-finite at step " +
                                    std::to_string(steps_));

    f_.swap(tmp_);
    if (bc_.kind == BoundaryKind::PressureX) apply_pressure_boundaries();
    ++steps_;
}

void Lattice::apply_pressure_boundaries() {
    const std::size_t nf = cells_.size();
    auto velocity = [&](std::int64_t c, double& ux, double& uy) {
        ux = uy = 0.0;
        if (c < 0) return;
        double rho = 0.0, mx = 0.0, my = 0.0;
        for (int i = 0; i < 9; ++i) {
            const double v = f_[i * nf + static_cast<std::size_t>(c)];
            rho += v;
            mx += kEx[i] * v;
            my += kEy[i] * v;
        }
        ux = mx / rho;
        uy = my / rho;
    };
    auto impose = [&](const std::vector<std::pair<std::size_t, std::int64_t>>& cells, double rho) {
        for (auto [c, nb] : cells) {
            double ux, uy;
            velocity(nb, ux, uy);
            const auto feq = equilibrium(rho, ux, uy);
            for (int i = 0; i < 9; ++i) f_[i * nf + c] = feq[i];
        }
    };
    impose(inlet_, bc_.rho_in);
    impose(outlet_, bc_.rho_out);
}

double Lattice::total_mass() const {
    // Fixed summation order keeps the result independent of worker count.
    double m = 0.0;
    for (double v : f_) m += v;
    return m;
}

double Lattice::mean_speed() const {
    const std::size_t nf = cells_.size();
    double sum = 0.0;
    for (std::size_t c = 0; c < nf; ++c) {
        double rho = 0.0, mx = 0.0, my = 0.0;
        for (int i = 0; i < 9; ++i) {
            const double v = f_[i * nf + c];
            rho += v;
            mx += kEx[i] * v;
            my += kEy[i] * v;
        }
        sum += std::hypot(mx, my) / rho;
    }
    return sum / (static_cast<double>(width_) * height_);
}

FlowField Lattice::macroscopic() const {
    FlowField out;
    out.width = width_;
    out.height = height_;
    const std::size_t cells = static_cast<std::size_t>(width_) * height_;
    out.rho.assign(cells, 0.0);
    out.vx.assign(cells, 0.0);
    out.vy.assign(cells, 0.0);
    const std::size_t nf = cells_.size();
    for (std::size_t c = 0; c < nf; ++c) {
        double rho = 0.0, mx = 0.0, my = 0.0;
        for (int i = 0; i < 9; ++i) {
            const double v = f_[i * nf + c];
            rho += v;
            mx += kEx[i] * v;
            my += kEy[i] * v;
        }
        out.rho[cells_[c]] = rho;
        out.vx[cells_[c]] = mx / rho;
        out.vy[cells_[c]] = my / rho;
    }
    out.iterations = steps_;
    return out;
}

FlowField run_to_steady(Lattice& lattice, const RunOptions& opt) {
    if (opt.check_every < 1) throw ValidationError("check_every must be >= 1");
    if (lattice.boundary().kind == BoundaryKind::PressureX && !mask_percolates(lattice.mask(), Axis::X)) {
        FlowField flow = lattice.macroscopic();
        std::fill(flow.vx.begin(), flow.vx.end(), 0.0);
        std::fill(flow.vy.begin(), flow.vy.end(), 0.0);
        flow.converged = true;
        return flow;
    }

    double previous = lattice.mean_speed();
    bool converged = false;
    while (lattice.steps() < opt.max_iters) {
        for (int s = 0; s < opt.check_every && lattice.steps() < opt.max_iters; ++s) lattice.step(opt.tau);
        const double current = lattice.mean_speed();
        if (!std::isfinite(current)) throw InstabilityError("mean speed is not finite");
        if (current == 0.0) {
            converged = previous == 0.0;
        } else {
            converged = std::abs(current - previous) / current < opt.tol;
        }
        previous = current;
        if (converged) break;
    }
    FlowField flow = lattice.macroscopic();
    flow.converged = converged;
    return flow;
}

double darcy_permeability(double v_avg, double mu, double grad_p) {
    if (grad_p == 0.0) throw DomainError("pressure gradient is zero");
    if (v_avg == 0.0) return 0.0;
    return -v_avg * mu / grad_p;
}

PermeabilityResult permeability(const FlowField& flow, const BoundaryConfig& bc, double tau) {
    PermeabilityResult r;
    r.tau = tau;
    r.nu = viscosity(tau);
    const std::size_t cells = flow.vx.size();
    double vsum = 0.0, rsum = 0.0;
    std::size_t fluid = 0;
    for (std::size_t k = 0; k < cells; ++k) {
        vsum += flow.vx[k];
        if (flow.rho[k] > 0.0) {
            rsum += flow.rho[k];
            ++fluid;
        }
    }
    r.v_avg = cells > 0 ? vsum / static_cast<double>(cells) : 0.0;
    r.rho_mean = fluid > 0 ? rsum / static_cast<double>(fluid) : 0.5 * (bc.rho_in + bc.rho_out);
    r.mu = r.rho_mean * r.nu;
    r.grad_p = kCs2 * (bc.rho_out - bc.rho_in) / (flow.width - 1);
    r.K = darcy_permeability(r.v_avg, r.mu, r.grad_p);
    return r;
}

} // namespace fracnet::lbm
