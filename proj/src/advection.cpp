#include "fracnet/advection.hpp"

#include "fracnet/error.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

namespace fracnet {

LaplacianView::LaplacianView(const FractureGraph& g) {
    const int n = g.n_nodes();
    row_ptr_.reserve(n + 1);
    row_ptr_.push_back(0);
    for (int i = 0; i < n; ++i) {
        col_.push_back(i);
        val_.push_back(-g.degree(i));
        for (int j : g.neighbors(i)) {
            col_.push_back(j);
            val_.push_back(1);
            spectral_bound_ = std::max(spectral_bound_, g.degree(i) + g.degree(j));
        }
        row_ptr_.push_back(static_cast<int>(col_.size()));
    }
}

int LaplacianView::entry(int i, int j) const {
    for (int p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p)
        if (col_[p] == j) return val_[p];
    return 0;
}

long long LaplacianView::row_sum(int i) const {
    long long s = 0;
    for (int p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) s += val_[p];
    return s;
}

void LaplacianView::apply(const std::vector<double>& u, std::vector<double>& out) const {
    const int n = size();
    out.resize(n);
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) acc += val_[p] * u[col_[p]];
        out[i] = acc;
    }
}

LaplacianView laplacian(const FractureGraph& g) { return LaplacianView(g); }

AdvectionState AdvectionState::init(int n_nodes, std::vector<int> sources, std::vector<int> sinks, double u_src,
                                    double u_snk) {
    AdvectionState s;
    s.u.assign(n_nodes, 0.0);
    s.sources = std::move(sources);
    s.sinks = std::move(sinks);
    s.u_src = u_src;
    s.u_snk = u_snk;
    for (int i : s.sources) s.u.at(i) = u_src;
    for (int i : s.sinks) s.u.at(i) = u_snk;
    return s;
}

double max_stable_dt(const LaplacianView& lap, double epsilon) {
    const int bound = lap.spectral_bound();
    if (bound == 0 || epsilon == 0.0) return HUGE_VAL;
    return 2.0 / (epsilon * bound);
}

namespace {

void check_clamps(const AdvectionState& s) {
    const int n = static_cast<int>(s.u.size());
    std::vector<char> mark(n, 0);
    for (int i : s.sources) {
        if (i < 0 || i >= n) throw ValidationError("source node " + std::to_string(i) + " out of range");
        mark[i] = 1;
    }
    for (int i : s.sinks) {
        if (i < 0 || i >= n) throw ValidationError("sink node " + std::to_string(i) + " out of range");
        if (mark[i] == 1) throw ValidationError("node " + std::to_string(i) + " is both source and sink");
    }
}

} // namespace

void advect_step(AdvectionState& s, const LaplacianView& lap) {
    if (!(s.dt > 0.0) || !(s.dt < max_stable_dt(lap, s.epsilon)))
        throw StabilityError("dt = " + std::to_string(s.dt) + " outside the stable range (0, " +
                             std::to_string(max_stable_dt(lap, s.epsilon)) + ")");
    check_clamps(s);
    std::vector<double> lu;
    lap.apply(s.u, lu);
    for (std::size_t i = 0; i < s.u.size(); ++i) s.u[i] += s.dt * s.epsilon * lu[i];
    for (int i : s.sources) s.u[i] = s.u_src;
    for (int i : s.sinks) s.u[i] = s.u_snk;
    ++s.t;
}

SteadyResult solve_steady(const FractureGraph& g, const std::vector<int>& sources, const std::vector<int>& sinks,
                          const SteadyOptions& opt) {
    const int n = g.n_nodes();
    const LaplacianView lap(g);
    AdvectionState s = AdvectionState::init(n, sources, sinks, opt.u_src, opt.u_snk);
    s.epsilon = opt.epsilon;
    s.dt = opt.dt > 0.0 ? opt.dt : 0.9 * max_stable_dt(lap, opt.epsilon);
    if (!std::isfinite(s.dt)) s.dt = 1.0;
    check_clamps(s);

    // Free nodes with no path to a clamp stay at zero.
    std::vector<char> clamped(n, 0), reached(n, 0);
    std::queue<int> q;
    for (int i : sources) clamped[i] = reached[i] = 1, q.push(i);
    for (int i : sinks) clamped[i] = reached[i] = 1, q.push(i);
    while (!q.empty()) {
        const int u = q.front();
        q.pop();
        for (int v : g.neighbors(u))
            if (!reached[v]) reached[v] = 1, q.push(v);
    }

    SteadyResult out;
    out.dt = s.dt;
    std::vector<int> active;
    for (int i = 0; i < n; ++i) {
        if (!reached[i]) out.unreached.push_back(i);
        else if (!clamped[i] && g.degree(i) > 0) active.push_back(i);
    }

    auto defect = [&] {
        double worst = 0.0;
        for (int i : active) {
            double acc = 0.0;
            for (int j : g.neighbors(i)) acc += s.u[j];
            worst = std::max(worst, std::abs(s.u[i] - acc / g.degree(i)));
        }
        return worst;
    };

    out.max_defect = defect();
    while (out.max_defect >= opt.tol) {
        if (s.t >= opt.max_steps)
            throw NonConvergence("advection did not reach steady state within " + std::to_string(opt.max_steps) +
                                 " steps (defect " + std::to_string(out.max_defect) + ")");
        advect_step(s, lap);
        out.max_defect = defect();
    }
    out.u = std::move(s.u);
    out.steps = s.t;
    return out;
}

void default_source_sink(int n_nodes, std::vector<int>& sources, std::vector<int>& sinks) {
    sources.clear();
    sinks.clear();
    if (n_nodes <= 0) return;
    int m = n_nodes >= 25 ? 10 : std::max(1, n_nodes / 10);
    m = std::min(m, n_nodes / 2);
    if (m == 0) {
        sources.push_back(0);
        return;
    }
    for (int i = 0; i < m; ++i) sources.push_back(i);
    for (int i = n_nodes - m; i < n_nodes; ++i) sinks.push_back(i);
}

Histogram node_value_distribution(const std::vector<double>& values, const HistogramBins& bins) {
    if (bins.n < 1 || !(bins.hi > bins.lo)) throw ValidationError("histogram needs n >= 1 and hi > lo");
    Histogram h;
    const double width = (bins.hi - bins.lo) / bins.n;
    h.centers.resize(bins.n);
    for (int b = 0; b < bins.n; ++b) h.centers[b] = bins.lo + (b + 0.5) * width;
    h.counts.assign(bins.n, 0.0);
    for (double v : values) {
        const int b = std::clamp(static_cast<int>(std::floor((v - bins.lo) / width)), 0, bins.n - 1);
        h.counts[b] += 1.0;
    }
    h.frequency.resize(bins.n);
    const double total = static_cast<double>(values.size());
    for (int b = 0; b < bins.n; ++b) h.frequency[b] = total > 0.0 ? h.counts[b] / total : 0.0;
    return h;
}

Histogram mean_histogram(const std::vector<Histogram>& hs) {
    if (hs.empty()) return {};
    Histogram m;
    m.centers = hs.front().centers;
    m.counts.assign(m.centers.size(), 0.0);
    m.frequency.assign(m.centers.size(), 0.0);
    for (const auto& h : hs) {
        if (h.centers != m.centers) throw ValidationError("histograms have different bins");
        for (std::size_t b = 0; b < m.centers.size(); ++b) {
            m.counts[b] += h.counts[b];
            m.frequency[b] += h.frequency[b];
        }
    }
    for (std::size_t b = 0; b < m.centers.size(); ++b) {
        m.counts[b] /= static_cast<double>(hs.size());
        m.frequency[b] /= static_cast<double>(hs.size());
    }
    return m;
}

std::vector<double> edge_fluxes(const FractureGraph& g, const std::vector<double>& u, double epsilon) {
    std::vector<double> out;
    for (auto [i, j] : g.edges()) out.push_back(epsilon * (u[i] - u[j]));
    return out;
}

} // namespace fracnet
