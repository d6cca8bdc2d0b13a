#include "fracnet/graph.hpp"

#include "fracnet/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace fracnet {

FractureGraph::FractureGraph(int n_nodes) : adj_(n_nodes), node_order_(n_nodes) {
    std::iota(node_order_.begin(), node_order_.end(), 0);
}

FractureGraph FractureGraph::from_edges(int n_nodes, const std::vector<std::pair<int, int>>& edges) {
    FractureGraph g(n_nodes);
    for (auto [i, j] : edges) {
        if (i < 0 || j < 0 || i >= n_nodes || j >= n_nodes)
            throw ValidationError("edge (" + std::to_string(i) + "," + std::to_string(j) + ") out of range");
        if (i == j) throw ValidationError("self-loop on node " + std::to_string(i));
        g.adj_[i].push_back(j);
        g.adj_[j].push_back(i);
    }
    for (auto& nb : g.adj_) {
        std::sort(nb.begin(), nb.end());
        nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    }
    return g;
}

std::size_t FractureGraph::edge_count() const {
    std::size_t sum = 0;
    for (const auto& nb : adj_) sum += nb.size();
    return sum / 2;
}

std::vector<int> FractureGraph::degrees() const {
    std::vector<int> k(adj_.size());
    for (std::size_t i = 0; i < adj_.size(); ++i) k[i] = static_cast<int>(adj_[i].size());
    return k;
}

int FractureGraph::max_degree() const {
    int k = 0;
    for (const auto& nb : adj_) k = std::max(k, static_cast<int>(nb.size()));
    return k;
}

bool FractureGraph::has_edge(int i, int j) const {
    const auto& nb = adj_.at(i);
    return std::binary_search(nb.begin(), nb.end(), j);
}

std::vector<std::pair<int, int>> FractureGraph::edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(edge_count());
    for (int i = 0; i < n_nodes(); ++i)
        for (int j : adj_[i])
            if (i < j) out.emplace_back(i, j);
    return out;
}

FractureGraph build_graph(const FractureNetwork& network) {
    const int n = static_cast<int>(network.size());
    FractureGraph g(n);
    for (int i = 0; i < n; ++i) g.node_order_[i] = network.fractures[i].id;
    if (n == 0) return g;

    const double cell = std::max(network.config.alpha / 8.0, 1e-6);
    const double side = std::max(network.domain, cell);
    const int cells = std::max(1, static_cast<int>(std::ceil(side / cell)));
    auto cell_of = [&](double v) { return std::clamp(static_cast<int>(std::floor(v / cell)), 0, cells - 1); };

    std::vector<std::vector<int>> buckets(static_cast<std::size_t>(cells) * cells);
    for (int i = 0; i < n; ++i) {
        const Segment& s = network.fractures[i].segment;
        const int x0 = cell_of(std::min(s.a.x, s.b.x) - kOrientTol);
        const int x1 = cell_of(std::max(s.a.x, s.b.x) + kOrientTol);
        const int y0 = cell_of(std::min(s.a.y, s.b.y) - kOrientTol);
        const int y1 = cell_of(std::max(s.a.y, s.b.y) + kOrientTol);
        for (int cy = y0; cy <= y1; ++cy)
            for (int cx = x0; cx <= x1; ++cx) buckets[static_cast<std::size_t>(cy) * cells + cx].push_back(i);
    }

    std::vector<std::pair<int, int>> candidates;
    for (const auto& b : buckets)
        for (std::size_t p = 0; p < b.size(); ++p)
            for (std::size_t q = p + 1; q < b.size(); ++q) candidates.emplace_back(b[p], b[q]);
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    for (auto [i, j] : candidates) {
        if (segment_intersection(network.fractures[i].segment, network.fractures[j].segment)) {
            g.adj_[i].push_back(j);
            g.adj_[j].push_back(i);
        }
    }
    for (auto& nb : g.adj_) std::sort(nb.begin(), nb.end());
    return g;
}

UnionFind::UnionFind(std::size_t n) : parent_(n), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t UnionFind::add() {
    parent_.push_back(parent_.size());
    rank_.push_back(0);
    return parent_.size() - 1;
}

std::size_t UnionFind::find(std::size_t x) {
    while (parent_[x] != x) {
        parent_[x] = parent_[parent_[x]];
        x = parent_[x];
    }
    return x;
}

bool UnionFind::unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
    return true;
}

namespace {
double coord(Vec2 v, Axis axis) { return axis == Axis::X ? v.x : v.y; }
} // namespace

bool touches_low(const Fracture& f, Axis axis) {
    return std::min(coord(f.segment.a, axis), coord(f.segment.b, axis)) <= 0.5 * f.aperture;
}

bool touches_high(const Fracture& f, double domain, Axis axis) {
    return std::max(coord(f.segment.a, axis), coord(f.segment.b, axis)) >= domain - 0.5 * f.aperture;
}

SpanningTracker::SpanningTracker(double domain, Axis axis) : domain_(domain), axis_(axis), uf_(2) {}

void SpanningTracker::add(const Fracture& f) {
    const std::size_t node = uf_.add();
    for (std::size_t k = 0; k < segments_.size(); ++k) {
        if (segment_intersection(f.segment, segments_[k])) uf_.unite(node, k + 2);
    }
    if (touches_low(f, axis_)) uf_.unite(node, kLow);
    if (touches_high(f, domain_, axis_)) uf_.unite(node, kHigh);
    segments_.push_back(f.segment);
}

bool percolates(const FractureNetwork& network, Axis axis) {
    const FractureGraph g = build_graph(network);
    const std::size_t n = network.size();
    UnionFind uf(n + 2);
    for (auto [i, j] : g.edges()) uf.unite(i + 2, j + 2);
    for (std::size_t i = 0; i < n; ++i) {
        const Fracture& f = network.fractures[i];
        if (touches_low(f, axis)) uf.unite(i + 2, 0);
        if (touches_high(f, network.domain, axis)) uf.unite(i + 2, 1);
    }
    return uf.connected(0, 1);
}

} // namespace fracnet
