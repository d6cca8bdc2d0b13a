#include "fracnet/metrics.hpp"

#include "fracnet/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <string>

namespace fracnet {

double local_clustering(const FractureGraph& g, int i) {
    if (i < 0 || i >= g.n_nodes()) throw ValidationError("node index " + std::to_string(i) + " out of range");
    const auto& nb = g.neighbors(i);
    const std::size_t k = nb.size();
    if (k <= 1) return 0.0;
    std::size_t links = 0;
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = a + 1; b < k; ++b)
            if (g.has_edge(nb[a], nb[b])) ++links;
    return static_cast<double>(links) / (0.5 * static_cast<double>(k) * static_cast<double>(k - 1));
}

double clustering_coefficient(const FractureGraph& g) {
    if (g.n_nodes() == 0) return 0.0;
    double sum = 0.0;
    for (int i = 0; i < g.n_nodes(); ++i) sum += local_clustering(g, i);
    return sum / g.n_nodes();
}

DegreeDistribution degree_distribution(const FractureGraph& g) {
    DegreeDistribution out;
    const int n = g.n_nodes();
    if (n == 0) return out;
    std::map<int, int> counts;
    for (int i = 0; i < n; ++i) ++counts[g.degree(i)];
    std::vector<double> lx, ly;
    for (auto [k, c] : counts) {
        const double freq = static_cast<double>(c) / n;
        out.bins.push_back({k, c, freq});
        if (k >= 2) {
            lx.push_back(std::log10(static_cast<double>(k)));
            ly.push_back(std::log10(freq));
        }
    }
    if (lx.size() >= 3) out.fit = linear_fit(lx, ly);
    return out;
}

PathStats mean_path_length(const FractureGraph& g) {
    PathStats out;
    const int n = g.n_nodes();
    out.n = n;
    out.distances.assign(static_cast<std::size_t>(n) * n, -1);
    if (n == 0) return out;

    double sum = 0.0;
    std::size_t pairs = 0;
    std::queue<int> frontier;
    for (int s = 0; s < n; ++s) {
        int* row = out.distances.data() + static_cast<std::size_t>(s) * n;
        row[s] = 0;
        frontier.push(s);
        while (!frontier.empty()) {
            const int u = frontier.front();
            frontier.pop();
            for (int v : g.neighbors(u)) {
                if (row[v] < 0) {
                    row[v] = row[u] + 1;
                    frontier.push(v);
                }
            }
        }
        for (int t = s + 1; t < n; ++t) {
            if (row[t] > 0) {
                sum += row[t];
                ++pairs;
            }
        }
    }
    if (g.edge_count() > 0 && pairs > 0) out.mean_length = sum / static_cast<double>(pairs);

    int largest = 0;
    std::vector<char> seen(n, 0);
    for (int s = 0; s < n; ++s) {
        if (seen[s]) continue;
        int size = 0;
        const int* row = out.distances.data() + static_cast<std::size_t>(s) * n;
        for (int t = 0; t < n; ++t) {
            if (row[t] >= 0) {
                seen[t] = 1;
                ++size;
            }
        }
        largest = std::max(largest, size);
    }
    out.giant_fraction = static_cast<double>(largest) / n;
    return out;
}

Motif4 classify_motif4(int edges, int max_degree) {
    switch (edges) {
    case 3: return max_degree == 3 ? Motif4::Star : Motif4::Path;
    case 4: return max_degree == 3 ? Motif4::Paw : Motif4::Cycle;
    case 5: return Motif4::Diamond;
    case 6: return Motif4::Clique;
    default: throw ValidationError("not a connected 4-node subgraph: " + std::to_string(edges) + " edges");
    }
}

namespace {

class Esu4 {
public:
    Esu4(const FractureGraph& g, std::uint64_t cap)
        : g_(g), cap_(cap), blocked_(static_cast<std::size_t>(g.n_nodes()), 0) {}

    Census4 run() {
        for (int v = 0; v < g_.n_nodes(); ++v) {
            root_ = v;
            push(v);
            auto& ext = ext_[1];
            ext.clear();
            for (int u : g_.neighbors(v))
                if (u > v) ext.push_back(u);
            extend(1);
            pop(v);
        }
        return census_;
    }

private:
    // blocked_[u] > 0 while u lies in the closed neighborhood of the current subgraph.
    void push(int w) {
        sub_[depth_++] = w;
        ++blocked_[w];
        for (int u : g_.neighbors(w)) ++blocked_[u];
    }

    void pop(int w) {
        --depth_;
        --blocked_[w];
        for (int u : g_.neighbors(w)) --blocked_[u];
    }

    void record() {
        int edges = 0;
        std::array<int, 4> deg{};
        for (int a = 0; a < 4; ++a)
            for (int b = a + 1; b < 4; ++b)
                if (g_.has_edge(sub_[a], sub_[b])) {
                    ++edges;
                    ++deg[a];
                    ++deg[b];
                }
        ++census_[static_cast<int>(classify_motif4(edges, *std::max_element(deg.begin(), deg.end())))];
        if (++found_ > cap_)
            throw ResourceError("4-node subgraph census exceeded cap of " + std::to_string(cap_));
    }

    // ext_[size] holds the extension set for a subgraph of `size` nodes.
    void extend(int size) {
        auto& ext = ext_[size];
        if (size == 3) {
            for (int w : ext) {
                sub_[3] = w;
                record();
            }
            return;
        }
        while (!ext.empty()) {
            const int w = ext.back();
            ext.pop_back();
            auto& next = ext_[size + 1];
            next = ext;
            // Exclusive neighborhood of w: not in, nor adjacent to, the current subgraph.
            for (int u : g_.neighbors(w))
                if (u > root_ && blocked_[u] == 0) next.push_back(u);
            push(w);
            extend(size + 1);
            pop(w);
        }
    }

    const FractureGraph& g_;
    std::uint64_t cap_;
    std::uint64_t found_ = 0;
    int root_ = 0;
    int depth_ = 0;
    std::array<int, 4> sub_{};
    std::array<std::vector<int>, 4> ext_;
    std::vector<int> blocked_;
    Census4 census_{};
};

} // namespace

Census4 subgraph_census4(const FractureGraph& g, std::uint64_t cap) {
    if (g.n_nodes() < 4) return Census4{};
    return Esu4(g, cap).run();
}

CkSpectrum ck_spectrum(const FractureGraph& g) {
    CkSpectrum out;
    std::map<int, std::pair<double, int>> acc;
    for (int i = 0; i < g.n_nodes(); ++i) {
        const int k = g.degree(i);
        if (k < 2) continue;
        auto& [sum, count] = acc[k];
        sum += local_clustering(g, i);
        ++count;
    }
    std::vector<double> lx, ly;
    for (auto [k, sc] : acc) {
        const double c = sc.first / sc.second;
        out.points.emplace_back(k, c);
        if (c > 0.0) {
            lx.push_back(std::log10(static_cast<double>(k)));
            ly.push_back(std::log10(c));
        }
    }
    if (lx.size() >= 3) out.fit = linear_fit(lx, ly);
    return out;
}

MetricsReport compute_metrics(const FractureGraph& g, std::uint64_t census_cap) {
    MetricsReport r;
    r.c_local.resize(g.n_nodes());
    for (int i = 0; i < g.n_nodes(); ++i) r.c_local[i] = local_clustering(g, i);
    r.C = clustering_coefficient(g);
    r.degree = degree_distribution(g);
    r.paths = mean_path_length(g);
    r.ck = ck_spectrum(g);
    r.census = subgraph_census4(g, census_cap);
    return r;
}

} // namespace fracnet
