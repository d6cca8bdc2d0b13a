#pragma once

#include "fracnet/dfn.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace fracnet {

/// Undirected simple graph, one node per fracture in creation order.
class FractureGraph {
public:
    FractureGraph() = default;
    explicit FractureGraph(int n_nodes);

    /// Builds from an edge list; duplicates are merged, self-loops rejected.
    static FractureGraph from_edges(int n_nodes, const std::vector<std::pair<int, int>>& edges);

    int n_nodes() const { return static_cast<int>(adj_.size()); }
    std::size_t edge_count() const;
    int degree(int i) const { return static_cast<int>(adj_.at(i).size()); }
    std::vector<int> degrees() const;
    int max_degree() const;

    /// Sorted neighbor list of node i.
    const std::vector<int>& neighbors(int i) const { return adj_.at(i); }
    bool has_edge(int i, int j) const;

    /// Edges as (i, j) with i < j, lexicographically sorted.
    std::vector<std::pair<int, int>> edges() const;

    /// Fracture id of each node (identity for graphs built from a network).
    const std::vector<int>& node_order() const { return node_order_; }

    friend bool operator==(const FractureGraph&, const FractureGraph&) = default;

private:
    friend FractureGraph build_graph(const FractureNetwork&);
    std::vector<std::vector<int>> adj_;
    std::vector<int> node_order_;
};

/// Connects fractures whose segments intersect. Candidate pairs come from a
/// uniform bucket grid with cell size alpha / 8; result equals all-pairs testing.
FractureGraph build_graph(const FractureNetwork& network);

enum class Axis { X, Y };

/// Disjoint-set forest with path halving and union by rank.
class UnionFind {
public:
    explicit UnionFind(std::size_t n = 0);
    std::size_t add();
    std::size_t find(std::size_t x);
    bool unite(std::size_t a, std::size_t b);
    bool connected(std::size_t a, std::size_t b) { return find(a) == find(b); }
    std::size_t size() const { return parent_.size(); }

private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> rank_;
};

/// True when the fracture reaches the low/high face of `axis` within aperture / 2.
bool touches_low(const Fracture& f, Axis axis);
bool touches_high(const Fracture& f, double domain, Axis axis);

/// Incremental side-to-side connectivity: fractures are added one at a time and
/// joined to every earlier fracture they intersect and to the two virtual
/// boundary nodes they touch.
class SpanningTracker {
public:
    SpanningTracker(double domain, Axis axis);
    void add(const Fracture& f);
    bool spans() { return uf_.connected(kLow, kHigh); }

private:
    static constexpr std::size_t kLow = 0;
    static constexpr std::size_t kHigh = 1;
    double domain_;
    Axis axis_;
    UnionFind uf_;
    std::vector<Segment> segments_;
};

bool percolates(const FractureNetwork& network, Axis axis = Axis::X);

} // namespace fracnet
