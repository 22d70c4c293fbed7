#pragma once

#include "tslab/stats/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace tslab::shortest_path {

using Path = std::vector<std::size_t>;

struct Edge {
    std::size_t from;
    std::size_t to;
};

/// Directed graph with a designated source and sink; edge ids are indices
/// into `edges`.
struct Digraph {
    std::size_t num_vertices = 0;
    std::size_t source = 0;
    std::size_t sink = 0;
    std::vector<Edge> edges;
    std::vector<std::vector<std::size_t>> out_edges;

    void add_edge(std::size_t from, std::size_t to);
    /// True iff `path` is a chain of edges from source to sink.
    bool is_path(const Path& path) const;
};

struct PathResult {
    Path edges;
    double cost = 0.0;
};

/// Dijkstra from source to sink. Weights must be positive; edges flagged in
/// `closed` are skipped. Throws DomainError on a nonpositive weight and
/// NumericalError when the sink is unreachable.
PathResult shortest_path(const Digraph& g, const std::vector<double>& weights,
                         const std::vector<bool>* closed = nullptr);

/// Diamond lattice with M stages. Vertex (i, j) has taken i down-steps and
/// j up-steps, 0 ≤ i, j ≤ M/2; every source-sink path has M edges.
class BinomialBridge {
public:
    explicit BinomialBridge(std::size_t stages);

    std::size_t stages() const noexcept { return stages_; }
    std::size_t num_edges() const noexcept { return graph_.edges.size(); }
    const Digraph& graph() const noexcept { return graph_; }
    /// 1 if the edge lies in the lower half of the bridge, 0 for the upper.
    int half(std::size_t edge) const { return half_[edge]; }
    const std::vector<int>& halves() const noexcept { return half_; }

    std::size_t vertex(std::size_t downs, std::size_t ups) const { return downs * (stages_ / 2 + 1) + ups; }

    /// Source-sink path count by dynamic programming over the lattice.
    std::uint64_t path_count() const;
    /// Every source-sink path; throws CapacityError for M > 16.
    std::vector<Path> enumerate_paths() const;
    /// Uniformly random source-sink path.
    Path random_path(stats::RngStream& rng) const;

    PathResult shortest(const std::vector<double>& weights, const std::vector<bool>* closed = nullptr) const {
        return shortest_path(graph_, weights, closed);
    }

private:
    std::size_t stages_;
    Digraph graph_;
    std::vector<int> half_;
    /// Edge id of the down-/up-step leaving each vertex, or npos.
    std::vector<std::size_t> down_edge_;
    std::vector<std::size_t> up_edge_;
};

BinomialBridge build_binomial_bridge(std::size_t stages);

double path_cost(const Path& path, const std::vector<double>& weights);

}  // namespace tslab::shortest_path
