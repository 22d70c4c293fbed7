#include "tslab/shortest_path/graph.hpp"

#include "tslab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <string>
#include <utility>

namespace tslab::shortest_path {

namespace {
constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
}

void Digraph::add_edge(std::size_t from, std::size_t to) {
    if (from >= num_vertices || to >= num_vertices) throw IndexError("Digraph::add_edge: vertex out of range");
    out_edges[from].push_back(edges.size());
    edges.push_back({from, to});
}

bool Digraph::is_path(const Path& path) const {
    std::size_t at = source;
    for (std::size_t e : path) {
        if (e >= edges.size() || edges[e].from != at) return false;
        at = edges[e].to;
    }
    return at == sink && !path.empty();
}

PathResult shortest_path(const Digraph& g, const std::vector<double>& weights, const std::vector<bool>* closed) {
    if (weights.size() != g.edges.size()) throw ShapeError("shortest_path: one weight per edge required");
    for (std::size_t e = 0; e < weights.size(); ++e) {
        if (!(weights[e] > 0.0) || std::isnan(weights[e])) {
            throw DomainError("shortest_path: edge " + std::to_string(e) + " has nonpositive weight");
        }
    }
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(g.num_vertices, inf);
    std::vector<std::size_t> via(g.num_vertices, kNone);
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[g.source] = 0.0;
    heap.push({0.0, g.source});
    while (!heap.empty()) {
        const auto [d, v] = heap.top();
        heap.pop();
        if (d > dist[v]) continue;
        if (v == g.sink) break;
        for (std::size_t e : g.out_edges[v]) {
            if (closed && (*closed)[e]) continue;
            const std::size_t w = g.edges[e].to;
            const double nd = d + weights[e];
            if (nd < dist[w]) {
                dist[w] = nd;
                via[w] = e;
                heap.push({nd, w});
            }
        }
    }
    if (!std::isfinite(dist[g.sink])) throw NumericalError("shortest_path: sink unreachable");
    PathResult out;
    for (std::size_t v = g.sink; v != g.source; v = g.edges[via[v]].from) out.edges.push_back(via[v]);
    std::reverse(out.edges.begin(), out.edges.end());
    out.cost = path_cost(out.edges, weights);
    return out;
}

double path_cost(const Path& path, const std::vector<double>& weights) {
    double c = 0.0;
    for (std::size_t e : path) c += weights[e];
    return c;
}

BinomialBridge::BinomialBridge(std::size_t stages) : stages_(stages) {
    if (stages == 0 || stages % 2 != 0) {
        throw DomainError("binomial bridge needs a positive even stage count, got " + std::to_string(stages));
    }
    const std::size_t half = stages / 2;
    const std::size_t side = half + 1;
    graph_.num_vertices = side * side;
    graph_.out_edges.resize(graph_.num_vertices);
    graph_.source = vertex(0, 0);
    graph_.sink = vertex(half, half);
    down_edge_.assign(graph_.num_vertices, kNone);
    up_edge_.assign(graph_.num_vertices, kNone);
    // Lower half: both endpoints at or below the centre line (ups ≤ downs).
    auto lower = [](std::size_t i0, std::size_t j0, std::size_t i1, std::size_t j1) {
        return j0 <= i0 && j1 <= i1;
    };
    for (std::size_t i = 0; i <= half; ++i) {
        for (std::size_t j = 0; j <= half; ++j) {
            const std::size_t v = vertex(i, j);
            if (i < half) {
                down_edge_[v] = graph_.edges.size();
                graph_.add_edge(v, vertex(i + 1, j));
                half_.push_back(lower(i, j, i + 1, j) ? 1 : 0);
            }
            if (j < half) {
                up_edge_[v] = graph_.edges.size();
                graph_.add_edge(v, vertex(i, j + 1));
                half_.push_back(lower(i, j, i, j + 1) ? 1 : 0);
            }
        }
    }
}

std::uint64_t BinomialBridge::path_count() const {
    std::vector<std::uint64_t> count(graph_.num_vertices, 0);
    count[graph_.source] = 1;
    const std::size_t half = stages_ / 2;
    for (std::size_t layer = 0; layer < stages_; ++layer) {
        for (std::size_t i = 0; i <= std::min(layer, half); ++i) {
            const std::size_t j = layer - i;
            if (j > half) continue;
            const std::size_t v = vertex(i, j);
            for (std::size_t e : graph_.out_edges[v]) count[graph_.edges[e].to] += count[v];
        }
    }
    return count[graph_.sink];
}

std::vector<Path> BinomialBridge::enumerate_paths() const {
    if (stages_ > 16) throw CapacityError("enumerate_paths: bridge too large to enumerate");
    std::vector<Path> out;
    Path current;
    std::function<void(std::size_t)> walk = [&](std::size_t v) {
        if (v == graph_.sink) {
            out.push_back(current);
            return;
        }
        for (std::size_t e : graph_.out_edges[v]) {
            current.push_back(e);
            walk(graph_.edges[e].to);
            current.pop_back();
        }
    };
    walk(graph_.source);
    return out;
}

Path BinomialBridge::random_path(stats::RngStream& rng) const {
    const std::size_t half = stages_ / 2;
    std::vector<char> ups(stages_, 0);
    std::fill(ups.begin(), ups.begin() + static_cast<std::ptrdiff_t>(half), 1);
    for (std::size_t i = stages_ - 1; i > 0; --i) std::swap(ups[i], ups[rng.uniform_index(i + 1)]);
    Path p;
    p.reserve(stages_);
    std::size_t v = graph_.source;
    for (char u : ups) {
        const std::size_t e = u ? up_edge_[v] : down_edge_[v];
        p.push_back(e);
        v = graph_.edges[e].to;
    }
    return p;
}

BinomialBridge build_binomial_bridge(std::size_t stages) { return BinomialBridge(stages); }

}  // namespace tslab::shortest_path
