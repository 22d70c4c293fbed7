#pragma once

#include "tslab/stats/rng.hpp"

#include <cstddef>
#include <vector>

namespace tslab::engine {

/// Index of the largest value, ties broken uniformly at random.
/// The stream is consumed only when a tie actually occurs.
std::size_t argmax_random_tie(const std::vector<double>& values, stats::RngStream& rng);

/// Index of the smallest value, ties broken uniformly at random.
std::size_t argmin_random_tie(const std::vector<double>& values, stats::RngStream& rng);

/// Admissible set {0, ..., count-1}.
struct FiniteActionSet {
    std::size_t count = 0;
    bool contains(std::size_t a) const noexcept { return a < count; }
};

}  // namespace tslab::engine
