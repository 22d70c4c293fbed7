#pragma once

#include "tslab/posterior_approx/log_density.hpp"
#include "tslab/stats/rng.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace tslab::posterior_approx {

using Box = std::vector<std::pair<double, double>>;

inline constexpr std::size_t kDefaultGibbsGrid = 2048;

/// Draw from a one-dimensional unnormalized log-density on [lo, hi] by
/// inverse-CDF sampling over `grid` equal cells evaluated at their midpoints,
/// with a uniform position inside the chosen cell. Throws NumericalError when
/// every cell has zero mass.
double grid_inverse_cdf_sample(const std::function<double(double)>& log_density, double lo, double hi,
                               std::size_t grid, stats::RngStream& rng);

/// Gibbs sampler: `sweeps` passes over the coordinates, each coordinate drawn
/// from its conditional restricted to the caller's box.
Vector gibbs_sample(const LogDensity& f, Vector init, const Box& box, std::size_t sweeps, stats::RngStream& rng,
                    std::size_t grid = kDefaultGibbsGrid);

}  // namespace tslab::posterior_approx
