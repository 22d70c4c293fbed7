#pragma once

#include "tslab/engine/regret_curve.hpp"

#include <cstddef>
#include <functional>
#include <vector>

namespace tslab::engine {

/// Streaming mean and variance (Welford).
class RunningMoments {
public:
    void add(double x) noexcept;
    std::size_t count() const noexcept { return n_; }
    double mean() const noexcept { return mean_; }
    /// Sample variance with n−1 denominator; 0 for fewer than two values.
    double variance() const noexcept;
    /// Sample standard deviation over √n.
    double standard_error() const noexcept;

private:
    std::size_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

/// Fills `series[k][t]` for one simulation; series are pre-sized.
using SimulationFn = std::function<void(std::size_t sim, std::vector<std::vector<double>>& series)>;

struct SimulationSummary {
    std::vector<SeriesSummary> series;
    /// Standard error across simulations of the per-simulation sum of series 0.
    double total_stderr = 0.0;
};

/// Run `num_sims` independent simulations and reduce them in simulation-index
/// order, so the result does not depend on `threads`. The first exception
/// (lowest simulation index) is rethrown.
SimulationSummary run_simulations(std::size_t num_sims, std::size_t horizon, std::size_t num_series,
                                  std::size_t threads, const SimulationFn& fn);

}  // namespace tslab::engine
