#pragma once

#include "tslab/posterior_approx/log_density.hpp"
#include "tslab/stats/rng.hpp"

#include <cstddef>
#include <functional>
#include <optional>

namespace tslab::posterior_approx {

struct LangevinOptions {
    /// SPD preconditioner M; identity when empty.
    std::optional<Matrix> preconditioner;
    /// Multiplies the injected noise; 0 gives preconditioned gradient ascent.
    double noise_scale = 1.0;
    /// Called with every iterate after a step.
    std::function<void(const Vector&)> on_step;
};

inline constexpr double kLangevinDefaultStep = 1e-2;

/// φ ← φ + ε·M·∇ln g(φ) + √(2ε)·M^{1/2}·W for `steps` iterations; returns the
/// final iterate. M^{1/2} is realized by the Cholesky factor of M, which gives
/// the same noise distribution. Throws NumericalError if the chain diverges.
Vector langevin_chain(const DifferentiableLogDensity& f, Vector init, double eps, std::size_t steps,
                      stats::RngStream& rng, const LangevinOptions& opts = {});

}  // namespace tslab::posterior_approx
