#pragma once

#include "tslab/posterior_approx/log_density.hpp"
#include "tslab/stats/rng.hpp"

#include <cstddef>
#include <functional>

namespace tslab::posterior_approx {

struct NewtonOptions {
    std::size_t max_iterations = 200;
    /// Armijo sufficient-increase coefficient.
    double armijo = 1e-4;
    double contraction = 0.5;
    double initial_step = 1.0;
    /// Stop once ‖∇f‖ < tolerance·max(1, |f|).
    double tolerance = 1e-8;
    /// Called with each accepted iterate and its value.
    std::function<void(const Vector&, double)> on_accept;
};

struct NewtonResult {
    Vector mode;
    /// C = −∇²f(mode).
    Matrix neg_hessian;
    double value = 0.0;
    std::size_t iterations = 0;
};

/// Maximize f by Newton's method with backtracking line search. Where the
/// Hessian is not negative definite the step solves (−∇²f + τI)d = ∇f for the
/// smallest working τ, falling back to a gradient step. Throws
/// ConvergenceError (carrying the last iterate) when the iteration cap is hit.
NewtonResult newton_maximize(const DifferentiableLogDensity& f, Vector init, const NewtonOptions& opts = {});

/// Gaussian approximation N(mode, C⁻¹) kept in factored form C = L·Lᵀ.
struct LaplaceApproximation {
    Vector mode;
    Matrix precision;
    Matrix precision_factor;

    /// mode + L⁻ᵀ·w with w standard normal.
    Vector sample(stats::RngStream& rng) const;
};

/// Fit the Laplace approximation; throws FactorizationError if −∇²f at the
/// mode is not positive definite.
LaplaceApproximation laplace_fit(const DifferentiableLogDensity& f, Vector init, const NewtonOptions& opts = {});

Vector laplace_sample(const DifferentiableLogDensity& f, Vector init, stats::RngStream& rng,
                      const NewtonOptions& opts = {});

}  // namespace tslab::posterior_approx
