#pragma once

#include "tslab/posterior_approx/log_density.hpp"
#include "tslab/stats/linalg.hpp"
#include "tslab/stats/rng.hpp"

#include <cstddef>
#include <vector>

namespace tslab::posterior_approx {

/// Eigenvalue floor applied when an update breaks positive definiteness,
/// relative to the largest eigenvalue.
inline constexpr double kSpdFloor = 1e-10;

/// Incremental Laplace state: H accumulates negative Hessians of log terms
/// and θ̄ tracks the mode by one Newton step per observation.
class OnlineNewtonState {
public:
    OnlineNewtonState(Vector theta_bar, const stats::SpdMatrix& h);

    const Vector& theta_bar() const noexcept { return theta_bar_; }
    const Matrix& h() const noexcept { return h_; }
    const Matrix& h_inverse() const noexcept { return h_inv_; }

    /// H ← H − w∇²g(θ̄); θ̄ ← θ̄ + w·H⁻¹∇g(θ̄), with H the updated matrix.
    void update(const DifferentiableLogDensity& g, double weight = 1.0);

    /// Same update when −∇²g(θ̄) = c·a·aᵀ, with H⁻¹ maintained by the
    /// Sherman–Morrison formula.
    void update_rank_one(const Vector& gradient, const Vector& a, double c, double weight = 1.0);

    /// Draw from N(θ̄, H⁻¹).
    Vector sample(stats::RngStream& rng) const;

private:
    void refactor();

    Vector theta_bar_;
    Matrix h_;
    Matrix h_inv_;
};

/// Floor the eigenvalues of a symmetric matrix at kSpdFloor·λ_max.
Matrix repair_spd(const Matrix& m);

/// Bootstrap ensemble step: each model takes the online Newton update with an
/// independent Poisson(1) weight; weight 0 leaves the model untouched.
/// Returns the number of untouched models.
std::size_t ensemble_bootstrap_update(std::vector<OnlineNewtonState>& models, const DifferentiableLogDensity& g,
                                      stats::RngStream& rng);

/// Ensemble of perturbed linear-Gaussian models sharing one covariance.
class LinearEnsemble {
public:
    /// Models are initialized as independent draws from N(μ₀, Σ₀).
    LinearEnsemble(const Vector& prior_mean, const stats::SpdMatrix& prior_cov, double noise_variance,
                   std::size_t num_models, stats::RngStream& rng);

    /// Σ ← (Σ⁻¹ + x·xᵀ/σ²)⁻¹ and θ̄ⁿ ← Σ(Σ_old⁻¹θ̄ⁿ + x(y + w̃ⁿ)/σ²), w̃ⁿ ~ N(0, σ²).
    void update(const Vector& x, double y, stats::RngStream& rng);

    const Matrix& covariance() const noexcept { return cov_; }
    const std::vector<Vector>& models() const noexcept { return models_; }
    double noise_variance() const noexcept { return noise_var_; }
    std::size_t size() const noexcept { return models_.size(); }
    /// A uniformly chosen member.
    const Vector& sample_model(stats::RngStream& rng) const;

private:
    Matrix cov_;
    double noise_var_;
    std::vector<Vector> models_;
};

/// Exact Kalman posterior for the linear-Gaussian observation model.
struct GaussianBelief {
    Vector mean;
    Matrix cov;

    /// Condition on y = xᵀθ + N(0, σ²).
    void observe_linear(const Vector& x, double y, double noise_variance);
};

}  // namespace tslab::posterior_approx
