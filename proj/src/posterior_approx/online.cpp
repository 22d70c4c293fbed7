#include "tslab/posterior_approx/online.hpp"

#include "tslab/errors.hpp"
#include "tslab/stats/distributions.hpp"

#include <cmath>

namespace tslab::posterior_approx {

OnlineNewtonState::OnlineNewtonState(Vector theta_bar, const stats::SpdMatrix& h)
    : theta_bar_(std::move(theta_bar)), h_(h.matrix()) {
    if (h_.rows() != theta_bar_.size()) throw ShapeError("OnlineNewtonState: dimension mismatch");
    refactor();
}

Matrix repair_spd(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(m);
    Vector lambda = eig.eigenvalues();
    const double top = lambda.maxCoeff();
    if (!(top > 0.0)) throw NumericalError("repair_spd: matrix has no positive eigenvalue");
    const double floor = kSpdFloor * top;
    for (Eigen::Index i = 0; i < lambda.size(); ++i) lambda(i) = std::max(lambda(i), floor);
    Matrix v = eig.eigenvectors();
    Matrix out = v * lambda.asDiagonal() * v.transpose();
    stats::symmetrize(out);
    return out;
}

void OnlineNewtonState::refactor() {
    stats::symmetrize(h_);
    try {
        h_inv_ = stats::cholesky_inverse(stats::cholesky_lower(h_));
    } catch (const FactorizationError&) {
        h_ = repair_spd(h_);
        h_inv_ = stats::cholesky_inverse(stats::cholesky_lower(h_));
    }
}

void OnlineNewtonState::update(const DifferentiableLogDensity& g, double weight) {
    if (g.dimension() != static_cast<std::size_t>(theta_bar_.size())) {
        throw ShapeError("OnlineNewtonState::update: dimension mismatch");
    }
    if (weight == 0.0) return;
    const Vector grad = g.gradient(theta_bar_);
    h_ -= weight * g.hessian(theta_bar_);
    refactor();
    theta_bar_ += weight * (h_inv_ * grad);
}

void OnlineNewtonState::update_rank_one(const Vector& gradient, const Vector& a, double c, double weight) {
    if (gradient.size() != theta_bar_.size() || a.size() != theta_bar_.size()) {
        throw ShapeError("OnlineNewtonState::update_rank_one: dimension mismatch");
    }
    if (weight == 0.0) return;
    const double cw = c * weight;
    const Vector ha = h_inv_ * a;
    const double denom = 1.0 + cw * a.dot(ha);
    h_.noalias() += cw * a * a.transpose();
    if (!(denom > 0.0)) {
        refactor();
    } else {
        h_inv_.noalias() -= (cw / denom) * ha * ha.transpose();
        stats::symmetrize(h_inv_);
    }
    theta_bar_ += weight * (h_inv_ * gradient);
}

Vector OnlineNewtonState::sample(stats::RngStream& rng) const {
    return stats::sample_mvn_factor(theta_bar_, stats::cholesky_lower(h_inv_), rng);
}

std::size_t ensemble_bootstrap_update(std::vector<OnlineNewtonState>& models, const DifferentiableLogDensity& g,
                                      stats::RngStream& rng) {
    std::size_t untouched = 0;
    for (auto& m : models) {
        const auto z = stats::sample_poisson(1.0, rng);
        if (z == 0) {
            ++untouched;
            continue;
        }
        m.update(g, static_cast<double>(z));
    }
    return untouched;
}

LinearEnsemble::LinearEnsemble(const Vector& prior_mean, const stats::SpdMatrix& prior_cov, double noise_variance,
                               std::size_t num_models, stats::RngStream& rng)
    : cov_(prior_cov.matrix()), noise_var_(noise_variance) {
    if (prior_cov.size() != static_cast<std::size_t>(prior_mean.size())) {
        throw ShapeError("LinearEnsemble: prior mean and covariance dimensions differ");
    }
    if (!(noise_variance > 0.0)) throw DomainError("LinearEnsemble: noise variance must be positive");
    if (num_models == 0) throw DomainError("LinearEnsemble: need at least one model");
    const Matrix l = stats::cholesky(prior_cov);
    models_.reserve(num_models);
    for (std::size_t n = 0; n < num_models; ++n) models_.push_back(stats::sample_mvn_factor(prior_mean, l, rng));
}

void LinearEnsemble::update(const Vector& x, double y, stats::RngStream& rng) {
    if (x.size() != cov_.rows()) throw ShapeError("LinearEnsemble::update: action dimension mismatch");
    if (std::isinf(noise_var_)) return;
    // Kalman form: Σ_new·Σ⁻¹ = I − k·xᵀ and Σ_new·x/σ² = k with k = Σx/(σ² + xᵀΣx).
    const Vector sx = cov_ * x;
    const double s = noise_var_ + x.dot(sx);
    const Vector k = sx / s;
    cov_.noalias() -= k * sx.transpose();
    stats::symmetrize(cov_);
    const double sd = std::sqrt(noise_var_);
    for (auto& m : models_) {
        const double w = sd * stats::sample_normal(rng);
        m += k * (y + w - x.dot(m));
    }
}

const Vector& LinearEnsemble::sample_model(stats::RngStream& rng) const {
    return models_[rng.uniform_index(models_.size())];
}

void GaussianBelief::observe_linear(const Vector& x, double y, double noise_variance) {
    if (x.size() != mean.size()) throw ShapeError("GaussianBelief::observe_linear: dimension mismatch");
    const Vector sx = cov * x;
    const double s = noise_variance + x.dot(sx);
    const Vector k = sx / s;
    mean += k * (y - x.dot(mean));
    cov.noalias() -= k * sx.transpose();
    stats::symmetrize(cov);
}

}  // namespace tslab::posterior_approx
