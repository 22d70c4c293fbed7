#include "tslab/posterior_approx/bootstrap.hpp"

#include "tslab/errors.hpp"

namespace tslab::posterior_approx {

std::vector<std::size_t> bootstrap_indices(std::size_t n, stats::RngStream& rng) {
    std::vector<std::size_t> idx(n);
    for (auto& i : idx) i = rng.uniform_index(n);
    return idx;
}

PenalizedLikelihood::PenalizedLikelihood(const DifferentiableLogDensity* likelihood, Vector anchor, Matrix precision)
    : likelihood_(likelihood), anchor_(std::move(anchor)), precision_(std::move(precision)) {
    if (precision_.rows() != anchor_.size() || precision_.cols() != anchor_.size()) {
        throw ShapeError("PenalizedLikelihood: precision does not match dimension");
    }
    if (likelihood_ && likelihood_->dimension() != static_cast<std::size_t>(anchor_.size())) {
        throw ShapeError("PenalizedLikelihood: likelihood dimension mismatch");
    }
}

double PenalizedLikelihood::value(const Vector& x) const {
    const Vector d = x - anchor_;
    return (likelihood_ ? likelihood_->value(x) : 0.0) - d.dot(precision_ * d);
}

Vector PenalizedLikelihood::gradient(const Vector& x) const {
    Vector g = -2.0 * (precision_ * (x - anchor_));
    if (likelihood_) g += likelihood_->gradient(x);
    return g;
}

Matrix PenalizedLikelihood::hessian(const Vector& x) const {
    Matrix h = -2.0 * precision_;
    if (likelihood_) h += likelihood_->hessian(x);
    return h;
}

Vector bootstrap_sample(std::size_t history_size, const BootstrapPrior& prior, const LikelihoodFactory& likelihood,
                        stats::RngStream& rng, const NewtonOptions& opts) {
    const std::vector<std::size_t> idx = bootstrap_indices(history_size, rng);
    Vector anchor = prior.sample(rng);
    if (history_size == 0) return anchor;
    const std::unique_ptr<DifferentiableLogDensity> lik = likelihood(idx);
    PenalizedLikelihood objective(lik.get(), anchor, prior.precision);
    return newton_maximize(objective, anchor, opts).mode;
}

}  // namespace tslab::posterior_approx
