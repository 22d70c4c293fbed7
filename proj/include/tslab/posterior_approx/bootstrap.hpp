#pragma once

#include "tslab/engine/history.hpp"
#include "tslab/posterior_approx/log_density.hpp"
#include "tslab/posterior_approx/newton.hpp"
#include "tslab/stats/rng.hpp"

#include <cstddef>
#include <functional>
#include <memory>
#include <vector>

namespace tslab::posterior_approx {

/// n indices drawn uniformly with replacement from {0..n-1}.
std::vector<std::size_t> bootstrap_indices(std::size_t n, stats::RngStream& rng);

/// Resampled copy of a history of the same length.
template <class A, class O>
engine::History<A, O> resample_history(const engine::History<A, O>& h, stats::RngStream& rng) {
    engine::History<A, O> out;
    for (std::size_t i : bootstrap_indices(h.size(), rng)) out.append(h[i].first, h[i].second);
    return out;
}

/// Prior perturbation used by the bootstrap: a sampler for θ⁰ and the
/// precision Σ⁻¹ weighting the penalty.
struct BootstrapPrior {
    std::function<Vector(stats::RngStream&)> sample;
    Matrix precision;
};

/// Builds ln L̂ for the resampled indices.
using LikelihoodFactory = std::function<std::unique_ptr<DifferentiableLogDensity>(const std::vector<std::size_t>&)>;

/// ln L̂(θ) − (θ−θ⁰)ᵀ·P·(θ−θ⁰).
class PenalizedLikelihood final : public DifferentiableLogDensity {
public:
    PenalizedLikelihood(const DifferentiableLogDensity* likelihood, Vector anchor, Matrix precision);

    std::size_t dimension() const override { return static_cast<std::size_t>(anchor_.size()); }
    double value(const Vector& x) const override;
    Vector gradient(const Vector& x) const override;
    Matrix hessian(const Vector& x) const override;

private:
    const DifferentiableLogDensity* likelihood_;
    Vector anchor_;
    Matrix precision_;
};

/// One bootstrap posterior sample: resample `history_size` indices, draw θ⁰
/// from the prior, and maximize the penalized likelihood starting at θ⁰.
Vector bootstrap_sample(std::size_t history_size, const BootstrapPrior& prior, const LikelihoodFactory& likelihood,
                        stats::RngStream& rng, const NewtonOptions& opts = {});

}  // namespace tslab::posterior_approx
