#pragma once

#include "tslab/bernoulli/beta_bandit.hpp"
#include "tslab/posterior_approx/log_density.hpp"

#include <cstddef>
#include <vector>

namespace tslab::posterior_approx {

/// Beta(α, β) expressed in the logit coordinate ψ = ln(θ/(1−θ)):
/// ln g(ψ) = α·ln σ(ψ) + β·ln(1 − σ(ψ)), which includes the Jacobian.
class LogitBetaDensity final : public DifferentiableLogDensity {
public:
    LogitBetaDensity(double alpha, double beta);

    std::size_t dimension() const override { return 1; }
    double value(const Vector& x) const override;
    Vector gradient(const Vector& x) const override;
    Matrix hessian(const Vector& x) const override;

private:
    double a_;
    double b_;
};

/// Penalized logit likelihood of one arm for the bootstrap:
/// s·ψ − n·ln(1+eψ) − P·(ψ − ψ⁰)².
class LogitBootstrapObjective final : public DifferentiableLogDensity {
public:
    LogitBootstrapObjective(double successes, double plays, double anchor, double precision);

    std::size_t dimension() const override { return 1; }
    double value(const Vector& x) const override;
    Vector gradient(const Vector& x) const override;
    Matrix hessian(const Vector& x) const override;

private:
    double s_;
    double n_;
    double anchor_;
    double precision_;
};

/// Precision of logit(θ) under θ ~ Beta(a, b): 1/(ψ₁(a) + ψ₁(b)).
double logit_beta_precision(double a, double b);

enum class ApproxRule { Laplace, Bootstrap, Langevin, Gibbs };

/// Approximate Thompson sampling on the beta-Bernoulli bandit. Laplace,
/// bootstrap and Langevin work per arm in logit coordinates; Gibbs samples
/// the joint posterior over θ ∈ [0,1]^K on a grid.
class ApproxBernoulliAgent : public engine::Agent<bernoulli::BernoulliTraits> {
public:
    struct Options {
        std::size_t langevin_steps = 100;
        double langevin_step = 0.05;
        std::size_t gibbs_sweeps = 1;
        std::size_t gibbs_grid = 2048;
    };

    ApproxBernoulliAgent(bernoulli::BetaParams prior, ApproxRule rule);
    ApproxBernoulliAgent(bernoulli::BetaParams prior, ApproxRule rule, Options opts);

    std::size_t select_action(std::size_t t, const engine::FiniteActionSet& admissible,
                              stats::RngStream& rng) override;
    void observe(std::size_t t, const std::size_t& a, const int& reward) override;

    const bernoulli::BetaParams& params() const noexcept { return params_; }

private:
    std::vector<double> sample_laplace(stats::RngStream& rng);
    std::vector<double> sample_bootstrap(stats::RngStream& rng);
    std::vector<double> sample_langevin(stats::RngStream& rng);
    std::vector<double> sample_gibbs(stats::RngStream& rng);

    bernoulli::BetaParams prior_;
    bernoulli::BetaParams params_;
    ApproxRule rule_;
    Options opts_;
    std::vector<double> warm_;
    std::vector<double> prior_precision_;
    /// counts_[2k + r]: number of history entries with arm k and reward r.
    std::vector<std::size_t> counts_;
    std::size_t history_size_ = 0;
};

}  // namespace tslab::posterior_approx
