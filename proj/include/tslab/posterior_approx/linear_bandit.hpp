#pragma once

#include "tslab/engine/experiment.hpp"
#include "tslab/engine/select.hpp"
#include "tslab/posterior_approx/online.hpp"

#include <cstddef>
#include <memory>
#include <vector>

namespace tslab::posterior_approx {

/// Actions index a fixed list of feature vectors; observations are rewards.
using LinearTraits = engine::ProblemTraits<std::size_t, double, engine::FiniteActionSet>;

/// r = θᵀx + N(0, σ_w²) over a finite action list.
class LinearBanditEnv : public engine::Environment<LinearTraits> {
public:
    LinearBanditEnv(std::vector<Vector> actions, Vector theta, double noise_variance);

    engine::FiniteActionSet admissible_actions(std::size_t) const override { return {actions_.size()}; }
    double step(std::size_t t, const std::size_t& a, stats::RngStream& rng) override;
    double per_period_regret(std::size_t t, const std::size_t& a) const override;

private:
    std::vector<Vector> actions_;
    Vector theta_;
    double noise_sd_;
    double best_;
};

/// Exact Thompson sampling through the Kalman posterior.
class KalmanTsAgent : public engine::Agent<LinearTraits> {
public:
    KalmanTsAgent(std::vector<Vector> actions, const Vector& prior_mean, const stats::SpdMatrix& prior_cov,
                  double noise_variance);

    std::size_t select_action(std::size_t t, const engine::FiniteActionSet& admissible,
                              stats::RngStream& rng) override;
    void observe(std::size_t t, const std::size_t& a, const double& y) override;

private:
    std::vector<Vector> actions_;
    GaussianBelief belief_;
    double noise_var_;
};

/// Ensemble sampling: act greedily for a uniformly chosen ensemble member.
/// The ensemble update draws its perturbations from a stream owned by the agent.
class EnsembleTsAgent : public engine::Agent<LinearTraits> {
public:
    EnsembleTsAgent(std::vector<Vector> actions, const Vector& prior_mean, const stats::SpdMatrix& prior_cov,
                    double noise_variance, std::size_t num_models, stats::RngStream init);

    std::size_t select_action(std::size_t t, const engine::FiniteActionSet& admissible,
                              stats::RngStream& rng) override;
    void observe(std::size_t t, const std::size_t& a, const double& y) override;

private:
    std::vector<Vector> actions_;
    stats::RngStream rng_;
    LinearEnsemble ensemble_;
};

}  // namespace tslab::posterior_approx
