#pragma once

#include "tslab/engine/experiment.hpp"
#include "tslab/engine/finite_belief.hpp"
#include "tslab/engine/select.hpp"

#include <cstddef>

namespace tslab::bernoulli {

/// Actions {0, ..., k}; observations are deterministic rewards.
using RevealingTraits = engine::ProblemTraits<std::size_t, double, engine::FiniteActionSet>;

/// Reward of `action` when the hidden parameter is `theta` ∈ {1..k}: action i
/// pays 1 iff i = θ, action 0 pays 1/(2θ).
double revealing_reward(std::size_t action, std::size_t theta);

class RevealingActionEnv : public engine::Environment<RevealingTraits> {
public:
    RevealingActionEnv(std::size_t k, std::size_t theta);

    engine::FiniteActionSet admissible_actions(std::size_t) const override { return {k_ + 1}; }
    double step(std::size_t t, const std::size_t& a, stats::RngStream& rng) override;
    double per_period_regret(std::size_t t, const std::size_t& a) const override;

    std::size_t k() const noexcept { return k_; }
    std::size_t theta() const noexcept { return theta_; }

private:
    std::size_t k_;
    std::size_t theta_;
};

/// θ drawn uniformly from {1..k}.
RevealingActionEnv revealing_action_env(std::size_t k, stats::RngStream& rng);

/// Thompson sampling over the finite hypothesis set {1..k}: sample θ̂ from the
/// posterior, play the action optimal for θ̂, condition on the reward.
class RevealingTsAgent : public engine::Agent<RevealingTraits> {
public:
    explicit RevealingTsAgent(std::size_t k);

    std::size_t select_action(std::size_t t, const engine::FiniteActionSet& admissible,
                              stats::RngStream& rng) override;
    void observe(std::size_t t, const std::size_t& a, const double& reward) override;

    const engine::FiniteBelief& belief() const noexcept { return belief_; }

private:
    std::size_t k_;
    engine::FiniteBelief belief_;
};

}  // namespace tslab::bernoulli
