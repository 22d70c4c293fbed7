#pragma once

#include "tslab/engine/experiment.hpp"
#include "tslab/engine/select.hpp"
#include "tslab/stats/rng.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace tslab::bernoulli {

/// Actions are arm indices; observations are rewards in {0, 1}.
using BernoulliTraits = engine::ProblemTraits<std::size_t, int, engine::FiniteActionSet>;

/// Per-arm beta pseudo-counts.
struct BetaParams {
    std::vector<double> alpha;
    std::vector<double> beta;

    BetaParams() = default;
    BetaParams(std::vector<double> a, std::vector<double> b);
    static BetaParams uniform(std::size_t k);
    static BetaParams constant(std::size_t k, double a, double b);

    std::size_t size() const noexcept { return alpha.size(); }
    double mean(std::size_t k) const { return alpha[k] / (alpha[k] + beta[k]); }
    bool operator==(const BetaParams&) const = default;
};

/// (α_k, β_k) ← (α_k + r, β_k + 1 − r).
BetaParams update_beta(BetaParams params, std::size_t k, int reward);
void update_beta_inplace(BetaParams& params, std::size_t k, int reward);

/// Discounted update: every arm relaxes toward the anchor at rate γ and the
/// played arm additionally counts its reward.
BetaParams nonstationary_update(BetaParams params, const BetaParams& anchor, double gamma, std::size_t k,
                                int reward);
void nonstationary_update_inplace(BetaParams& params, const BetaParams& anchor, double gamma, std::size_t k,
                                  int reward);

std::size_t greedy_select(const BetaParams& params, stats::RngStream& rng);
std::size_t ts_select(const BetaParams& params, stats::RngStream& rng);
std::size_t epsilon_greedy_select(const BetaParams& params, double epsilon, stats::RngStream& rng);

/// Exploration rate as a function of the period: fixed ε or m/(m+t).
class EpsilonSchedule {
public:
    static EpsilonSchedule fixed(double epsilon);
    static EpsilonSchedule annealing(double m);

    double at(std::size_t t) const noexcept;
    bool annealed() const noexcept { return annealing_; }
    double parameter() const noexcept { return value_; }

private:
    EpsilonSchedule(double v, bool a) : value_(v), annealing_(a) {}
    double value_;
    bool annealing_;
};

/// Arms' success probabilities, optionally drifting: each period every arm is
/// independently redrawn from Beta(ᾱ_k, β̄_k) with probability γ.
class BernoulliEnv : public engine::Environment<BernoulliTraits> {
public:
    struct Drift {
        double gamma;
        BetaParams anchor;
    };

    explicit BernoulliEnv(std::vector<double> theta, std::optional<Drift> drift = std::nullopt);

    void begin_period(std::size_t t, stats::RngStream& rng) override;
    engine::FiniteActionSet admissible_actions(std::size_t) const override { return {theta_.size()}; }
    int step(std::size_t t, const std::size_t& a, stats::RngStream& rng) override;
    double per_period_regret(std::size_t t, const std::size_t& a) const override;

    const std::vector<double>& theta() const noexcept { return theta_; }
    /// Zero-based index of the arm with the largest mean (lowest index on ties).
    std::size_t best_arm() const;

private:
    std::vector<double> theta_;
    std::optional<Drift> drift_;
};

/// Resample each θ_k ~ Beta(ᾱ_k, β̄_k) with probability γ, else keep it.
void drift_environment_step(std::vector<double>& theta, double gamma, const BetaParams& anchor,
                            stats::RngStream& rng);

/// Independent draws θ_k ~ Beta(α_k, β_k).
std::vector<double> sample_theta(const BetaParams& prior, stats::RngStream& rng);

enum class BetaRule { Greedy, Thompson, EpsilonGreedy };

/// Beta-Bernoulli agent: greedy, Thompson or ε-greedy selection on top of
/// conjugate (optionally nonstationary) updates.
class BetaBernoulliAgent : public engine::Agent<BernoulliTraits> {
public:
    struct Nonstationary {
        double gamma;
        BetaParams anchor;
    };

    BetaBernoulliAgent(BetaParams prior, BetaRule rule,
                       EpsilonSchedule schedule = EpsilonSchedule::fixed(0.0),
                       std::optional<Nonstationary> nonstationary = std::nullopt);

    std::size_t select_action(std::size_t t, const engine::FiniteActionSet& admissible,
                              stats::RngStream& rng) override;
    void observe(std::size_t t, const std::size_t& a, const int& reward) override;

    const BetaParams& params() const noexcept { return params_; }

private:
    BetaParams params_;
    BetaRule rule_;
    EpsilonSchedule schedule_;
    std::optional<Nonstationary> nonstationary_;
};

/// Picks uniformly among admissible actions; ignores feedback.
class UniformRandomAgent : public engine::Agent<BernoulliTraits> {
public:
    std::size_t select_action(std::size_t, const engine::FiniteActionSet& admissible,
                              stats::RngStream& rng) override;
    void observe(std::size_t, const std::size_t&, const int&) override {}
};

}  // namespace tslab::bernoulli
