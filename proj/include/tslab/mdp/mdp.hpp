#pragma once

#include "tslab/engine/regret_curve.hpp"
#include "tslab/stats/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace tslab::mdp {

/// Episodic MDP with known horizon. transition[s][a] is a distribution over
/// next states and reward[s][a] the mean reward.
struct FiniteHorizonMdp {
    std::size_t states = 0;
    std::size_t actions = 0;
    std::size_t horizon = 1;
    std::vector<std::vector<std::vector<double>>> transition;
    std::vector<std::vector<double>> reward;
    std::vector<double> initial;

    /// Throws ShapeError/DomainError unless every distribution sums to 1
    /// within 1e-9 and the horizon is positive.
    void validate() const;
};

/// Action for every (state, timestep).
class Policy {
public:
    Policy(std::size_t states, std::size_t horizon, std::size_t fill = 0)
        : states_(states), horizon_(horizon), action_(states * horizon, fill) {}

    std::size_t at(std::size_t s, std::size_t h) const { return action_.at(h * states_ + s); }
    void set(std::size_t s, std::size_t h, std::size_t a) { action_.at(h * states_ + s) = a; }
    std::size_t states() const noexcept { return states_; }
    std::size_t horizon() const noexcept { return horizon_; }

    bool operator==(const Policy&) const = default;

private:
    std::size_t states_;
    std::size_t horizon_;
    std::vector<std::size_t> action_;
};

/// Ties among maximizing actions: a state's preferred action if it is one of
/// them, else uniform under `rng`, else the lowest index.
struct TieBreak {
    stats::RngStream* rng = nullptr;
    const std::vector<std::size_t>* preferred = nullptr;
};

struct Solution {
    Policy policy;
    /// value[h][s] for h = 0..H, with value[H] = 0.
    std::vector<std::vector<double>> value;
};

/// Backward induction over h = H−1..0.
Solution value_iteration(const FiniteHorizonMdp& mdp, TieBreak ties = {});

/// value[h][s] of a fixed policy.
std::vector<std::vector<double>> evaluate_policy(const FiniteHorizonMdp& mdp, const Policy& policy);

/// Σ_s ρ(s)·value[0][s].
double initial_value(const FiniteHorizonMdp& mdp, const std::vector<std::vector<double>>& value);

/// Posterior over MDPs that can be sampled and solved.
class MdpPosterior {
public:
    virtual ~MdpPosterior() = default;
    /// Policy optimal for one posterior sample.
    virtual Policy sample_policy(stats::RngStream& rng) const = 0;
    virtual void observe(std::size_t s, std::size_t a, double r, std::size_t s_next) = 0;
};

/// Dirichlet pseudo-counts over successors and Gaussian beliefs over mean
/// rewards with known observation noise.
class DirichletGaussianPosterior final : public MdpPosterior {
public:
    DirichletGaussianPosterior(std::size_t states, std::size_t actions, std::size_t horizon,
                               std::vector<double> initial, double alpha0, double reward_mean0,
                               double reward_var0, double noise_var);

    Policy sample_policy(stats::RngStream& rng) const override;
    void observe(std::size_t s, std::size_t a, double r, std::size_t s_next) override;

    /// α[s][a][s_next] += 1.
    void dirichlet_update(std::size_t s, std::size_t a, std::size_t s_next);
    void reward_update(std::size_t s, std::size_t a, double r);
    FiniteHorizonMdp sample(stats::RngStream& rng) const;
    /// α/Σα and the reward means.
    FiniteHorizonMdp mean() const;

    const std::vector<double>& counts(std::size_t s, std::size_t a) const { return alpha_.at(s).at(a); }
    double reward_mean(std::size_t s, std::size_t a) const { return mean_.at(s).at(a); }
    double reward_variance(std::size_t s, std::size_t a) const { return var_.at(s).at(a); }

private:
    std::size_t states_;
    std::size_t actions_;
    std::size_t horizon_;
    std::vector<double> initial_;
    std::vector<std::vector<std::vector<double>>> alpha_;
    std::vector<std::vector<double>> mean_;
    std::vector<std::vector<double>> var_;
    double noise_var_;
};

/// Posterior over a finite set of candidate MDPs with deterministic rewards.
/// Each candidate may carry preferred actions used to break value ties.
class HypothesisPosterior final : public MdpPosterior {
public:
    struct Hypothesis {
        FiniteHorizonMdp mdp;
        std::vector<std::size_t> preferred;
    };

    HypothesisPosterior(std::vector<Hypothesis> hypotheses, std::vector<double> prior);

    Policy sample_policy(stats::RngStream& rng) const override;
    /// Likelihood P(s_next|s,a)·1{|R(s,a) − r| ≤ 1e-9} under each candidate.
    void observe(std::size_t s, std::size_t a, double r, std::size_t s_next) override;

    const std::vector<double>& probabilities() const noexcept { return prob_; }

private:
    std::vector<Hypothesis> hypotheses_;
    std::vector<Policy> policies_;
    std::vector<double> prob_;
};

/// Acts within an episode.
class EpisodicAgent {
public:
    virtual ~EpisodicAgent() = default;
    virtual void begin_episode(stats::RngStream& rng) = 0;
    virtual std::size_t act(std::size_t s, std::size_t h, stats::RngStream& rng) = 0;
    virtual void observe(std::size_t s, std::size_t a, double r, std::size_t s_next) = 0;
};

/// One posterior sample per episode; its policy is followed throughout.
class PsrlAgent final : public EpisodicAgent {
public:
    explicit PsrlAgent(std::unique_ptr<MdpPosterior> posterior) : posterior_(std::move(posterior)) {}

    void begin_episode(stats::RngStream& rng) override;
    std::size_t act(std::size_t s, std::size_t h, stats::RngStream& rng) override;
    void observe(std::size_t s, std::size_t a, double r, std::size_t s_next) override;

private:
    std::unique_ptr<MdpPosterior> posterior_;
    std::unique_ptr<Policy> policy_;
};

/// A fresh posterior sample every timestep.
class PerTimestepTsAgent final : public EpisodicAgent {
public:
    explicit PerTimestepTsAgent(std::unique_ptr<MdpPosterior> posterior) : posterior_(std::move(posterior)) {}

    void begin_episode(stats::RngStream&) override {}
    std::size_t act(std::size_t s, std::size_t h, stats::RngStream& rng) override;
    void observe(std::size_t s, std::size_t a, double r, std::size_t s_next) override;

private:
    std::unique_ptr<MdpPosterior> posterior_;
};

struct Transition {
    double reward;
    std::size_t next;
};

/// True MDP with Gaussian reward noise (zero for exact rewards).
class MdpEnvironment {
public:
    explicit MdpEnvironment(FiniteHorizonMdp mdp, double reward_noise_var = 0.0);

    std::size_t reset(stats::RngStream& rng) const;
    Transition step(std::size_t s, std::size_t a, stats::RngStream& rng) const;
    double optimal_value() const noexcept { return optimal_; }
    const FiniteHorizonMdp& mdp() const noexcept { return mdp_; }

private:
    FiniteHorizonMdp mdp_;
    double noise_var_;
    double optimal_;
};

/// Chain of 2N+1 states (index i is position i − N), start at the center,
/// horizon N, actions 0 = left and 1 = right. Stepping onto the rewarding end
/// pays 1; the ends absorb.
FiniteHorizonMdp build_chain_env(std::size_t n, bool reward_right);

inline constexpr std::size_t kLeft = 0;
inline constexpr std::size_t kRight = 1;

/// The two chain candidates with prior ½ each, preferring moves toward their
/// own rewarding end.
std::unique_ptr<HypothesisPosterior> informed_chain_posterior(std::size_t n);

/// Uniform Dirichlet transitions and N(0,1) reward means, noise 1e-4.
std::unique_ptr<DirichletGaussianPosterior> uninformed_chain_posterior(std::size_t n);

inline constexpr double kExactRewardNoise = 1e-4;

struct EpisodicConfig {
    std::string label;
    std::size_t episodes = 1;
    std::size_t num_simulations = 1;
    std::uint64_t base_seed = 0;
    std::size_t threads = 1;
    std::function<std::unique_ptr<MdpEnvironment>(stats::RngStream& init)> make_environment;
    std::function<std::unique_ptr<EpisodicAgent>(stats::RngStream& init)> make_agent;
    std::string fingerprint;
};

/// Per-episode regret (optimal value minus realized return) averaged over
/// simulations; probe "episode_reward" carries the realized return.
engine::RegretCurve run_episodic(const EpisodicConfig& config);

}  // namespace tslab::mdp
