#pragma once

#include "tslab/engine/experiment.hpp"
#include "tslab/shortest_path/graph.hpp"
#include "tslab/stats/linalg.hpp"

#include <cstddef>
#include <memory>
#include <vector>

namespace tslab::shortest_path {

using stats::Matrix;
using stats::Vector;

/// Per-edge travel times observed along the traversed path, in path order.
struct PathObservation {
    std::vector<double> y;
};

/// Source-sink paths of a bridge avoiding any closed edges.
struct BridgeActionSet {
    const BinomialBridge* bridge = nullptr;
    std::vector<bool> closed;

    bool contains(const Path& p) const;
    const std::vector<bool>* closed_or_null() const { return closed.empty() ? nullptr : &closed; }
};

using PathTraits = engine::ProblemTraits<Path, PathObservation, BridgeActionSet>;

struct IndependentEdgeBelief {
    std::vector<double> mu;
    std::vector<double> sigma2;
    double sigma2_tilde = 1.0;

    static IndependentEdgeBelief uniform(std::size_t edges, double mu, double sigma2, double sigma2_tilde);
    /// E[θ_e] = exp(μ_e + σ_e²/2).
    std::vector<double> expected_theta() const;
};

/// Precision-weighted update of (μ_e, σ_e²) with pseudo-observation ln y + σ̃²/2.
void independent_update(IndependentEdgeBelief& belief, std::size_t edge, double y);

/// Gaussian belief over φ = ln θ.
struct CorrelatedBelief {
    Vector mu;
    Matrix sigma;
};

/// Observation covariance over the path's edges: σ̃² on the diagonal,
/// 2σ̃²/3 within a half, σ̃²/3 across halves.
Matrix observation_covariance(const BinomialBridge& bridge, const Path& path, double sigma2_tilde);

/// Conjugate update of the correlated belief from the log travel times of the
/// traversed edges (observation pseudo-mean ln y). Computed in covariance
/// (Kalman gain) form.
void correlated_update(CorrelatedBelief& belief, const BinomialBridge& bridge, const Path& path,
                       const std::vector<double>& y, double sigma2_tilde);

/// Independent lognormal travel times: ln y_e ~ N(ln θ_e − σ̃²/2, σ̃²).
std::vector<double> sample_env_independent(const std::vector<double>& theta, double sigma2_tilde, const Path& path,
                                           stats::RngStream& rng);

/// y_e = ζ_e·η·ν_ℓ(e)·θ_e with every factor lognormal(−σ̃²/6, σ̃²/3).
std::vector<double> sample_env_correlated(const BinomialBridge& bridge, const std::vector<double>& theta,
                                          double sigma2_tilde, const Path& path, stats::RngStream& rng);

enum class ObservationModel { Independent, Correlated };

/// Travel-time environment on a binomial bridge with fixed mean times θ.
class BridgeEnv : public engine::Environment<PathTraits> {
public:
    BridgeEnv(std::shared_ptr<const BinomialBridge> bridge, std::vector<double> theta, double sigma2_tilde,
              ObservationModel model);

    BridgeActionSet admissible_actions(std::size_t t) const override;
    PathObservation step(std::size_t t, const Path& a, stats::RngStream& rng) override;
    double per_period_regret(std::size_t t, const Path& a) const override;

    const std::vector<double>& theta() const noexcept { return theta_; }
    double optimal_cost() const noexcept { return optimal_cost_; }
    const BinomialBridge& bridge() const noexcept { return *bridge_; }

    /// Time-varying constraint hook: edges closed in period t.
    void set_closures(std::vector<std::vector<bool>> per_period);

private:
    std::shared_ptr<const BinomialBridge> bridge_;
    std::vector<double> theta_;
    double sigma2_tilde_;
    ObservationModel model_;
    double optimal_cost_;
    std::vector<std::vector<bool>> closures_;
    std::vector<double> optimal_by_period_;
};

/// θ_e drawn independently from lognormal(μ, σ²).
std::vector<double> sample_edge_theta(std::size_t edges, double mu, double sigma2, stats::RngStream& rng);

enum class PathRule { Thompson, Greedy, EpsilonGreedy };

/// Agent with independent per-edge lognormal beliefs.
class IndependentPathAgent : public engine::Agent<PathTraits> {
public:
    IndependentPathAgent(std::shared_ptr<const BinomialBridge> bridge, IndependentEdgeBelief prior, PathRule rule,
                         double epsilon = 0.0);

    Path select_action(std::size_t t, const BridgeActionSet& admissible, stats::RngStream& rng) override;
    void observe(std::size_t t, const Path& a, const PathObservation& o) override;

    const IndependentEdgeBelief& belief() const noexcept { return belief_; }

private:
    std::shared_ptr<const BinomialBridge> bridge_;
    IndependentEdgeBelief belief_;
    PathRule rule_;
    double epsilon_;
};

/// Thompson sampling with the joint Gaussian belief over φ.
class CorrelatedPathAgent : public engine::Agent<PathTraits> {
public:
    CorrelatedPathAgent(std::shared_ptr<const BinomialBridge> bridge, CorrelatedBelief prior, double sigma2_tilde);

    Path select_action(std::size_t t, const BridgeActionSet& admissible, stats::RngStream& rng) override;
    void observe(std::size_t t, const Path& a, const PathObservation& o) override;

    const CorrelatedBelief& belief() const noexcept { return belief_; }

private:
    std::shared_ptr<const BinomialBridge> bridge_;
    CorrelatedBelief belief_;
    double sigma2_tilde_;
};

/// Running mean, over periods 1..t, of realized cumulative travel time divided
/// by t times the optimal expected travel time.
engine::ProbeSpec<PathTraits> travel_time_ratio_probe();

}  // namespace tslab::shortest_path
