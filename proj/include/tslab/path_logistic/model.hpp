#pragma once

#include "tslab/engine/experiment.hpp"
#include "tslab/posterior_approx/log_density.hpp"
#include "tslab/posterior_approx/newton.hpp"
#include "tslab/shortest_path/graph.hpp"
#include "tslab/shortest_path/lognormal.hpp"

#include <cstddef>
#include <memory>
#include <utility>
#include <vector>

namespace tslab::path_logistic {

using shortest_path::BinomialBridge;
using shortest_path::BridgeActionSet;
using shortest_path::Path;
using shortest_path::PathResult;
using stats::Matrix;
using stats::Vector;

/// Gamma(shape 2, rate 2) per edge: mean 1, second moment 1.5.
inline constexpr double kPriorShape = 2.0;
inline constexpr double kPriorRate = 2.0;
/// E[ln θ] and Var[ln θ] under that prior: digamma(2) − ln 2 and trigamma(2).
inline constexpr double kPriorLogMean = -0.27036284982835;
inline constexpr double kPriorLogVariance = 0.64493406684823;

/// 1/(1 + exp(Σ_{e∈x} θ_e − M)).
double click_probability(const Path& x, const std::vector<double>& theta, std::size_t stages);

/// Bernoulli draw with the click probability.
int simulate_feedback(const Path& x, const std::vector<double>& theta, std::size_t stages, stats::RngStream& rng);

/// Feedback history grouped by distinct path. Record i is (path_of[i], y_i).
class FeedbackHistory {
public:
    void append(const Path& x, int y);

    std::size_t size() const noexcept { return path_of_.size(); }
    bool empty() const noexcept { return path_of_.empty(); }
    const std::vector<Path>& paths() const noexcept { return paths_; }
    std::size_t path_of(std::size_t i) const { return path_of_[i]; }
    int feedback(std::size_t i) const { return y_[i]; }

private:
    std::vector<Path> paths_;
    std::vector<std::size_t> path_of_;
    std::vector<int> y_;
};

/// Sufficient statistics of a (possibly resampled) history: per distinct
/// path, the number of y=1 and y=0 records.
struct PathCounts {
    std::vector<Path> paths;
    std::vector<double> ones;
    std::vector<double> zeros;

    static PathCounts from(const FeedbackHistory& h);
    static PathCounts resampled(const FeedbackHistory& h, const std::vector<std::size_t>& indices);
};

enum class Coordinates { Theta, Psi };

/// Logistic log-likelihood of the counts, either in θ or in ψ = ln θ.
class LogisticLikelihood final : public posterior_approx::DifferentiableLogDensity {
public:
    LogisticLikelihood(std::size_t edges, std::size_t stages, PathCounts counts, Coordinates coords);

    std::size_t dimension() const override { return edges_; }
    double value(const Vector& x) const override;
    Vector gradient(const Vector& x) const override;
    Matrix hessian(const Vector& x) const override;

private:
    std::size_t edges_;
    double stages_;
    PathCounts counts_;
    Coordinates coords_;

    Vector theta_of(const Vector& x) const;
};

/// Log posterior under the gamma prior. In θ coordinates any θ_e ≤ 0 raises
/// DomainError; in ψ coordinates the change-of-variables term Σψ_e is included.
class LogPosterior final : public posterior_approx::DifferentiableLogDensity {
public:
    LogPosterior(std::size_t edges, std::size_t stages, PathCounts counts, Coordinates coords);

    std::size_t dimension() const override { return likelihood_.dimension(); }
    double value(const Vector& x) const override;
    Vector gradient(const Vector& x) const override;
    Matrix hessian(const Vector& x) const override;

private:
    LogisticLikelihood likelihood_;
    Coordinates coords_;

    void check(const Vector& x) const;
};

using LogisticTraits = engine::ProblemTraits<Path, int, BridgeActionSet>;

/// Deterministic travel times θ with binary feedback; reward is the click.
class LogisticPathEnv : public engine::Environment<LogisticTraits> {
public:
    LogisticPathEnv(std::shared_ptr<const BinomialBridge> bridge, std::vector<double> theta);

    BridgeActionSet admissible_actions(std::size_t t) const override;
    int step(std::size_t t, const Path& a, stats::RngStream& rng) override;
    /// Click probability of the shortest path minus that of a.
    double per_period_regret(std::size_t t, const Path& a) const override;

    const std::vector<double>& theta() const noexcept { return theta_; }

private:
    std::shared_ptr<const BinomialBridge> bridge_;
    std::vector<double> theta_;
    double best_click_;
};

/// θ_e drawn independently from the gamma prior.
std::vector<double> sample_gamma_theta(std::size_t edges, stats::RngStream& rng);

/// Shortest path under arbitrary real weights. All paths have M edges, so a
/// uniform shift making every weight positive leaves the argmin unchanged.
PathResult shortest_under_sample(const BinomialBridge& bridge, std::vector<double> w,
                                 const std::vector<bool>* closed = nullptr);

enum class LogisticRule { Laplace, Bootstrap };

/// Approximate Thompson sampling followed by the shortest path under θ̂.
/// Laplace works in ψ = ln θ; the bootstrap maximizes the penalized resampled
/// likelihood over θ ∈ R^K with the prior precision 1/Var[θ_e].
class LogisticPathAgent : public engine::Agent<LogisticTraits> {
public:
    LogisticPathAgent(std::shared_ptr<const BinomialBridge> bridge, LogisticRule rule);

    Path select_action(std::size_t t, const BridgeActionSet& admissible, stats::RngStream& rng) override;
    void observe(std::size_t t, const Path& a, const int& y) override;

    const FeedbackHistory& history() const noexcept { return history_; }

private:
    std::shared_ptr<const BinomialBridge> bridge_;
    LogisticRule rule_;
    FeedbackHistory history_;
    Vector warm_;

    Vector laplace_draw(stats::RngStream& rng);
    Vector bootstrap_draw(stats::RngStream& rng);
};

}  // namespace tslab::path_logistic
