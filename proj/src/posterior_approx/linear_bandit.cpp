#include "tslab/posterior_approx/linear_bandit.hpp"

#include "tslab/errors.hpp"
#include "tslab/stats/distributions.hpp"

#include <algorithm>
#include <cmath>

namespace tslab::posterior_approx {

namespace {

std::size_t best_action(const std::vector<Vector>& actions, const Vector& theta, stats::RngStream& rng) {
    std::vector<double> v(actions.size());
    for (std::size_t a = 0; a < actions.size(); ++a) v[a] = actions[a].dot(theta);
    return engine::argmax_random_tie(v, rng);
}

void check_actions(const std::vector<Vector>& actions, Eigen::Index dim) {
    if (actions.empty()) throw ShapeError("linear bandit: empty action list");
    for (const auto& x : actions) {
        if (x.size() != dim) throw ShapeError("linear bandit: action dimension mismatch");
    }
}

}  // namespace

LinearBanditEnv::LinearBanditEnv(std::vector<Vector> actions, Vector theta, double noise_variance)
    : actions_(std::move(actions)), theta_(std::move(theta)) {
    check_actions(actions_, theta_.size());
    if (!(noise_variance >= 0.0)) throw DomainError("LinearBanditEnv: noise variance must be nonnegative");
    noise_sd_ = std::sqrt(noise_variance);
    best_ = actions_[0].dot(theta_);
    for (const auto& x : actions_) best_ = std::max(best_, x.dot(theta_));
}

double LinearBanditEnv::step(std::size_t, const std::size_t& a, stats::RngStream& rng) {
    if (a >= actions_.size()) throw IndexError("LinearBanditEnv: action out of range");
    return actions_[a].dot(theta_) + noise_sd_ * stats::sample_normal(rng);
}

double LinearBanditEnv::per_period_regret(std::size_t, const std::size_t& a) const {
    if (a >= actions_.size()) throw IndexError("LinearBanditEnv: action out of range");
    return best_ - actions_[a].dot(theta_);
}

KalmanTsAgent::KalmanTsAgent(std::vector<Vector> actions, const Vector& prior_mean,
                             const stats::SpdMatrix& prior_cov, double noise_variance)
    : actions_(std::move(actions)), belief_{prior_mean, prior_cov.matrix()}, noise_var_(noise_variance) {
    check_actions(actions_, prior_mean.size());
}

std::size_t KalmanTsAgent::select_action(std::size_t, const engine::FiniteActionSet&, stats::RngStream& rng) {
    const Vector theta_hat = stats::sample_mvn_factor(belief_.mean, stats::cholesky_lower(belief_.cov), rng);
    return best_action(actions_, theta_hat, rng);
}

void KalmanTsAgent::observe(std::size_t, const std::size_t& a, const double& y) {
    belief_.observe_linear(actions_[a], y, noise_var_);
}

EnsembleTsAgent::EnsembleTsAgent(std::vector<Vector> actions, const Vector& prior_mean,
                                 const stats::SpdMatrix& prior_cov, double noise_variance, std::size_t num_models,
                                 stats::RngStream init)
    : actions_(std::move(actions)),
      rng_(init.split(1)),
      ensemble_(prior_mean, prior_cov, noise_variance, num_models, init) {
    check_actions(actions_, prior_mean.size());
}

std::size_t EnsembleTsAgent::select_action(std::size_t, const engine::FiniteActionSet&, stats::RngStream& rng) {
    return best_action(actions_, ensemble_.sample_model(rng), rng);
}

void EnsembleTsAgent::observe(std::size_t, const std::size_t& a, const double& y) {
    ensemble_.update(actions_[a], y, rng_);
}

}  // namespace tslab::posterior_approx
