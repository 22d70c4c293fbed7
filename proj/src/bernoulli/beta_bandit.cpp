#include "tslab/bernoulli/beta_bandit.hpp"

#include "tslab/errors.hpp"
#include "tslab/stats/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace tslab::bernoulli {

namespace {

void check_arm(const BetaParams& p, std::size_t k) {
    if (k >= p.size()) {
        throw IndexError("arm " + std::to_string(k) + " out of range for " + std::to_string(p.size()) + " arms");
    }
}

void check_reward(int r) {
    if (r != 0 && r != 1) throw DomainError("reward must be 0 or 1, got " + std::to_string(r));
}

}  // namespace

BetaParams::BetaParams(std::vector<double> a, std::vector<double> b) : alpha(std::move(a)), beta(std::move(b)) {
    if (alpha.size() != beta.size()) throw ShapeError("BetaParams: alpha and beta lengths differ");
    for (std::size_t k = 0; k < alpha.size(); ++k) {
        if (!(alpha[k] > 0.0) || !(beta[k] > 0.0)) {
            throw DomainError("BetaParams: pseudo-counts must be positive (arm " + std::to_string(k) + ")");
        }
    }
}

BetaParams BetaParams::uniform(std::size_t k) { return constant(k, 1.0, 1.0); }

BetaParams BetaParams::constant(std::size_t k, double a, double b) {
    return BetaParams(std::vector<double>(k, a), std::vector<double>(k, b));
}

BetaParams update_beta(BetaParams params, std::size_t k, int reward) {
    update_beta_inplace(params, k, reward);
    return params;
}

void update_beta_inplace(BetaParams& params, std::size_t k, int reward) {
    check_arm(params, k);
    check_reward(reward);
    params.alpha[k] += reward;
    params.beta[k] += 1 - reward;
}

BetaParams nonstationary_update(BetaParams params, const BetaParams& anchor, double gamma, std::size_t k,
                                int reward) {
    nonstationary_update_inplace(params, anchor, gamma, k, reward);
    return params;
}

void nonstationary_update_inplace(BetaParams& params, const BetaParams& anchor, double gamma, std::size_t k,
                                  int reward) {
    if (!(gamma >= 0.0 && gamma <= 1.0)) throw DomainError("nonstationary_update: gamma must lie in [0,1]");
    if (anchor.size() != params.size()) throw ShapeError("nonstationary_update: anchor size mismatch");
    check_arm(params, k);
    check_reward(reward);
    if (gamma != 0.0) {
        for (std::size_t j = 0; j < params.size(); ++j) {
            params.alpha[j] = (1.0 - gamma) * params.alpha[j] + gamma * anchor.alpha[j];
            params.beta[j] = (1.0 - gamma) * params.beta[j] + gamma * anchor.beta[j];
        }
    }
    params.alpha[k] += reward;
    params.beta[k] += 1 - reward;
}

std::size_t greedy_select(const BetaParams& params, stats::RngStream& rng) {
    std::vector<double> means(params.size());
    for (std::size_t k = 0; k < params.size(); ++k) means[k] = params.mean(k);
    return engine::argmax_random_tie(means, rng);
}

std::size_t ts_select(const BetaParams& params, stats::RngStream& rng) {
    std::vector<double> draws(params.size());
    for (std::size_t k = 0; k < params.size(); ++k) draws[k] = stats::sample_beta(params.alpha[k], params.beta[k], rng);
    return engine::argmax_random_tie(draws, rng);
}

std::size_t epsilon_greedy_select(const BetaParams& params, double epsilon, stats::RngStream& rng) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw DomainError("epsilon must lie in [0,1]");
    if (epsilon > 0.0 && rng.uniform01() < epsilon) return rng.uniform_index(params.size());
    return greedy_select(params, rng);
}

EpsilonSchedule EpsilonSchedule::fixed(double epsilon) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw DomainError("epsilon must lie in [0,1]");
    return {epsilon, false};
}

EpsilonSchedule EpsilonSchedule::annealing(double m) {
    if (!(m >= 0.0) || !std::isfinite(m)) throw DomainError("annealing parameter m must be nonnegative");
    return {m, true};
}

double EpsilonSchedule::at(std::size_t t) const noexcept {
    if (!annealing_) return value_;
    return value_ / (value_ + static_cast<double>(t));
}

BernoulliEnv::BernoulliEnv(std::vector<double> theta, std::optional<Drift> drift)
    : theta_(std::move(theta)), drift_(std::move(drift)) {
    if (theta_.empty()) throw ShapeError("BernoulliEnv: need at least one arm");
    for (double p : theta_) {
        if (!(p >= 0.0 && p <= 1.0)) throw DomainError("BernoulliEnv: success probabilities must lie in [0,1]");
    }
    if (drift_) {
        if (!(drift_->gamma >= 0.0 && drift_->gamma <= 1.0)) throw DomainError("BernoulliEnv: gamma must lie in [0,1]");
        if (drift_->anchor.size() != theta_.size()) throw ShapeError("BernoulliEnv: anchor size mismatch");
    }
}

void BernoulliEnv::begin_period(std::size_t t, stats::RngStream& rng) {
    if (drift_ && t > 1) drift_environment_step(theta_, drift_->gamma, drift_->anchor, rng);
}

int BernoulliEnv::step(std::size_t, const std::size_t& a, stats::RngStream& rng) {
    if (a >= theta_.size()) throw IndexError("BernoulliEnv: arm out of range");
    return stats::sample_bernoulli(theta_[a], rng) ? 1 : 0;
}

double BernoulliEnv::per_period_regret(std::size_t, const std::size_t& a) const {
    if (a >= theta_.size()) throw IndexError("BernoulliEnv: arm out of range");
    return theta_[best_arm()] - theta_[a];
}

std::size_t BernoulliEnv::best_arm() const {
    return static_cast<std::size_t>(std::max_element(theta_.begin(), theta_.end()) - theta_.begin());
}

void drift_environment_step(std::vector<double>& theta, double gamma, const BetaParams& anchor,
                            stats::RngStream& rng) {
    if (!(gamma >= 0.0 && gamma <= 1.0)) throw DomainError("drift: gamma must lie in [0,1]");
    if (anchor.size() != theta.size()) throw ShapeError("drift: anchor size mismatch");
    if (gamma == 0.0) return;
    for (std::size_t k = 0; k < theta.size(); ++k) {
        if (gamma == 1.0 || rng.uniform01() < gamma) {
            theta[k] = stats::sample_beta(anchor.alpha[k], anchor.beta[k], rng);
        }
    }
}

std::vector<double> sample_theta(const BetaParams& prior, stats::RngStream& rng) {
    std::vector<double> theta(prior.size());
    for (std::size_t k = 0; k < prior.size(); ++k) theta[k] = stats::sample_beta(prior.alpha[k], prior.beta[k], rng);
    return theta;
}

BetaBernoulliAgent::BetaBernoulliAgent(BetaParams prior, BetaRule rule, EpsilonSchedule schedule,
                                       std::optional<Nonstationary> nonstationary)
    : params_(std::move(prior)), rule_(rule), schedule_(schedule), nonstationary_(std::move(nonstationary)) {
    if (params_.size() == 0) throw ShapeError("BetaBernoulliAgent: need at least one arm");
    if (nonstationary_ && nonstationary_->anchor.size() != params_.size()) {
        throw ShapeError("BetaBernoulliAgent: anchor size mismatch");
    }
}

std::size_t BetaBernoulliAgent::select_action(std::size_t t, const engine::FiniteActionSet&,
                                              stats::RngStream& rng) {
    switch (rule_) {
        case BetaRule::Greedy:
            return greedy_select(params_, rng);
        case BetaRule::Thompson:
            return ts_select(params_, rng);
        case BetaRule::EpsilonGreedy:
            return epsilon_greedy_select(params_, schedule_.at(t), rng);
    }
    return 0;
}

void BetaBernoulliAgent::observe(std::size_t, const std::size_t& a, const int& reward) {
    if (nonstationary_) {
        nonstationary_update_inplace(params_, nonstationary_->anchor, nonstationary_->gamma, a, reward);
    } else {
        update_beta_inplace(params_, a, reward);
    }
}

std::size_t UniformRandomAgent::select_action(std::size_t, const engine::FiniteActionSet& admissible,
                                              stats::RngStream& rng) {
    return rng.uniform_index(admissible.count);
}

}  // namespace tslab::bernoulli
