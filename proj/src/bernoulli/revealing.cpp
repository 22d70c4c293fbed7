#include "tslab/bernoulli/revealing.hpp"

#include "tslab/errors.hpp"

#include <vector>

namespace tslab::bernoulli {

double revealing_reward(std::size_t action, std::size_t theta) {
    if (action == 0) return 1.0 / (2.0 * static_cast<double>(theta));
    return action == theta ? 1.0 : 0.0;
}

RevealingActionEnv::RevealingActionEnv(std::size_t k, std::size_t theta) : k_(k), theta_(theta) {
    if (k < 1) throw DomainError("revealing action environment needs k >= 1");
    if (theta < 1 || theta > k) throw DomainError("revealing action environment: theta must lie in 1..k");
}

double RevealingActionEnv::step(std::size_t, const std::size_t& a, stats::RngStream&) {
    if (a > k_) throw IndexError("revealing action environment: action out of range");
    return revealing_reward(a, theta_);
}

double RevealingActionEnv::per_period_regret(std::size_t, const std::size_t& a) const {
    if (a > k_) throw IndexError("revealing action environment: action out of range");
    return 1.0 - revealing_reward(a, theta_);
}

RevealingActionEnv revealing_action_env(std::size_t k, stats::RngStream& rng) {
    if (k < 1) throw DomainError("revealing action environment needs k >= 1");
    return RevealingActionEnv(k, 1 + rng.uniform_index(k));
}

RevealingTsAgent::RevealingTsAgent(std::size_t k) : k_(k), belief_(std::vector<double>(k, 1.0)) {
    if (k < 1) throw DomainError("RevealingTsAgent needs k >= 1");
}

std::size_t RevealingTsAgent::select_action(std::size_t, const engine::FiniteActionSet&, stats::RngStream& rng) {
    const std::size_t theta_hat = 1 + belief_.sample(rng);
    // Under hypothesis θ̂ action θ̂ earns 1 while action 0 earns 1/(2θ̂) < 1.
    std::vector<double> rewards(k_ + 1);
    for (std::size_t a = 0; a <= k_; ++a) rewards[a] = revealing_reward(a, theta_hat);
    return engine::argmax_random_tie(rewards, rng);
}

void RevealingTsAgent::observe(std::size_t, const std::size_t& a, const double& reward) {
    std::vector<double> likelihood(k_);
    for (std::size_t u = 0; u < k_; ++u) likelihood[u] = revealing_reward(a, u + 1) == reward ? 1.0 : 0.0;
    belief_.bayes_update(likelihood);
}

}  // namespace tslab::bernoulli
