#include "tslab/engine/finite_belief.hpp"

#include "tslab/errors.hpp"

#include <cmath>

namespace tslab::engine {

FiniteBelief::FiniteBelief(std::vector<double> prior) : prior_(std::move(prior)) {
    if (prior_.empty()) throw ShapeError("FiniteBelief: empty prior");
    for (double w : prior_) {
        if (!(w >= 0.0) || !std::isfinite(w)) throw DomainError("FiniteBelief: prior weights must be nonnegative");
    }
    normalize_into(prior_);
    p_ = prior_;
}

void FiniteBelief::normalize_into(std::vector<double>& w) {
    double total = 0.0;
    for (double v : w) total += v;
    if (!(total > 0.0)) throw NumericalError("FiniteBelief: posterior has zero total mass");
    for (double& v : w) v /= total;
}

void FiniteBelief::bayes_update(const std::vector<double>& likelihood) {
    if (likelihood.size() != p_.size()) throw ShapeError("FiniteBelief::bayes_update: likelihood size mismatch");
    std::vector<double> w(p_.size());
    for (std::size_t u = 0; u < p_.size(); ++u) {
        if (!(likelihood[u] >= 0.0)) throw DomainError("FiniteBelief: likelihood must be nonnegative");
        w[u] = p_[u] * likelihood[u];
    }
    normalize_into(w);
    p_ = std::move(w);
}

void FiniteBelief::nonstationary_update(const std::vector<double>& likelihood, double gamma) {
    if (!(gamma >= 0.0 && gamma <= 1.0)) throw DomainError("FiniteBelief: gamma must lie in [0,1]");
    if (gamma == 0.0) {
        bayes_update(likelihood);
        return;
    }
    if (likelihood.size() != p_.size()) throw ShapeError("FiniteBelief::nonstationary_update: size mismatch");
    std::vector<double> w(p_.size());
    for (std::size_t u = 0; u < p_.size(); ++u) {
        if (!(likelihood[u] >= 0.0)) throw DomainError("FiniteBelief: likelihood must be nonnegative");
        w[u] = std::pow(prior_[u], gamma) * std::pow(p_[u], 1.0 - gamma) * likelihood[u];
    }
    normalize_into(w);
    p_ = std::move(w);
}

std::size_t FiniteBelief::sample(stats::RngStream& rng) const {
    const double u = rng.uniform01();
    double c = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < p_.size(); ++i) {
        if (p_[i] > 0.0) last_positive = i;
        c += p_[i];
        if (u < c) return i;
    }
    return last_positive;
}

}  // namespace tslab::engine
