#pragma once

#include "tslab/stats/rng.hpp"

#include <cstddef>
#include <vector>

namespace tslab::engine {

/// Posterior over a finite set of candidate models {0, ..., n-1}.
class FiniteBelief {
public:
    explicit FiniteBelief(std::vector<double> prior);

    std::size_t size() const noexcept { return p_.size(); }
    const std::vector<double>& probabilities() const noexcept { return p_; }
    double operator[](std::size_t u) const { return p_[u]; }

    /// p(u) ∝ p(u)·q_u(y), given likelihood[u] = q_u(y).
    void bayes_update(const std::vector<double>& likelihood);

    /// p(u) ∝ p̄(u)^γ · p(u)^(1−γ) · q_u(y), with p̄ the prior given at construction.
    void nonstationary_update(const std::vector<double>& likelihood, double gamma);

    /// Draw a model index from the current posterior.
    std::size_t sample(stats::RngStream& rng) const;

private:
    void normalize_into(std::vector<double>& w);

    std::vector<double> prior_;
    std::vector<double> p_;
};

}  // namespace tslab::engine
