#pragma once

#include "tslab/bernoulli/beta_bandit.hpp"
#include "tslab/engine/experiment.hpp"
#include "tslab/stats/linalg.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace tslab::assortment {

using stats::Matrix;
using stats::Vector;

/// Offered products as a 0/1 vector of length n.
using Assortment = std::vector<int>;

inline constexpr std::size_t kMaxEnumerableProducts = 20;

/// Σ_i p_i x_i exp((θx)_i + σ²/2).
double expected_profit(const Assortment& x, const Matrix& theta, double sigma2, const std::vector<double>& prices);

/// Exhaustive argmax over all 2ⁿ assortments; ties go to the lexicographically
/// smallest x. Throws CapacityError for n > 20.
Assortment optimal_assortment(const Matrix& theta, double sigma2, const std::vector<double>& prices);

/// Assortment whose bits are those of `code`, product 0 being the most
/// significant bit so that increasing codes are increasing lexicographically.
Assortment assortment_from_code(std::uint64_t code, std::size_t n);

/// Column-stacked vectorization: vec[m·n + i] = θ(i, m).
Vector vectorize(const Matrix& theta);
Matrix unvectorize(const Vector& v, std::size_t n);

/// W = xᵀ⊗S with S selecting the offered products (k × n²).
Matrix design_matrix(const Assortment& x);

/// Gaussian belief over vec(θ) with known demand noise and prices.
struct AssortmentBelief {
    std::size_t n = 0;
    Vector mu;
    Matrix sigma;
    /// Σ⁻¹, maintained alongside Σ.
    Matrix precision;
    double sigma2 = 0.0;
    std::vector<double> prices;

    /// Independent entries: mean 0, variance `diag_var` on the diagonal and
    /// `off_var` elsewhere.
    static AssortmentBelief independent(std::size_t n, double diag_var, double off_var, double sigma2,
                                        std::vector<double> prices);
};

/// μ ← (Σ⁻¹+WᵀW/σ²)⁻¹(Σ⁻¹μ + Wᵀz/σ²), Σ ← (Σ⁻¹+WᵀW/σ²)⁻¹ with z = ln d over
/// the offered products (in product order).
void posterior_update(AssortmentBelief& belief, const Assortment& x, const std::vector<double>& demands);

/// Demands of the offered products, in product order: ln d_i ~ N((θx)_i, σ²).
std::vector<double> simulate_demand(const Assortment& x, const Matrix& theta, double sigma2, stats::RngStream& rng);

/// θ̂ ~ N(μ, Σ) reshaped to n×n.
Matrix sample_theta(const AssortmentBelief& belief, stats::RngStream& rng);

/// optimal_assortment at a posterior sample.
Assortment ts_select_assortment(const AssortmentBelief& belief, stats::RngStream& rng);

/// Assortments indexed by their code; every 0/1 vector of length n is admissible.
struct AssortmentSet {
    std::size_t n = 0;
    bool contains(const Assortment& x) const;
};

using AssortmentTraits = engine::ProblemTraits<Assortment, std::vector<double>, AssortmentSet>;

class AssortmentEnv : public engine::Environment<AssortmentTraits> {
public:
    AssortmentEnv(Matrix theta, double sigma2, std::vector<double> prices);

    AssortmentSet admissible_actions(std::size_t) const override { return {n_}; }
    std::vector<double> step(std::size_t t, const Assortment& a, stats::RngStream& rng) override;
    double per_period_regret(std::size_t t, const Assortment& a) const override;

    const Matrix& theta() const noexcept { return theta_; }
    double optimal_profit() const noexcept { return best_; }

private:
    std::size_t n_;
    Matrix theta_;
    double sigma2_;
    std::vector<double> prices_;
    double best_;
};

/// θ drawn from the belief's prior.
Matrix sample_environment_theta(const AssortmentBelief& prior, stats::RngStream& rng);

enum class AssortmentRule { Thompson, Greedy, EpsilonGreedy };

/// TS, greedy (optimal at μ) or ε-greedy (uniform assortment with probability ε_t).
class AssortmentAgent : public engine::Agent<AssortmentTraits> {
public:
    AssortmentAgent(AssortmentBelief prior, AssortmentRule rule,
                    bernoulli::EpsilonSchedule schedule = bernoulli::EpsilonSchedule::fixed(0.0));

    Assortment select_action(std::size_t t, const AssortmentSet& admissible, stats::RngStream& rng) override;
    void observe(std::size_t t, const Assortment& a, const std::vector<double>& demands) override;

    const AssortmentBelief& belief() const noexcept { return belief_; }

private:
    AssortmentBelief belief_;
    AssortmentRule rule_;
    bernoulli::EpsilonSchedule schedule_;
};

}  // namespace tslab::assortment
