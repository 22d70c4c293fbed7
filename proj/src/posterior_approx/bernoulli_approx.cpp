#include "tslab/posterior_approx/bernoulli_approx.hpp"

#include "tslab/engine/select.hpp"
#include "tslab/errors.hpp"
#include "tslab/posterior_approx/gibbs.hpp"
#include "tslab/posterior_approx/langevin.hpp"
#include "tslab/posterior_approx/newton.hpp"
#include "tslab/stats/distributions.hpp"

#include <boost/math/special_functions/trigamma.hpp>

#include <algorithm>
#include <cmath>
#include <random>

namespace tslab::posterior_approx {

namespace {

/// ln(1 + eˣ) without overflow.
double softplus(double x) { return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

double sigmoid(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

Vector scalar(double v) { return Vector::Constant(1, v); }
Matrix scalar_matrix(double v) { return Matrix::Constant(1, 1, v); }

double logit(double p) { return std::log(p) - std::log1p(-p); }

/// Joint beta posterior over θ ∈ (0,1)^K, unnormalized.
class ProductBetaDensity final : public LogDensity {
public:
    explicit ProductBetaDensity(const bernoulli::BetaParams& p) : p_(p) {}
    std::size_t dimension() const override { return p_.size(); }
    double value(const Vector& x) const override {
        double v = 0.0;
        for (std::size_t j = 0; j < p_.size(); ++j) {
            const double xj = x(static_cast<Eigen::Index>(j));
            v += (p_.alpha[j] - 1.0) * std::log(xj) + (p_.beta[j] - 1.0) * std::log1p(-xj);
        }
        return v;
    }

private:
    const bernoulli::BetaParams& p_;
};

}  // namespace

LogitBetaDensity::LogitBetaDensity(double alpha, double beta) : a_(alpha), b_(beta) {
    if (!(alpha > 0.0) || !(beta > 0.0)) throw DomainError("LogitBetaDensity: parameters must be positive");
}

double LogitBetaDensity::value(const Vector& x) const {
    const double psi = x(0);
    // ln σ(ψ) = −softplus(−ψ), ln(1 − σ(ψ)) = −softplus(ψ)
    return -a_ * softplus(-psi) - b_ * softplus(psi);
}

Vector LogitBetaDensity::gradient(const Vector& x) const {
    const double s = sigmoid(x(0));
    return scalar(a_ * (1.0 - s) - b_ * s);
}

Matrix LogitBetaDensity::hessian(const Vector& x) const {
    const double s = sigmoid(x(0));
    return scalar_matrix(-(a_ + b_) * s * (1.0 - s));
}

LogitBootstrapObjective::LogitBootstrapObjective(double successes, double plays, double anchor, double precision)
    : s_(successes), n_(plays), anchor_(anchor), precision_(precision) {}

double LogitBootstrapObjective::value(const Vector& x) const {
    const double psi = x(0);
    const double d = psi - anchor_;
    return s_ * psi - n_ * softplus(psi) - precision_ * d * d;
}

Vector LogitBootstrapObjective::gradient(const Vector& x) const {
    const double psi = x(0);
    return scalar(s_ - n_ * sigmoid(psi) - 2.0 * precision_ * (psi - anchor_));
}

Matrix LogitBootstrapObjective::hessian(const Vector& x) const {
    const double s = sigmoid(x(0));
    return scalar_matrix(-n_ * s * (1.0 - s) - 2.0 * precision_);
}

double logit_beta_precision(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw DomainError("logit_beta_precision: parameters must be positive");
    return 1.0 / (boost::math::trigamma(a) + boost::math::trigamma(b));
}

ApproxBernoulliAgent::ApproxBernoulliAgent(bernoulli::BetaParams prior, ApproxRule rule)
    : ApproxBernoulliAgent(std::move(prior), rule, Options{}) {}

ApproxBernoulliAgent::ApproxBernoulliAgent(bernoulli::BetaParams prior, ApproxRule rule, Options opts)
    : prior_(prior), params_(std::move(prior)), rule_(rule), opts_(opts) {
    const std::size_t k = params_.size();
    if (k == 0) throw ShapeError("ApproxBernoulliAgent: need at least one arm");
    warm_.resize(k);
    prior_precision_.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
        warm_[i] = std::log(params_.alpha[i] / params_.beta[i]);
        prior_precision_[i] = logit_beta_precision(prior_.alpha[i], prior_.beta[i]);
    }
    counts_.assign(2 * k, 0);
}

std::size_t ApproxBernoulliAgent::select_action(std::size_t, const engine::FiniteActionSet&, stats::RngStream& rng) {
    std::vector<double> draws;
    switch (rule_) {
        case ApproxRule::Laplace:
            draws = sample_laplace(rng);
            break;
        case ApproxRule::Bootstrap:
            draws = sample_bootstrap(rng);
            break;
        case ApproxRule::Langevin:
            draws = sample_langevin(rng);
            break;
        case ApproxRule::Gibbs:
            draws = sample_gibbs(rng);
            break;
    }
    return engine::argmax_random_tie(draws, rng);
}

void ApproxBernoulliAgent::observe(std::size_t, const std::size_t& a, const int& reward) {
    bernoulli::update_beta_inplace(params_, a, reward);
    ++counts_[2 * a + static_cast<std::size_t>(reward)];
    ++history_size_;
}

std::vector<double> ApproxBernoulliAgent::sample_laplace(stats::RngStream& rng) {
    std::vector<double> out(params_.size());
    for (std::size_t k = 0; k < params_.size(); ++k) {
        const LogitBetaDensity g(params_.alpha[k], params_.beta[k]);
        const LaplaceApproximation fit = laplace_fit(g, scalar(warm_[k]));
        warm_[k] = fit.mode(0);
        out[k] = fit.sample(rng)(0);
    }
    return out;
}

std::vector<double> ApproxBernoulliAgent::sample_bootstrap(stats::RngStream& rng) {
    // Per-(arm, reward) counts of a with-replacement resample are multinomial
    // with the empirical frequencies, drawn here as a chain of binomials.
    std::vector<double> resampled(counts_.size(), 0.0);
    std::size_t remaining_draws = history_size_;
    std::size_t remaining_mass = history_size_;
    for (std::size_t c = 0; c < counts_.size() && remaining_draws > 0; ++c) {
        if (counts_[c] == 0) continue;
        std::size_t n = remaining_draws;
        if (counts_[c] < remaining_mass) {
            const double p = static_cast<double>(counts_[c]) / static_cast<double>(remaining_mass);
            std::binomial_distribution<std::size_t> bin(remaining_draws, p);
            n = bin(rng);
        }
        resampled[c] = static_cast<double>(n);
        remaining_draws -= n;
        remaining_mass -= counts_[c];
    }
    std::vector<double> out(params_.size());
    for (std::size_t k = 0; k < params_.size(); ++k) {
        const double theta0 = stats::sample_beta(prior_.alpha[k], prior_.beta[k], rng);
        const double anchor = logit(std::clamp(theta0, 1e-300, 1.0 - 1e-16));
        const double s = resampled[2 * k + 1];
        const double n = s + resampled[2 * k];
        if (n == 0.0) {
            out[k] = anchor;
            continue;
        }
        const LogitBootstrapObjective obj(s, n, anchor, prior_precision_[k]);
        out[k] = newton_maximize(obj, scalar(anchor)).mode(0);
    }
    return out;
}

std::vector<double> ApproxBernoulliAgent::sample_langevin(stats::RngStream& rng) {
    std::vector<double> out(params_.size());
    for (std::size_t k = 0; k < params_.size(); ++k) {
        const LogitBetaDensity g(params_.alpha[k], params_.beta[k]);
        const LaplaceApproximation fit = laplace_fit(g, scalar(warm_[k]));
        warm_[k] = fit.mode(0);
        LangevinOptions lo;
        lo.preconditioner = scalar_matrix(1.0 / fit.precision(0, 0));
        out[k] = langevin_chain(g, fit.mode, opts_.langevin_step, opts_.langevin_steps, rng, lo)(0);
    }
    return out;
}

std::vector<double> ApproxBernoulliAgent::sample_gibbs(stats::RngStream& rng) {
    const std::size_t k = params_.size();
    const bernoulli::BetaParams& p = params_;
    const ProductBetaDensity f(p);
    Vector init(static_cast<Eigen::Index>(k));
    for (std::size_t i = 0; i < k; ++i) init(static_cast<Eigen::Index>(i)) = p.mean(i);
    const Box box(k, {0.0, 1.0});
    const Vector x = gibbs_sample(f, init, box, opts_.gibbs_sweeps, rng, opts_.gibbs_grid);
    return std::vector<double>(x.data(), x.data() + x.size());
}

}  // namespace tslab::posterior_approx
