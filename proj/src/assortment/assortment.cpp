#include "tslab/assortment/assortment.hpp"

#include "tslab/errors.hpp"
#include "tslab/stats/distributions.hpp"

#include <cmath>
#include <string>

namespace tslab::assortment {

namespace {

void check_assortment(const Assortment& x, std::size_t n) {
    if (x.size() != n) throw ShapeError("assortment has " + std::to_string(x.size()) + " entries, expected " +
                                        std::to_string(n));
    for (int v : x) {
        if (v != 0 && v != 1) throw DomainError("assortment entries must be 0 or 1");
    }
}

}  // namespace

double expected_profit(const Assortment& x, const Matrix& theta, double sigma2, const std::vector<double>& prices) {
    const std::size_t n = prices.size();
    if (theta.rows() != static_cast<Eigen::Index>(n) || theta.cols() != static_cast<Eigen::Index>(n)) {
        throw ShapeError("expected_profit: θ must be n×n");
    }
    check_assortment(x, n);
    double profit = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!x[i]) continue;
        double eta = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (x[j]) eta += theta(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
        profit += prices[i] * std::exp(eta + 0.5 * sigma2);
    }
    return profit;
}

Assortment assortment_from_code(std::uint64_t code, std::size_t n) {
    Assortment x(n, 0);
    for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<int>((code >> (n - 1 - i)) & 1U);
    return x;
}

Assortment optimal_assortment(const Matrix& theta, double sigma2, const std::vector<double>& prices) {
    const std::size_t n = prices.size();
    if (n > kMaxEnumerableProducts) {
        throw CapacityError("optimal_assortment: " + std::to_string(n) + " products exceed the enumeration limit of " +
                            std::to_string(kMaxEnumerableProducts));
    }
    Assortment best = assortment_from_code(0, n);
    double best_profit = expected_profit(best, theta, sigma2, prices);
    for (std::uint64_t code = 1; code < (std::uint64_t{1} << n); ++code) {
        Assortment x = assortment_from_code(code, n);
        const double p = expected_profit(x, theta, sigma2, prices);
        if (p > best_profit) {
            best_profit = p;
            best = std::move(x);
        }
    }
    return best;
}

Vector vectorize(const Matrix& theta) {
    const Eigen::Index n = theta.rows();
    Vector v(n * theta.cols());
    for (Eigen::Index m = 0; m < theta.cols(); ++m) v.segment(m * n, n) = theta.col(m);
    return v;
}

Matrix unvectorize(const Vector& v, std::size_t n) {
    const auto k = static_cast<Eigen::Index>(n);
    if (v.size() != k * k) throw ShapeError("unvectorize: length is not n²");
    Matrix theta(k, k);
    for (Eigen::Index m = 0; m < k; ++m) theta.col(m) = v.segment(m * k, k);
    return theta;
}

Matrix design_matrix(const Assortment& x) {
    const auto n = static_cast<Eigen::Index>(x.size());
    std::vector<Eigen::Index> offered;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (x[static_cast<std::size_t>(i)]) offered.push_back(i);
    }
    Matrix s = Matrix::Zero(static_cast<Eigen::Index>(offered.size()), n);
    for (std::size_t j = 0; j < offered.size(); ++j) s(static_cast<Eigen::Index>(j), offered[j]) = 1.0;
    Matrix w(s.rows(), n * n);
    for (Eigen::Index m = 0; m < n; ++m) w.middleCols(m * n, n) = x[static_cast<std::size_t>(m)] * s;
    return w;
}

AssortmentBelief AssortmentBelief::independent(std::size_t n, double diag_var, double off_var, double sigma2,
                                               std::vector<double> prices) {
    if (!(diag_var > 0.0) || !(off_var > 0.0) || !(sigma2 > 0.0)) {
        throw DomainError("AssortmentBelief: variances must be positive");
    }
    if (prices.size() != n) throw ShapeError("AssortmentBelief: one price per product required");
    const auto k = static_cast<Eigen::Index>(n);
    Vector var(k * k);
    for (Eigen::Index m = 0; m < k; ++m) {
        for (Eigen::Index i = 0; i < k; ++i) var(m * k + i) = i == m ? diag_var : off_var;
    }
    AssortmentBelief b;
    b.n = n;
    b.mu = Vector::Zero(k * k);
    b.sigma = Matrix(var.asDiagonal());
    b.precision = Matrix(var.cwiseInverse().asDiagonal());
    b.sigma2 = sigma2;
    b.prices = std::move(prices);
    return b;
}

void posterior_update(AssortmentBelief& belief, const Assortment& x, const std::vector<double>& demands) {
    check_assortment(x, belief.n);
    const Matrix w = design_matrix(x);
    if (static_cast<std::size_t>(w.rows()) != demands.size()) {
        throw ShapeError("posterior_update: one demand per offered product required");
    }
    if (w.rows() == 0) return;
    Vector z(w.rows());
    for (Eigen::Index j = 0; j < z.size(); ++j) {
        const double d = demands[static_cast<std::size_t>(j)];
        if (!(d > 0.0)) throw DomainError("posterior_update: demands must be positive");
        z(j) = std::log(d);
    }
    const Vector info = belief.precision * belief.mu + w.transpose() * z / belief.sigma2;
    Matrix precision = belief.precision + w.transpose() * w / belief.sigma2;
    stats::symmetrize(precision);
    const Matrix l = stats::cholesky_lower(precision);
    belief.sigma = stats::cholesky_inverse(l);
    belief.mu = stats::cholesky_solve(l, info);
    belief.precision = std::move(precision);
}

std::vector<double> simulate_demand(const Assortment& x, const Matrix& theta, double sigma2, stats::RngStream& rng) {
    const std::size_t n = x.size();
    check_assortment(x, static_cast<std::size_t>(theta.rows()));
    std::vector<double> d;
    for (std::size_t i = 0; i < n; ++i) {
        if (!x[i]) continue;
        double eta = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (x[j]) eta += theta(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
        d.push_back(stats::sample_lognormal(eta, sigma2, rng));
    }
    return d;
}

Matrix sample_theta(const AssortmentBelief& belief, stats::RngStream& rng) {
    const Vector v = stats::sample_mvn_factor(belief.mu, stats::cholesky_lower(belief.sigma), rng);
    return unvectorize(v, belief.n);
}

Assortment ts_select_assortment(const AssortmentBelief& belief, stats::RngStream& rng) {
    return optimal_assortment(sample_theta(belief, rng), belief.sigma2, belief.prices);
}

bool AssortmentSet::contains(const Assortment& x) const {
    if (x.size() != n) return false;
    for (int v : x) {
        if (v != 0 && v != 1) return false;
    }
    return true;
}

AssortmentEnv::AssortmentEnv(Matrix theta, double sigma2, std::vector<double> prices)
    : n_(prices.size()), theta_(std::move(theta)), sigma2_(sigma2), prices_(std::move(prices)) {
    if (theta_.rows() != static_cast<Eigen::Index>(n_) || theta_.cols() != static_cast<Eigen::Index>(n_)) {
        throw ShapeError("AssortmentEnv: θ must be n×n");
    }
    if (!(sigma2 > 0.0)) throw DomainError("AssortmentEnv: σ² must be positive");
    best_ = expected_profit(optimal_assortment(theta_, sigma2_, prices_), theta_, sigma2_, prices_);
}

std::vector<double> AssortmentEnv::step(std::size_t, const Assortment& a, stats::RngStream& rng) {
    return simulate_demand(a, theta_, sigma2_, rng);
}

double AssortmentEnv::per_period_regret(std::size_t, const Assortment& a) const {
    return best_ - expected_profit(a, theta_, sigma2_, prices_);
}

Matrix sample_environment_theta(const AssortmentBelief& prior, stats::RngStream& rng) {
    return sample_theta(prior, rng);
}

AssortmentAgent::AssortmentAgent(AssortmentBelief prior, AssortmentRule rule, bernoulli::EpsilonSchedule schedule)
    : belief_(std::move(prior)), rule_(rule), schedule_(schedule) {}

Assortment AssortmentAgent::select_action(std::size_t t, const AssortmentSet& admissible, stats::RngStream& rng) {
    if (admissible.n != belief_.n) throw ShapeError("AssortmentAgent: action set size mismatch");
    switch (rule_) {
        case AssortmentRule::Thompson:
            return ts_select_assortment(belief_, rng);
        case AssortmentRule::EpsilonGreedy:
            if (rng.uniform01() < schedule_.at(t)) {
                return assortment_from_code(rng.uniform_index(std::size_t{1} << belief_.n), belief_.n);
            }
            [[fallthrough]];
        case AssortmentRule::Greedy:
            break;
    }
    return optimal_assortment(unvectorize(belief_.mu, belief_.n), belief_.sigma2, belief_.prices);
}

void AssortmentAgent::observe(std::size_t, const Assortment& a, const std::vector<double>& demands) {
    posterior_update(belief_, a, demands);
}

}  // namespace tslab::assortment
