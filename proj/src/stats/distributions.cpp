#include "tslab/stats/distributions.hpp"

#include "tslab/errors.hpp"

#include <cmath>
#include <random>
#include <string>

namespace tslab::stats {

namespace {

void require_positive(double x, const char* what) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw DomainError(std::string(what) + " must be positive and finite, got " + std::to_string(x));
    }
}

}  // namespace

double sample_normal(RngStream& rng) {
    std::normal_distribution<double> dist;
    return dist(rng);
}

double sample_normal(double mean, double variance, RngStream& rng) {
    if (!(variance >= 0.0)) throw DomainError("sample_normal: variance must be nonnegative");
    return mean + std::sqrt(variance) * sample_normal(rng);
}

Vector sample_standard_normal(std::size_t n, RngStream& rng) {
    std::normal_distribution<double> dist;
    Vector z(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = dist(rng);
    return z;
}

double sample_gamma(double shape, double rate, RngStream& rng) {
    require_positive(shape, "sample_gamma: shape");
    require_positive(rate, "sample_gamma: rate");
    std::gamma_distribution<double> dist(shape, 1.0 / rate);
    return dist(rng);
}

double sample_beta(double alpha, double beta, RngStream& rng) {
    require_positive(alpha, "sample_beta: alpha");
    require_positive(beta, "sample_beta: beta");
    const double x = sample_gamma(alpha, 1.0, rng);
    const double y = sample_gamma(beta, 1.0, rng);
    const double s = x + y;
    if (s == 0.0) return alpha >= beta ? 1.0 : 0.0;
    return x / s;
}

double sample_lognormal(double mu, double sigma2, RngStream& rng) {
    require_positive(sigma2, "sample_lognormal: sigma2");
    return std::exp(mu + std::sqrt(sigma2) * sample_normal(rng));
}

bool sample_bernoulli(double p, RngStream& rng) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("sample_bernoulli: p must lie in [0,1]");
    return rng.uniform01() < p;
}

std::uint64_t sample_poisson(double mean, RngStream& rng) {
    if (!(mean >= 0.0) || !std::isfinite(mean)) throw DomainError("sample_poisson: mean must be nonnegative");
    if (mean == 0.0) return 0;
    std::poisson_distribution<std::uint64_t> dist(mean);
    return dist(rng);
}

std::vector<double> sample_dirichlet(const std::vector<double>& alpha, RngStream& rng) {
    if (alpha.empty()) throw ShapeError("sample_dirichlet: empty pseudo-count vector");
    std::vector<double> out(alpha.size());
    double total = 0.0;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        out[i] = sample_gamma(alpha[i], 1.0, rng);
        total += out[i];
    }
    if (!(total > 0.0)) throw NumericalError("sample_dirichlet: all gamma draws underflowed");
    for (double& v : out) v /= total;
    return out;
}

Vector sample_mvn(const Vector& mean, const SpdMatrix& cov, RngStream& rng) {
    if (static_cast<Eigen::Index>(cov.size()) != mean.size()) {
        throw ShapeError("sample_mvn: mean has " + std::to_string(mean.size()) + " entries, covariance is " +
                         std::to_string(cov.size()) + "-dimensional");
    }
    return sample_mvn_factor(mean, cholesky(cov), rng);
}

Vector sample_mvn_factor(const Vector& mean, const Matrix& lower, RngStream& rng) {
    if (lower.rows() != mean.size() || lower.cols() != mean.size()) {
        throw ShapeError("sample_mvn_factor: dimension mismatch");
    }
    const Vector z = sample_standard_normal(static_cast<std::size_t>(mean.size()), rng);
    Vector x = mean;
    x.noalias() += lower.triangularView<Eigen::Lower>() * z;
    return x;
}

}  // namespace tslab::stats
