#pragma once

#include "tslab/stats/linalg.hpp"
#include "tslab/stats/rng.hpp"

#include <cstdint>
#include <vector>

namespace tslab::stats {

double sample_normal(RngStream& rng);
double sample_normal(double mean, double variance, RngStream& rng);
/// Vector of n independent standard normals.
Vector sample_standard_normal(std::size_t n, RngStream& rng);

/// Gamma with the given shape and rate (mean shape/rate).
double sample_gamma(double shape, double rate, RngStream& rng);
double sample_beta(double alpha, double beta, RngStream& rng);
/// exp(N(mu, sigma2)).
double sample_lognormal(double mu, double sigma2, RngStream& rng);
bool sample_bernoulli(double p, RngStream& rng);
std::uint64_t sample_poisson(double mean, RngStream& rng);
std::vector<double> sample_dirichlet(const std::vector<double>& alpha, RngStream& rng);

Vector sample_mvn(const Vector& mean, const SpdMatrix& cov, RngStream& rng);
/// Draw N(mean, L·Lᵀ) from a precomputed lower Cholesky factor.
Vector sample_mvn_factor(const Vector& mean, const Matrix& lower, RngStream& rng);

}  // namespace tslab::stats
