#include "oracles.hpp"
#include "support.hpp"

#include "tslab/assortment/assortment.hpp"
#include "tslab/errors.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>

using namespace tslab;
using namespace tslab::assortment;

namespace {

const std::vector<double> kPrices(6, 1.0 / 6.0);

AssortmentBelief six_product_prior() { return AssortmentBelief::independent(6, 1.0, 0.2, 0.04, kPrices); }

}  // namespace

// ---------------------------------------------------------------------------
// Profit and optimization
// ---------------------------------------------------------------------------

TEST_CASE("expected_profit: empty, singleton and interacting assortments") {
    const Matrix zero = Matrix::Zero(6, 6);
    CHECK(expected_profit(Assortment(6, 0), zero, 0.04, kPrices) == 0.0);
    Assortment one(6, 0);
    one[2] = 1;
    CHECK(expected_profit(one, zero, 0.04, kPrices) == doctest::Approx(0.17003).epsilon(1e-4));
    Matrix theta = Matrix::Zero(2, 2);
    theta(0, 1) = theta(1, 0) = -10.0;
    const std::vector<double> p{0.5, 0.25};
    const double pair = expected_profit({1, 1}, theta, 0.04, p);
    CHECK(pair == doctest::Approx((0.5 + 0.25) * std::exp(-10.0 + 0.02)));
    CHECK(pair < 0.01 * expected_profit({1, 0}, theta, 0.04, p));
}

TEST_CASE("optimal_assortment: dominance and separability") {
    Matrix theta = Matrix::Constant(6, 6, 0.0);
    theta.diagonal().setConstant(-8.0);
    theta(0, 0) = 1.0;
    theta.row(0).tail(5).setConstant(-8.0);
    CHECK(optimal_assortment(theta, 0.04, kPrices) == Assortment{1, 0, 0, 0, 0, 0});
    CHECK(optimal_assortment(Matrix::Zero(6, 6), 0.04, kPrices) == Assortment(6, 1));
}

TEST_CASE("optimal_assortment: matches explicit enumeration of 64 candidates") {
    stats::RngStream rng(1, 0);
    const auto prior = six_product_prior();
    for (int trial = 0; trial < 50; ++trial) {
        const Matrix theta = sample_environment_theta(prior, rng);
        double best = -1.0;
        Assortment arg;
        for (std::uint64_t c = 0; c < 64; ++c) {
            const auto x = assortment_from_code(c, 6);
            const double v = expected_profit(x, theta, 0.04, kPrices);
            if (v > best) {
                best = v;
                arg = x;
            }
        }
        CHECK(optimal_assortment(theta, 0.04, kPrices) == arg);
    }
}

TEST_CASE("optimal_assortment: ties go to the lexicographically smallest vector") {
    // Products 0 and 1 cannibalize completely, so either singleton is optimal.
    Matrix theta = Matrix::Zero(2, 2);
    theta(0, 1) = theta(1, 0) = -50.0;
    CHECK(optimal_assortment(theta, 0.0, {1.0, 1.0}) == Assortment{0, 1});
}

TEST_CASE("optimal_assortment: more than twenty products is a capacity error") {
    CHECK_THROWS_AS(optimal_assortment(Matrix::Zero(21, 21), 0.04, std::vector<double>(21, 1.0)), CapacityError);
}

TEST_CASE("assortment_from_code: product 0 is the most significant bit") {
    CHECK(assortment_from_code(0, 3) == Assortment{0, 0, 0});
    CHECK(assortment_from_code(1, 3) == Assortment{0, 0, 1});
    CHECK(assortment_from_code(4, 3) == Assortment{1, 0, 0});
    CHECK(assortment_from_code(7, 3) == Assortment{1, 1, 1});
}

// ---------------------------------------------------------------------------
// Vectorization and design matrix
// ---------------------------------------------------------------------------

TEST_CASE("vectorize: column stacking round trip") {
    Matrix theta(2, 2);
    theta << 1, 2, 3, 4;
    const Vector v = vectorize(theta);
    CHECK(v(0) == 1.0);
    CHECK(v(1) == 3.0);
    CHECK(v(2) == 2.0);
    CHECK(v(3) == 4.0);
    CHECK(unvectorize(v, 2) == theta);
}

TEST_CASE("design_matrix: W·vec(θ) is (θx) over the offered products") {
    stats::RngStream rng(2, 0);
    const Matrix theta = sample_environment_theta(six_product_prior(), rng);
    for (std::uint64_t c : {1u, 5u, 18u, 63u}) {
        const auto x = assortment_from_code(c, 6);
        const Matrix w = design_matrix(x);
        Vector xv(6);
        for (int i = 0; i < 6; ++i) xv(i) = x[static_cast<std::size_t>(i)];
        const Vector full = theta * xv;
        const Vector got = w * vectorize(theta);
        Eigen::Index row = 0;
        for (int i = 0; i < 6; ++i) {
            if (x[static_cast<std::size_t>(i)]) CHECK(got(row++) == doctest::Approx(full(i)));
        }
        CHECK(row == w.rows());
    }
    CHECK(design_matrix(Assortment(6, 0)).rows() == 0);
}

// ---------------------------------------------------------------------------
// Posterior updates
// ---------------------------------------------------------------------------

TEST_CASE("posterior_update: sequential equals batch conjugate solve") {
    stats::RngStream rng(3, 0);
    CHECK(testing::assortment_vs_batch(6, 40, rng) < 1e-8);
    CHECK(testing::assortment_vs_batch(3, 200, rng) < 1e-8);
}

TEST_CASE("posterior_update: one product is a scalar Gaussian update") {
    auto b = AssortmentBelief::independent(1, 2.0, 0.2, 0.5, {1.0});
    posterior_update(b, {1}, {std::exp(1.5)});
    const double var = 1.0 / (1.0 / 2.0 + 1.0 / 0.5);
    CHECK(b.sigma(0, 0) == doctest::Approx(var));
    CHECK(b.mu(0) == doctest::Approx(var * 1.5 / 0.5));
}

TEST_CASE("posterior_update: covariance shrinks in Loewner order") {
    stats::RngStream rng(4, 0);
    auto b = six_product_prior();
    const Matrix theta = sample_environment_theta(b, rng);
    for (int t = 0; t < 30; ++t) {
        const Matrix before = b.sigma;
        const auto x = assortment_from_code(1 + rng.uniform_index(63), 6);
        posterior_update(b, x, simulate_demand(x, theta, b.sigma2, rng));
        const Matrix diff = before - b.sigma;
        CHECK(Eigen::SelfAdjointEigenSolver<Matrix>(diff).eigenvalues().minCoeff() >= -1e-9);
        for (Eigen::Index i = 0; i < diff.rows(); ++i) CHECK(diff(i, i) >= -1e-12);
    }
}

TEST_CASE("posterior_update: empty assortment is uninformative; nonpositive demand is rejected") {
    auto b = six_product_prior();
    const auto before = b;
    posterior_update(b, Assortment(6, 0), {});
    CHECK(b.mu == before.mu);
    CHECK(b.sigma == before.sigma);
    Assortment x(6, 0);
    x[0] = 1;
    CHECK_THROWS_AS(posterior_update(b, x, {0.0}), DomainError);
    CHECK_THROWS_AS(posterior_update(b, x, {-1.0}), DomainError);
}

// ---------------------------------------------------------------------------
// Demand simulation and agents
// ---------------------------------------------------------------------------

TEST_CASE("simulate_demand: log demand moments") {
    stats::RngStream rng(5, 0);
    const Matrix theta = sample_environment_theta(six_product_prior(), rng);
    const Assortment x{1, 0, 1, 1, 0, 0};
    Vector xv(6);
    for (int i = 0; i < 6; ++i) xv(i) = x[static_cast<std::size_t>(i)];
    const Vector mean = theta * xv;
    std::vector<std::vector<double>> logs(3);
    for (int i = 0; i < 20000; ++i) {
        const auto d = simulate_demand(x, theta, 0.04, rng);
        REQUIRE(d.size() == 3);
        for (std::size_t k = 0; k < 3; ++k) logs[k].push_back(std::log(d[k]));
    }
    const int offered[3] = {0, 2, 3};
    for (std::size_t k = 0; k < 3; ++k) {
        const auto m = testing::moments(logs[k]);
        CHECK(std::abs(m.mean - mean(offered[k])) < 5.0 * m.stderr_of_mean());
        CHECK(std::abs(m.variance - 0.04) < 5.0 * testing::variance_stderr(m));
    }
}

TEST_CASE("ts_select_assortment: zero covariance is optimal at the mean") {
    stats::RngStream rng(6, 0);
    auto b = six_product_prior();
    b.mu = stats::sample_standard_normal(36, rng);
    b.sigma = 1e-300 * Matrix::Identity(36, 36);
    const auto want = optimal_assortment(unvectorize(b.mu, 6), b.sigma2, b.prices);
    for (int i = 0; i < 10; ++i) CHECK(ts_select_assortment(b, rng) == want);
}

TEST_CASE("AssortmentAgent: greedy acts on the posterior mean") {
    stats::RngStream rng(7, 0);
    auto prior = six_product_prior();
    prior.mu = stats::sample_standard_normal(36, rng);
    AssortmentAgent greedy(prior, AssortmentRule::Greedy);
    const auto want = optimal_assortment(unvectorize(prior.mu, 6), prior.sigma2, prior.prices);
    CHECK(greedy.select_action(1, {6}, rng) == want);
}

TEST_CASE("AssortmentEnv: regret is profit shortfall from the optimum") {
    stats::RngStream rng(8, 0);
    const Matrix theta = sample_environment_theta(six_product_prior(), rng);
    const AssortmentEnv env(theta, 0.04, kPrices);
    const auto best = optimal_assortment(theta, 0.04, kPrices);
    CHECK(env.per_period_regret(1, best) == doctest::Approx(0.0));
    CHECK(env.optimal_profit() == doctest::Approx(expected_profit(best, theta, 0.04, kPrices)));
    for (std::uint64_t c = 0; c < 64; ++c) CHECK(env.per_period_regret(1, assortment_from_code(c, 6)) >= -1e-15);
}
