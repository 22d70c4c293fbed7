#include "support.hpp"

#include "tslab/errors.hpp"
#include "tslab/posterior_approx/bernoulli_approx.hpp"
#include "tslab/posterior_approx/bootstrap.hpp"
#include "tslab/posterior_approx/gibbs.hpp"
#include "tslab/posterior_approx/langevin.hpp"
#include "tslab/posterior_approx/linear_bandit.hpp"
#include "tslab/posterior_approx/log_density.hpp"
#include "tslab/posterior_approx/newton.hpp"
#include "tslab/posterior_approx/online.hpp"
#include "tslab/stats/distributions.hpp"

#include <boost/math/distributions/beta.hpp>
#include <boost/math/special_functions/trigamma.hpp>
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <memory>

using namespace tslab;
using namespace tslab::posterior_approx;

namespace {

Matrix random_spd(Eigen::Index d, stats::RngStream& rng, double ridge = 0.5) {
    Matrix a(d, d);
    for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = stats::sample_normal(rng);
    return a * a.transpose() / static_cast<double>(d) + ridge * Matrix::Identity(d, d);
}

Vector scalar(double x) { return Vector::Constant(1, x); }

/// −(y − aᵀθ)²/(2σ²): a single linear-Gaussian observation.
FunctionLogDensity linear_observation(Vector a, double y, double noise) {
    const auto d = static_cast<std::size_t>(a.size());
    return FunctionLogDensity(
        d, [=](const Vector& t) { return -0.5 * std::pow(y - a.dot(t), 2) / noise; },
        [=](const Vector& t) -> Vector { return a * ((y - a.dot(t)) / noise); },
        [=](const Vector&) -> Matrix { return -(a * a.transpose()) / noise; });
}

void check_moments(const std::vector<Vector>& xs, const Vector& mean, const Matrix& cov, double tol_se = 5.0) {
    const auto d = mean.size();
    const double n = static_cast<double>(xs.size());
    Vector m = Vector::Zero(d);
    for (const auto& x : xs) m += x;
    m /= n;
    Matrix c = Matrix::Zero(d, d);
    for (const auto& x : xs) c += (x - m) * (x - m).transpose();
    c /= n - 1.0;
    for (Eigen::Index i = 0; i < d; ++i) {
        CHECK(std::abs(m(i) - mean(i)) < tol_se * std::sqrt(cov(i, i) / n));
        for (Eigen::Index j = 0; j < d; ++j) {
            const double se = std::sqrt((cov(i, i) * cov(j, j) + cov(i, j) * cov(i, j)) / n);
            CHECK(std::abs(c(i, j) - cov(i, j)) < tol_se * se);
        }
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// Log densities
// ---------------------------------------------------------------------------

TEST_CASE("log densities: analytic derivatives match finite differences") {
    stats::RngStream rng(1, 0);
    for (int i = 0; i < 20; ++i) {
        const double a = 0.5 + 10 * rng.uniform01();
        const double b = 0.5 + 10 * rng.uniform01();
        const Vector x = scalar(-4.0 + 8.0 * rng.uniform01());
        const LogitBetaDensity beta(a, b);
        CHECK(gradient_error(beta, x) < 1e-4);
        CHECK(hessian_error(beta, x) < 1e-3);
        const LogitBootstrapObjective boot(3.0 * rng.uniform01(), 5.0, rng.uniform01(), 0.3);
        CHECK(gradient_error(boot, x) < 1e-4);
        CHECK(hessian_error(boot, x) < 1e-3);
    }
    const Matrix p = random_spd(4, rng);
    const GaussianLogDensity g(stats::sample_standard_normal(4, rng), p);
    for (int i = 0; i < 20; ++i) {
        const Vector x = stats::sample_standard_normal(4, rng);
        CHECK(gradient_error(g, x) < 1e-4);
        CHECK(hessian_error(g, x) < 1e-3);
    }
}

TEST_CASE("logit_beta_precision: inverse variance of logit(θ)") {
    for (auto [a, b] : std::vector<std::pair<double, double>>{{1, 1}, {3, 7}, {20, 5}}) {
        CHECK(logit_beta_precision(a, b) ==
              doctest::Approx(1.0 / (boost::math::trigamma(a) + boost::math::trigamma(b))));
        stats::RngStream rng(2, 0);
        std::vector<double> xs;
        for (int i = 0; i < 100000; ++i) {
            const double t = stats::sample_beta(a, b, rng);
            xs.push_back(std::log(t / (1.0 - t)));
        }
        const auto m = testing::moments(xs);
        CHECK(std::abs(m.variance - 1.0 / logit_beta_precision(a, b)) < 5.0 * testing::variance_stderr(m));
    }
}

// ---------------------------------------------------------------------------
// newton_maximize
// ---------------------------------------------------------------------------

TEST_CASE("newton_maximize: one step on a quadratic") {
    stats::RngStream rng(3, 0);
    const Matrix a = random_spd(5, rng);
    const Vector c = stats::sample_standard_normal(5, rng);
    const GaussianLogDensity f(c, a);
    std::vector<Vector> accepted;
    NewtonOptions opts;
    opts.on_accept = [&](const Vector& x, double) { accepted.push_back(x); };
    const auto r = newton_maximize(f, Vector::Zero(5), opts);
    REQUIRE(!accepted.empty());
    CHECK((accepted.front() - c).norm() < 1e-10);
    CHECK((r.mode - c).norm() < 1e-10);
    CHECK(stats::max_abs(r.neg_hessian - a) < 1e-12);
}

TEST_CASE("newton_maximize: logit-beta mode matches a grid argmax") {
    for (auto [a, b] : std::vector<std::pair<double, double>>{{1, 1}, {2, 9}, {30, 4}}) {
        const LogitBetaDensity f(a, b);
        const auto r = newton_maximize(f, scalar(0.0));
        double best = -1e300;
        double arg = 0.0;
        const int n = 100000;
        for (int i = 0; i < n; ++i) {
            const double x = -10.0 + 20.0 * i / (n - 1.0);
            const double v = f.value(scalar(x));
            if (v > best) {
                best = v;
                arg = x;
            }
        }
        CHECK(std::abs(r.mode(0) - arg) < 2e-4 + 20.0 / n);
        CHECK(r.mode(0) == doctest::Approx(std::log(a / b)).epsilon(1e-8));
    }
}

TEST_CASE("newton_maximize: accepted iterates ascend") {
    const LogitBootstrapObjective f(7.0, 8.0, -2.0, 0.05);
    std::vector<double> values;
    NewtonOptions opts;
    opts.on_accept = [&](const Vector&, double v) { values.push_back(v); };
    const double start = f.value(scalar(6.0));
    const auto r = newton_maximize(f, scalar(6.0), opts);
    double prev = start;
    for (double v : values) {
        CHECK(v >= prev - 1e-9 * std::max(1.0, std::abs(prev)));
        prev = v;
    }
    CHECK(std::abs(f.gradient(r.mode)(0)) < 1e-8 * std::max(1.0, std::abs(r.value)));
}

TEST_CASE("newton_maximize: supremum not attained hits the iteration cap") {
    const FunctionLogDensity f(
        1, [](const Vector& x) { return -std::exp(-x(0)); },
        [](const Vector& x) -> Vector { return scalar(std::exp(-x(0))); },
        [](const Vector& x) -> Matrix { return Matrix::Constant(1, 1, -std::exp(-x(0))); });
    NewtonOptions opts;
    opts.max_iterations = 5;
    CHECK_THROWS_AS(newton_maximize(f, scalar(0.0), opts), ConvergenceError);
}

// ---------------------------------------------------------------------------
// Laplace
// ---------------------------------------------------------------------------

TEST_CASE("laplace_fit: exact on a Gaussian target") {
    stats::RngStream rng(4, 0);
    const Matrix p = random_spd(3, rng);
    const Vector m = stats::sample_standard_normal(3, rng);
    const GaussianLogDensity f(m, p);
    const auto fit = laplace_fit(f, Vector::Zero(3));
    std::vector<Vector> xs;
    for (int i = 0; i < 10000; ++i) xs.push_back(fit.sample(rng));
    check_moments(xs, m, p.inverse());
}

TEST_CASE("laplace_fit: prior-only posterior centers on the prior mode") {
    const LogitBetaDensity f(3.0, 5.0);
    const auto fit = laplace_fit(f, scalar(2.0));
    CHECK(fit.mode(0) == doctest::Approx(std::log(3.0 / 5.0)));
    // −ψ'' of α ln σ + β ln(1−σ) is (α+β)σ(1−σ).
    CHECK(fit.precision(0, 0) == doctest::Approx(8.0 * (3.0 / 8.0) * (5.0 / 8.0)));
}

// ---------------------------------------------------------------------------
// Gibbs
// ---------------------------------------------------------------------------

TEST_CASE("grid_inverse_cdf_sample: matches the target CDF") {
    stats::RngStream rng(5, 0);
    const boost::math::beta_distribution<> d(2.0, 5.0);
    std::vector<double> xs;
    for (int i = 0; i < 10000; ++i) {
        xs.push_back(grid_inverse_cdf_sample([](double t) { return std::log(t) + 4.0 * std::log1p(-t); }, 0.0, 1.0,
                                             2048, rng));
    }
    std::sort(xs.begin(), xs.end());
    double ks = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double f = boost::math::cdf(d, xs[i]);
        ks = std::max({ks, std::abs(f - static_cast<double>(i) / xs.size()),
                       std::abs(f - static_cast<double>(i + 1) / xs.size())});
    }
    CHECK(ks < 0.02);
    CHECK_THROWS_AS(grid_inverse_cdf_sample([](double) { return -INFINITY; }, 0.0, 1.0, 64, rng), NumericalError);
}

TEST_CASE("gibbs_sample: independent betas are exact after one sweep") {
    const FunctionLogDensity f(
        2,
        [](const Vector& t) {
            return 2.0 * std::log(t(0)) + std::log1p(-t(0)) + std::log1p(-t(1)) * 3.0;
        },
        [](const Vector&) -> Vector { return Vector::Zero(2); }, [](const Vector&) -> Matrix { return Matrix::Zero(2, 2); });
    const Box box{{0.0, 1.0}, {0.0, 1.0}};
    stats::RngStream rng(6, 0);
    std::vector<double> a;
    std::vector<double> b;
    for (int i = 0; i < 10000; ++i) {
        const Vector x = gibbs_sample(f, Vector::Constant(2, 0.5), box, 1, rng);
        a.push_back(x(0));
        b.push_back(x(1));
    }
    auto ks = [](std::vector<double> xs, const boost::math::beta_distribution<>& d) {
        std::sort(xs.begin(), xs.end());
        double worst = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double f = boost::math::cdf(d, xs[i]);
            worst = std::max({worst, std::abs(f - static_cast<double>(i) / xs.size()),
                              std::abs(f - static_cast<double>(i + 1) / xs.size())});
        }
        return worst;
    };
    CHECK(ks(a, boost::math::beta_distribution<>(3.0, 2.0)) < 0.02);
    CHECK(ks(b, boost::math::beta_distribution<>(1.0, 4.0)) < 0.02);
}

TEST_CASE("gibbs_sample: correlated Gaussian covariance after 100 sweeps") {
    Matrix cov(2, 2);
    cov << 1.0, 0.6, 0.6, 1.0;
    const GaussianLogDensity f(Vector::Zero(2), cov.inverse());
    const Box box{{-6.0, 6.0}, {-6.0, 6.0}};
    stats::RngStream rng(7, 0);
    Matrix acc = Matrix::Zero(2, 2);
    const int chains = 500;
    for (int c = 0; c < chains; ++c) {
        const Vector x = gibbs_sample(f, Vector::Constant(2, 3.0), box, 100, rng, 512);
        acc += x * x.transpose();
    }
    acc /= chains;
    CHECK(stats::max_abs(acc - cov) < 0.13);
    CHECK(std::abs(acc(0, 1) - 0.6) < 0.1);
}

// ---------------------------------------------------------------------------
// Langevin
// ---------------------------------------------------------------------------

TEST_CASE("langevin_chain: standard normal stationary moments") {
    const GaussianLogDensity f(Vector::Zero(1), Matrix::Identity(1, 1));
    stats::RngStream rng(8, 0);
    std::vector<double> xs;
    for (int c = 0; c < 2000; ++c) xs.push_back(langevin_chain(f, scalar(3.0), 0.01, 2000, rng)(0));
    const auto m = testing::moments(xs);
    CHECK(std::abs(m.mean) < 5.0 * m.stderr_of_mean());
    CHECK(std::abs(m.variance - 1.0) < 5.0 * testing::variance_stderr(m));
}

TEST_CASE("langevin_chain: without noise it is gradient ascent") {
    const LogitBetaDensity f(4.0, 2.0);
    stats::RngStream rng(9, 0);
    LangevinOptions opts;
    opts.noise_scale = 0.0;
    std::vector<double> values;
    opts.on_step = [&](const Vector& x) { values.push_back(f.value(x)); };
    langevin_chain(f, scalar(-3.0), 0.05, 200, rng, opts);
    for (std::size_t i = 1; i < values.size(); ++i) CHECK(values[i] >= values[i - 1] - 1e-12);
}

TEST_CASE("langevin_chain: preconditioned step keeps a Gaussian target") {
    stats::RngStream rng(10, 0);
    const Matrix cov = random_spd(3, rng, 0.2);
    const Vector mean = stats::sample_standard_normal(3, rng);
    const GaussianLogDensity f(mean, cov.inverse());
    LangevinOptions opts;
    opts.preconditioner = cov;
    std::vector<Vector> xs;
    for (int i = 0; i < 20000; ++i) {
        const Vector start = stats::sample_mvn(mean, stats::SpdMatrix(cov), rng);
        xs.push_back(langevin_chain(f, start, 0.01, 1, rng, opts));
    }
    // One step maps N(m, Σ) to N(m, (1 + ε²)Σ).
    check_moments(xs, mean, (1.0 + 1e-4) * cov);
}

TEST_CASE("langevin_chain: divergence is reported") {
    const GaussianLogDensity f(Vector::Zero(1), Matrix::Identity(1, 1));
    stats::RngStream rng(11, 0);
    CHECK_THROWS_AS(langevin_chain(f, scalar(1.0), 5.0, 1000, rng), NumericalError);
}

// ---------------------------------------------------------------------------
// Bootstrap
// ---------------------------------------------------------------------------

TEST_CASE("bootstrap_sample: empty history returns the prior draw") {
    BootstrapPrior prior{[](stats::RngStream& r) { return stats::sample_standard_normal(2, r); },
                         Matrix::Identity(2, 2)};
    const LikelihoodFactory none = [](const std::vector<std::size_t>&) -> std::unique_ptr<DifferentiableLogDensity> {
        return std::make_unique<FunctionLogDensity>(
            2, [](const Vector&) { return 0.0; }, [](const Vector&) -> Vector { return Vector::Zero(2); },
            [](const Vector&) -> Matrix { return Matrix::Zero(2, 2); });
    };
    stats::RngStream a(12, 0);
    stats::RngStream b(12, 0);
    const Vector x = bootstrap_sample(0, prior, none, a);
    const Vector want = prior.sample(b);
    CHECK((x - want).norm() < 1e-12);
}

TEST_CASE("bootstrap_sample: Gaussian closed form") {
    const std::vector<double> y{0.4, -1.2, 2.0, 0.7, 0.1};
    const double noise = 0.5;
    const double precision = 0.8;
    std::vector<std::size_t> used;
    double anchor = 0.0;
    BootstrapPrior prior{[&](stats::RngStream& r) {
                             anchor = stats::sample_normal(r);
                             return scalar(anchor);
                         },
                         Matrix::Constant(1, 1, precision)};
    const LikelihoodFactory lik = [&](const std::vector<std::size_t>& idx) -> std::unique_ptr<DifferentiableLogDensity> {
        used = idx;
        return std::make_unique<FunctionLogDensity>(
            1,
            [&, idx](const Vector& t) {
                double v = 0.0;
                for (std::size_t i : idx) v -= 0.5 * std::pow(y[i] - t(0), 2) / noise;
                return v;
            },
            [&, idx](const Vector& t) -> Vector {
                double g = 0.0;
                for (std::size_t i : idx) g += (y[i] - t(0)) / noise;
                return scalar(g);
            },
            [&, idx](const Vector&) -> Matrix { return Matrix::Constant(1, 1, -static_cast<double>(idx.size()) / noise); });
    };
    stats::RngStream rng(13, 0);
    for (int trial = 0; trial < 20; ++trial) {
        const Vector x = bootstrap_sample(y.size(), prior, lik, rng);
        REQUIRE(used.size() == y.size());
        double sy = 0.0;
        for (std::size_t i : used) sy += y[i];
        // Stationarity of Σ(y−θ)²/(2s²) + P(θ−θ⁰)².
        const double want = (sy / noise + 2.0 * precision * anchor) / (y.size() / noise + 2.0 * precision);
        CHECK(std::abs(x(0) - want) < 1e-8);
    }
}

TEST_CASE("bootstrap_indices: reproducible and in range") {
    stats::RngStream a(14, 0);
    stats::RngStream b(14, 0);
    const auto i1 = bootstrap_indices(50, a);
    CHECK(i1 == bootstrap_indices(50, b));
    for (std::size_t i : i1) CHECK(i < 50);
    engine::History<int, int> h;
    for (int i = 0; i < 10; ++i) h.append(i, 2 * i);
    const auto r = resample_history(h, a);
    CHECK(r.size() == 10);
    for (const auto& [act, obs] : r) CHECK(obs == 2 * act);
}

// ---------------------------------------------------------------------------
// Online Newton and ensembles
// ---------------------------------------------------------------------------

TEST_CASE("OnlineNewtonState: exact on linear-Gaussian streams") {
    stats::RngStream rng(15, 0);
    const Eigen::Index d = 4;
    const Matrix prior_cov = random_spd(d, rng);
    GaussianBelief exact{stats::sample_standard_normal(d, rng), prior_cov};
    OnlineNewtonState state(exact.mean, stats::SpdMatrix(Matrix(prior_cov.inverse())));
    OnlineNewtonState rank_one = state;
    for (int t = 0; t < 30; ++t) {
        const Vector x = stats::sample_standard_normal(d, rng);
        const double y = stats::sample_normal(rng);
        exact.observe_linear(x, y, 0.7);
        const auto g = linear_observation(x, y, 0.7);
        state.update(g);
        rank_one.update_rank_one(g.gradient(rank_one.theta_bar()), x, 1.0 / 0.7);
        CHECK((state.theta_bar() - exact.mean).cwiseAbs().maxCoeff() < 1e-8);
        CHECK(stats::max_abs(state.h_inverse() - exact.cov) < 1e-8);
        CHECK(stats::max_abs(rank_one.h_inverse() - rank_one.h().inverse()) < 1e-8);
        CHECK((rank_one.theta_bar() - exact.mean).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("OnlineNewtonState: a flat observation changes nothing") {
    OnlineNewtonState s(Vector::Constant(2, 0.3), stats::SpdMatrix::identity(2));
    const FunctionLogDensity zero(
        2, [](const Vector&) { return 0.0; }, [](const Vector&) -> Vector { return Vector::Zero(2); },
        [](const Vector&) -> Matrix { return Matrix::Zero(2, 2); });
    s.update(zero);
    CHECK(s.theta_bar() == Vector::Constant(2, 0.3));
    CHECK(s.h() == Matrix::Identity(2, 2));
}

TEST_CASE("ensemble_bootstrap_update: untouched fraction is e^-1") {
    std::vector<OnlineNewtonState> models(20000, OnlineNewtonState(Vector::Zero(2), stats::SpdMatrix::identity(2)));
    const auto g = linear_observation(Vector::Constant(2, 1.0), 0.5, 1.0);
    stats::RngStream rng(16, 0);
    const std::size_t untouched = ensemble_bootstrap_update(models, g, rng);
    const double p = std::exp(-1.0);
    CHECK(std::abs(untouched / 20000.0 - p) < 5.0 * std::sqrt(p * (1 - p) / 20000.0));
    std::size_t unchanged = 0;
    for (const auto& m : models) unchanged += m.theta_bar().isZero(0.0);
    CHECK(unchanged == untouched);
}

TEST_CASE("LinearEnsemble: covariance is the exact posterior covariance") {
    stats::RngStream rng(17, 0);
    const Matrix prior = random_spd(3, rng);
    LinearEnsemble ens(Vector::Zero(3), stats::SpdMatrix(prior), 0.5, 10, rng);
    GaussianBelief exact{Vector::Zero(3), prior};
    for (int t = 0; t < 15; ++t) {
        const Vector x = stats::sample_standard_normal(3, rng);
        ens.update(x, 1.0, rng);
        exact.observe_linear(x, 1.0, 0.5);
        CHECK(stats::max_abs(ens.covariance() - exact.cov) < 1e-10);
    }
}

TEST_CASE("LinearEnsemble: infinite noise leaves everything unchanged") {
    stats::RngStream rng(18, 0);
    LinearEnsemble ens(Vector::Zero(2), stats::SpdMatrix::identity(2), INFINITY, 5, rng);
    const auto before = ens.models();
    ens.update(Vector::Constant(2, 1.0), 3.0, rng);
    CHECK(ens.covariance() == Matrix::Identity(2, 2));
    for (std::size_t n = 0; n < 5; ++n) CHECK(ens.models()[n] == before[n]);
}

TEST_CASE("LinearEnsemble: each model solves its perturbed least-squares problem") {
    // With one model, the perturbations are the stream's successive normal draws.
    stats::RngStream rng(19, 0);
    const Matrix prior = random_spd(2, rng);
    const double noise = 0.3;
    LinearEnsemble ens(Vector::Zero(2), stats::SpdMatrix(prior), noise, 1, rng);
    const Vector theta0 = ens.models()[0];
    Matrix lhs = prior.inverse();
    Vector rhs = lhs * theta0;
    for (int t = 0; t < 8; ++t) {
        const Vector x = stats::sample_standard_normal(2, rng);
        const double y = stats::sample_normal(rng);
        stats::RngStream copy = rng;
        const double w = std::sqrt(noise) * stats::sample_normal(copy);
        ens.update(x, y, rng);
        lhs += x * x.transpose() / noise;
        rhs += x * (y + w) / noise;
    }
    CHECK((ens.models()[0] - lhs.ldlt().solve(rhs)).norm() < 1e-8);
}

TEST_CASE("LinearEnsemble: models follow the exact posterior") {
    const Eigen::Index d = 3;
    stats::RngStream gen(20, 0);
    stats::RngStream rng(21, 0);
    GaussianBelief exact{Vector::Zero(d), Matrix::Identity(d, d)};
    LinearEnsemble ens(Vector::Zero(d), stats::SpdMatrix::identity(d), 1.0, 10000, rng);
    for (int t = 0; t < 20; ++t) {
        const Vector x = stats::sample_standard_normal(d, gen);
        const double y = stats::sample_normal(gen);
        exact.observe_linear(x, y, 1.0);
        ens.update(x, y, rng);
    }
    check_moments(ens.models(), exact.mean, exact.cov);
}

// ---------------------------------------------------------------------------
// Agents
// ---------------------------------------------------------------------------

TEST_CASE("ApproxBernoulliAgent: every rule selects admissible arms and tracks counts") {
    for (auto rule : {ApproxRule::Laplace, ApproxRule::Bootstrap, ApproxRule::Langevin, ApproxRule::Gibbs}) {
        ApproxBernoulliAgent agent(bernoulli::BetaParams::uniform(3), rule);
        stats::RngStream rng(22, 0);
        for (std::size_t t = 1; t <= 30; ++t) {
            const auto a = agent.select_action(t, {3}, rng);
            CHECK(a < 3);
            agent.observe(t, a, a == 0 ? 1 : 0);
        }
        double plays = 0.0;
        for (std::size_t k = 0; k < 3; ++k) plays += agent.params().alpha[k] + agent.params().beta[k] - 2.0;
        CHECK(plays == 30.0);
    }
}

TEST_CASE("ApproxBernoulliAgent: Laplace prefers a clearly better arm") {
    ApproxBernoulliAgent agent(bernoulli::BetaParams::uniform(2), ApproxRule::Laplace);
    for (int i = 0; i < 50; ++i) {
        agent.observe(1, 0, i % 10 < 8 ? 1 : 0);
        agent.observe(1, 1, i % 10 < 2 ? 1 : 0);
    }
    stats::RngStream rng(23, 0);
    int first = 0;
    for (int i = 0; i < 1000; ++i) first += agent.select_action(1, {2}, rng) == 0;
    CHECK(first > 990);
}

TEST_CASE("KalmanTsAgent and EnsembleTsAgent: admissible actions") {
    stats::RngStream gen(24, 0);
    std::vector<Vector> actions;
    for (int i = 0; i < 6; ++i) actions.push_back(stats::sample_standard_normal(2, gen));
    KalmanTsAgent kalman(actions, Vector::Zero(2), stats::SpdMatrix::identity(2), 1.0);
    EnsembleTsAgent ensemble(actions, Vector::Zero(2), stats::SpdMatrix::identity(2), 1.0, 8, stats::RngStream(1, 1));
    LinearBanditEnv env(actions, Vector::Constant(2, 0.5), 1.0);
    stats::RngStream rng(25, 0);
    for (std::size_t t = 1; t <= 20; ++t) {
        const auto a = kalman.select_action(t, env.admissible_actions(t), rng);
        const auto b = ensemble.select_action(t, env.admissible_actions(t), rng);
        CHECK(a < 6);
        CHECK(b < 6);
        CHECK(env.per_period_regret(t, a) >= 0.0);
        kalman.observe(t, a, env.step(t, a, rng));
        ensemble.observe(t, b, env.step(t, b, rng));
    }
}
