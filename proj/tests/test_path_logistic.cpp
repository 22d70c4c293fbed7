#include "support.hpp"

#include "tslab/engine/experiment.hpp"
#include "tslab/errors.hpp"
#include "tslab/path_logistic/model.hpp"
#include "tslab/posterior_approx/log_density.hpp"
#include "tslab/stats/distributions.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <memory>

using namespace tslab;
using namespace tslab::path_logistic;

namespace {

double route_length(const Path& x, const std::vector<double>& theta) {
    double s = 0.0;
    for (std::size_t e : x) s += theta[e];
    return s;
}

/// θ equal to `base` on every edge, with path x scaled so its length is M + shift.
std::vector<double> with_path_length(const BinomialBridge& b, const Path& x, double base, double shift) {
    std::vector<double> theta(b.num_edges(), base);
    for (std::size_t e : x) theta[e] = (static_cast<double>(b.stages()) + shift) / static_cast<double>(x.size());
    return theta;
}

PathCounts random_counts(const BinomialBridge& b, std::size_t records, stats::RngStream& rng) {
    FeedbackHistory h;
    for (std::size_t i = 0; i < records; ++i) h.append(b.random_path(rng), stats::sample_bernoulli(0.5, rng));
    return PathCounts::from(h);
}

Vector positive_point(std::size_t edges, stats::RngStream& rng) {
    Vector x(static_cast<Eigen::Index>(edges));
    for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = 0.2 + 1.8 * rng.uniform01();
    return x;
}

}  // namespace

// ---------------------------------------------------------------------------
// Click probability and feedback
// ---------------------------------------------------------------------------

TEST_CASE("click_probability: logistic in M minus path length") {
    const BinomialBridge b(6);
    const Path x = b.enumerate_paths().front();
    CHECK(click_probability(x, with_path_length(b, x, 3.0, 0.0), 6) == doctest::Approx(0.5));
    CHECK(click_probability(x, with_path_length(b, x, 3.0, std::log(3.0)), 6) == doctest::Approx(0.25));
    const std::vector<double> ones(b.num_edges(), 1.0);
    for (const auto& p : b.enumerate_paths()) CHECK(click_probability(p, ones, 6) == doctest::Approx(0.5));
}

TEST_CASE("simulate_feedback: empirical click rates") {
    const BinomialBridge b(4);
    const Path x = b.enumerate_paths().back();
    stats::RngStream rng(1, 0);
    int sure = 0;
    int fair = 0;
    const auto near_one = with_path_length(b, x, 1.0, -10.0);
    const auto half = with_path_length(b, x, 1.0, 0.0);
    for (int i = 0; i < 100000; ++i) {
        sure += simulate_feedback(x, near_one, 4, rng);
        fair += simulate_feedback(x, half, 4, rng);
    }
    CHECK(sure / 1e5 > 0.9999);
    CHECK(std::abs(fair / 1e5 - 0.5) < 0.005);
    stats::RngStream a(2, 0);
    stats::RngStream c(2, 0);
    for (int i = 0; i < 50; ++i) CHECK(simulate_feedback(x, half, 4, a) == simulate_feedback(x, half, 4, c));
}

TEST_CASE("sample_gamma_theta: prior moments") {
    stats::RngStream rng(3, 0);
    const auto theta = sample_gamma_theta(200000, rng);
    const auto m = testing::moments(theta);
    CHECK(std::abs(m.mean - 1.0) < 5.0 * m.stderr_of_mean());
    double second = 0.0;
    for (double t : theta) second += t * t;
    CHECK(second / theta.size() == doctest::Approx(1.5).epsilon(0.02));
    std::vector<double> logs;
    for (double t : theta) logs.push_back(std::log(t));
    const auto lm = testing::moments(logs);
    CHECK(std::abs(lm.mean - kPriorLogMean) < 5.0 * lm.stderr_of_mean());
    CHECK(lm.variance == doctest::Approx(kPriorLogVariance).epsilon(0.02));
}

// ---------------------------------------------------------------------------
// Log posterior
// ---------------------------------------------------------------------------

TEST_CASE("LogPosterior: empty history is the gamma prior with mode 0.5") {
    const BinomialBridge b(4);
    const LogPosterior f(b.num_edges(), 4, PathCounts{}, Coordinates::Theta);
    const Vector mode = Vector::Constant(static_cast<Eigen::Index>(b.num_edges()), 0.5);
    CHECK(f.gradient(mode).cwiseAbs().maxCoeff() < 1e-12);
    const Vector shifted = Vector::Constant(mode.size(), 0.9);
    // Σ (k−1) ln θ − λθ up to a constant.
    CHECK(f.value(shifted) - f.value(mode) ==
          doctest::Approx(b.num_edges() * ((std::log(0.9) - 2.0 * 0.9) - (std::log(0.5) - 1.0))));
}

TEST_CASE("LogPosterior: derivatives match finite differences in both coordinates") {
    const BinomialBridge b(6);
    stats::RngStream rng(4, 0);
    const auto counts = random_counts(b, 40, rng);
    for (auto coords : {Coordinates::Theta, Coordinates::Psi}) {
        const LogPosterior f(b.num_edges(), 6, counts, coords);
        for (int i = 0; i < 20; ++i) {
            Vector x = positive_point(b.num_edges(), rng);
            if (coords == Coordinates::Psi) x = x.array().log().matrix();
            CHECK(posterior_approx::gradient_error(f, x) < 1e-4);
            CHECK(posterior_approx::hessian_error(f, x) < 1e-3);
        }
    }
}

TEST_CASE("LogPosterior: nonpositive θ is a domain error") {
    const LogPosterior f(4, 2, PathCounts{}, Coordinates::Theta);
    Vector x = Vector::Constant(4, 1.0);
    x(2) = 0.0;
    CHECK_THROWS_AS(f.value(x), DomainError);
    CHECK_THROWS_AS(f.gradient(x), DomainError);
    const LogPosterior g(4, 2, PathCounts{}, Coordinates::Psi);
    x(2) = -3.0;
    CHECK(std::isfinite(g.value(x)));
}

TEST_CASE("LogPosterior: a click lowers the score of every edge on the path") {
    const BinomialBridge b(6);
    stats::RngStream rng(5, 0);
    FeedbackHistory h;
    for (int i = 0; i < 10; ++i) h.append(b.random_path(rng), stats::sample_bernoulli(0.5, rng));
    const LogPosterior before(b.num_edges(), 6, PathCounts::from(h), Coordinates::Theta);
    const Path x = b.random_path(rng);
    h.append(x, 1);
    const LogPosterior after(b.num_edges(), 6, PathCounts::from(h), Coordinates::Theta);
    const Vector at = positive_point(b.num_edges(), rng);
    const Vector d = after.gradient(at) - before.gradient(at);
    for (std::size_t e = 0; e < b.num_edges(); ++e) {
        const bool on_path = std::find(x.begin(), x.end(), e) != x.end();
        if (on_path) {
            CHECK(d(static_cast<Eigen::Index>(e)) < 0.0);
        } else {
            CHECK(d(static_cast<Eigen::Index>(e)) == 0.0);
        }
    }
}

TEST_CASE("LogPosterior: concave over the positive orthant") {
    const BinomialBridge b(6);
    stats::RngStream rng(6, 0);
    const LogPosterior f(b.num_edges(), 6, random_counts(b, 60, rng), Coordinates::Theta);
    for (int i = 0; i < 20; ++i) {
        const Matrix h = f.hessian(positive_point(b.num_edges(), rng));
        CHECK(Eigen::SelfAdjointEigenSolver<Matrix>(h).eigenvalues().maxCoeff() <= 1e-9);
    }
}

TEST_CASE("PathCounts: resampling aggregates by distinct path") {
    const BinomialBridge b(4);
    FeedbackHistory h;
    const auto paths = b.enumerate_paths();
    h.append(paths[0], 1);
    h.append(paths[1], 0);
    h.append(paths[0], 0);
    h.append(paths[0], 1);
    CHECK(h.paths().size() == 2);
    const auto all = PathCounts::from(h);
    CHECK(all.ones[0] == 2.0);
    CHECK(all.zeros[0] == 1.0);
    CHECK(all.zeros[1] == 1.0);
    const auto re = PathCounts::resampled(h, {0, 0, 3, 1});
    CHECK(re.ones[0] == 3.0);
    CHECK(re.zeros[0] == 0.0);
    CHECK(re.zeros[1] == 1.0);
}

// ---------------------------------------------------------------------------
// Environment and agents
// ---------------------------------------------------------------------------

TEST_CASE("shortest_under_sample: negative weights keep the argmin") {
    const BinomialBridge b(6);
    stats::RngStream rng(7, 0);
    for (int t = 0; t < 20; ++t) {
        std::vector<double> w(b.num_edges());
        for (auto& x : w) x = stats::sample_normal(rng);
        const auto r = shortest_under_sample(b, w);
        for (const auto& p : b.enumerate_paths()) CHECK(route_length(r.edges, w) <= route_length(p, w) + 1e-12);
    }
}

TEST_CASE("LogisticPathEnv: regret is zero on the shortest path and nonnegative elsewhere") {
    auto b = std::make_shared<const BinomialBridge>(6);
    stats::RngStream rng(8, 0);
    const auto theta = sample_gamma_theta(b->num_edges(), rng);
    const LogisticPathEnv env(b, theta);
    const auto best = b->shortest(theta);
    CHECK(env.per_period_regret(1, best.edges) == doctest::Approx(0.0));
    for (const auto& p : b->enumerate_paths()) CHECK(env.per_period_regret(1, p) >= -1e-15);
}

TEST_CASE("LogisticPathAgent: Laplace and bootstrap regret declines on a twenty-stage bridge") {
    auto bridge = std::make_shared<const BinomialBridge>(20);
    for (auto rule : {LogisticRule::Laplace, LogisticRule::Bootstrap}) {
        engine::ExperimentConfig<LogisticTraits> cfg;
        cfg.label = rule == LogisticRule::Laplace ? "laplace" : "bootstrap";
        cfg.horizon = 500;
        cfg.num_simulations = 4;
        cfg.base_seed = 11;
        cfg.make_environment = [bridge](stats::RngStream& init) {
            return std::make_unique<LogisticPathEnv>(bridge, sample_gamma_theta(bridge->num_edges(), init));
        };
        cfg.make_agent = [bridge, rule](stats::RngStream&) { return std::make_unique<LogisticPathAgent>(bridge, rule); };
        const auto curve = engine::run_experiment(cfg);
        CAPTURE(cfg.label);
        CHECK(curve.window_mean(401, 500) < 0.5 * curve.window_mean(1, 100));
    }
}
