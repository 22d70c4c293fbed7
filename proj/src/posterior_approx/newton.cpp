#include "tslab/posterior_approx/newton.hpp"

#include "tslab/errors.hpp"
#include "tslab/stats/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

namespace tslab::posterior_approx {

namespace {

double safe_value(const DifferentiableLogDensity& f, const Vector& x) {
    try {
        const double v = f.value(x);
        return std::isnan(v) ? -std::numeric_limits<double>::infinity() : v;
    } catch (const DomainError&) {
        return -std::numeric_limits<double>::infinity();
    }
}

std::vector<double> to_std(const Vector& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

std::optional<Vector> try_solve(const Matrix& c, const Vector& grad) {
    try {
        return stats::cholesky_solve(stats::cholesky_lower(c), grad);
    } catch (const FactorizationError&) {
        return std::nullopt;
    }
}

/// Solves (−H + τI)d = g with the smallest τ in {0, τ₀, 10τ₀, ...} that makes
/// the system positive definite.
std::optional<Vector> newton_direction(const Matrix& hess, const Vector& grad) {
    Matrix c = -hess;
    if (auto d = try_solve(c, grad)) return d;
    const double scale = std::max(stats::max_abs(c), 1e-8);
    for (double tau = 1e-6 * scale; tau < 1e12 * scale; tau *= 10.0) {
        Matrix damped = c;
        damped.diagonal().array() += tau;
        if (auto d = try_solve(damped, grad)) return d;
    }
    return std::nullopt;
}

}  // namespace

NewtonResult newton_maximize(const DifferentiableLogDensity& f, Vector init, const NewtonOptions& opts) {
    if (static_cast<std::size_t>(init.size()) != f.dimension()) throw ShapeError("newton_maximize: dimension mismatch");
    Vector x = std::move(init);
    double fx = f.value(x);
    if (!std::isfinite(fx)) throw DomainError("newton_maximize: log-density is not finite at the initial point");
    const double eps = std::numeric_limits<double>::epsilon();

    for (std::size_t it = 0; it < opts.max_iterations; ++it) {
        const Vector g = f.gradient(x);
        const Matrix h = f.hessian(x);
        const double gnorm = g.norm();
        if (gnorm < opts.tolerance * std::max(1.0, std::abs(fx))) {
            return {x, -h, fx, it};
        }

        auto dir = newton_direction(h, g);
        const Vector d = dir ? *dir : g;
        double slope = g.dot(d);
        const Vector step_dir = slope > 0.0 ? d : g;
        if (slope <= 0.0) slope = g.squaredNorm();

        // Predicted gain below the rounding of f: line search is uninformative.
        if (dir && slope > 0.0 && slope < 16.0 * eps * std::max(1.0, std::abs(fx))) {
            Vector full = x + *dir;
            const double ffull = safe_value(f, full);
            if (!(std::isfinite(ffull) && f.gradient(full).norm() < gnorm)) return {x, -h, fx, it};
            x = std::move(full);
            fx = ffull;
            if (opts.on_accept) opts.on_accept(x, fx);
            continue;
        }

        double alpha = opts.initial_step;
        bool accepted = false;
        Vector trial;
        double ftrial = 0.0;
        const double min_move = eps * std::max(1.0, x.norm());
        for (int k = 0; k < 80 && alpha * step_dir.norm() > min_move; ++k) {
            trial = x + alpha * step_dir;
            ftrial = safe_value(f, trial);
            if (ftrial >= fx + opts.armijo * alpha * slope) {
                accepted = true;
                break;
            }
            alpha *= opts.contraction;
        }
        if (!accepted) {
            // Near the optimum, cancellation in f can exceed the predicted
            // gain; take the full step if it loses no more than that noise
            // and reduces the gradient.
            trial = x + opts.initial_step * step_dir;
            ftrial = safe_value(f, trial);
            if (ftrial >= fx - 1e-9 * std::max(1.0, std::abs(fx)) && f.gradient(trial).norm() < gnorm) {
                accepted = true;
            }
        }
        if (!accepted) {
            throw ConvergenceError("newton_maximize: line search failed at iteration " + std::to_string(it), to_std(x));
        }
        x = std::move(trial);
        fx = ftrial;
        if (opts.on_accept) opts.on_accept(x, fx);
    }
    const Vector g = f.gradient(x);
    if (g.norm() < opts.tolerance * std::max(1.0, std::abs(fx))) return {x, -f.hessian(x), fx, opts.max_iterations};
    throw ConvergenceError("newton_maximize: no convergence within " + std::to_string(opts.max_iterations) +
                               " iterations",
                           to_std(x));
}

Vector LaplaceApproximation::sample(stats::RngStream& rng) const {
    const Vector w = stats::sample_standard_normal(static_cast<std::size_t>(mode.size()), rng);
    return mode + precision_factor.transpose().triangularView<Eigen::Upper>().solve(w);
}

LaplaceApproximation laplace_fit(const DifferentiableLogDensity& f, Vector init, const NewtonOptions& opts) {
    NewtonResult r = newton_maximize(f, std::move(init), opts);
    stats::symmetrize(r.neg_hessian);
    Matrix l = stats::cholesky_lower(r.neg_hessian);
    return {std::move(r.mode), std::move(r.neg_hessian), std::move(l)};
}

Vector laplace_sample(const DifferentiableLogDensity& f, Vector init, stats::RngStream& rng,
                      const NewtonOptions& opts) {
    return laplace_fit(f, std::move(init), opts).sample(rng);
}

}  // namespace tslab::posterior_approx
