#pragma once

#include "tslab/stats/linalg.hpp"

#include <cstddef>
#include <functional>

namespace tslab::posterior_approx {

using stats::Matrix;
using stats::Vector;

/// Unnormalized log-density over R^d.
class LogDensity {
public:
    virtual ~LogDensity() = default;
    virtual std::size_t dimension() const = 0;
    virtual double value(const Vector& x) const = 0;
};

class DifferentiableLogDensity : public LogDensity {
public:
    virtual Vector gradient(const Vector& x) const = 0;
    virtual Matrix hessian(const Vector& x) const = 0;
};

/// Log-density assembled from callables.
class FunctionLogDensity final : public DifferentiableLogDensity {
public:
    using ValueFn = std::function<double(const Vector&)>;
    using GradientFn = std::function<Vector(const Vector&)>;
    using HessianFn = std::function<Matrix(const Vector&)>;

    FunctionLogDensity(std::size_t dim, ValueFn v, GradientFn g, HessianFn h)
        : dim_(dim), v_(std::move(v)), g_(std::move(g)), h_(std::move(h)) {}

    std::size_t dimension() const override { return dim_; }
    double value(const Vector& x) const override { return v_(x); }
    Vector gradient(const Vector& x) const override { return g_(x); }
    Matrix hessian(const Vector& x) const override { return h_(x); }

private:
    std::size_t dim_;
    ValueFn v_;
    GradientFn g_;
    HessianFn h_;
};

/// −½(x−m)ᵀP(x−m): a Gaussian with mean m and precision P.
class GaussianLogDensity final : public DifferentiableLogDensity {
public:
    GaussianLogDensity(Vector mean, Matrix precision);

    std::size_t dimension() const override { return static_cast<std::size_t>(mean_.size()); }
    double value(const Vector& x) const override;
    Vector gradient(const Vector& x) const override;
    Matrix hessian(const Vector& x) const override;

    const Vector& mean() const noexcept { return mean_; }
    const Matrix& precision() const noexcept { return precision_; }

private:
    Vector mean_;
    Matrix precision_;
};

/// Sum of two log-densities of equal dimension, optionally scaling the second.
class SumLogDensity final : public DifferentiableLogDensity {
public:
    SumLogDensity(const DifferentiableLogDensity& a, const DifferentiableLogDensity& b, double b_weight = 1.0);

    std::size_t dimension() const override { return a_.dimension(); }
    double value(const Vector& x) const override { return a_.value(x) + w_ * b_.value(x); }
    Vector gradient(const Vector& x) const override { return a_.gradient(x) + w_ * b_.gradient(x); }
    Matrix hessian(const Vector& x) const override { return a_.hessian(x) + w_ * b_.hessian(x); }

private:
    const DifferentiableLogDensity& a_;
    const DifferentiableLogDensity& b_;
    double w_;
};

/// Largest relative deviation of the analytic gradient from central
/// differences, measured against max(1, ‖gradient‖∞).
double gradient_error(const DifferentiableLogDensity& f, const Vector& x, double h = 1e-5);

/// Same for the Hessian against central differences of the gradient.
double hessian_error(const DifferentiableLogDensity& f, const Vector& x, double h = 1e-5);

}  // namespace tslab::posterior_approx
