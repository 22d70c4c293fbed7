#include "tslab/posterior_approx/log_density.hpp"

#include "tslab/errors.hpp"

#include <algorithm>
#include <cmath>

namespace tslab::posterior_approx {

GaussianLogDensity::GaussianLogDensity(Vector mean, Matrix precision)
    : mean_(std::move(mean)), precision_(std::move(precision)) {
    if (precision_.rows() != mean_.size() || precision_.cols() != mean_.size()) {
        throw ShapeError("GaussianLogDensity: precision does not match mean dimension");
    }
}

double GaussianLogDensity::value(const Vector& x) const {
    const Vector d = x - mean_;
    return -0.5 * d.dot(precision_ * d);
}

Vector GaussianLogDensity::gradient(const Vector& x) const { return -(precision_ * (x - mean_)); }

Matrix GaussianLogDensity::hessian(const Vector&) const { return -precision_; }

SumLogDensity::SumLogDensity(const DifferentiableLogDensity& a, const DifferentiableLogDensity& b, double b_weight)
    : a_(a), b_(b), w_(b_weight) {
    if (a.dimension() != b.dimension()) throw ShapeError("SumLogDensity: dimension mismatch");
}

double gradient_error(const DifferentiableLogDensity& f, const Vector& x, double h) {
    const Vector g = f.gradient(x);
    const double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
    double worst = 0.0;
    Vector xp = x, xm = x;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double step = h * std::max(1.0, std::abs(x(i)));
        xp(i) = x(i) + step;
        xm(i) = x(i) - step;
        const double fd = (f.value(xp) - f.value(xm)) / (2.0 * step);
        worst = std::max(worst, std::abs(fd - g(i)) / scale);
        xp(i) = x(i);
        xm(i) = x(i);
    }
    return worst;
}

double hessian_error(const DifferentiableLogDensity& f, const Vector& x, double h) {
    const Matrix hess = f.hessian(x);
    const double scale = std::max(1.0, stats::max_abs(hess));
    double worst = 0.0;
    Vector xp = x, xm = x;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double step = h * std::max(1.0, std::abs(x(i)));
        xp(i) = x(i) + step;
        xm(i) = x(i) - step;
        const Vector fd = (f.gradient(xp) - f.gradient(xm)) / (2.0 * step);
        for (Eigen::Index j = 0; j < x.size(); ++j) worst = std::max(worst, std::abs(fd(j) - hess(j, i)) / scale);
        xp(i) = x(i);
        xm(i) = x(i);
    }
    return worst;
}

}  // namespace tslab::posterior_approx
