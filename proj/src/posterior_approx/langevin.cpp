#include "tslab/posterior_approx/langevin.hpp"

#include "tslab/errors.hpp"
#include "tslab/stats/distributions.hpp"

#include <cmath>

namespace tslab::posterior_approx {

Vector langevin_chain(const DifferentiableLogDensity& f, Vector init, double eps, std::size_t steps,
                      stats::RngStream& rng, const LangevinOptions& opts) {
    if (!(eps > 0.0) || !std::isfinite(eps)) throw DomainError("langevin_chain: step size must be positive");
    const std::size_t d = f.dimension();
    if (static_cast<std::size_t>(init.size()) != d) throw ShapeError("langevin_chain: dimension mismatch");
    std::optional<Matrix> root;
    if (opts.preconditioner) {
        if (opts.preconditioner->rows() != init.size()) throw ShapeError("langevin_chain: preconditioner size");
        root = stats::cholesky(stats::SpdMatrix(*opts.preconditioner));
    }
    const double limit = 1e6 * (1.0 + init.norm());
    const double noise = std::sqrt(2.0 * eps) * opts.noise_scale;
    Vector x = std::move(init);
    for (std::size_t n = 0; n < steps; ++n) {
        Vector drift = f.gradient(x);
        if (opts.preconditioner) drift = (*opts.preconditioner) * drift;
        x += eps * drift;
        if (noise != 0.0) {
            const Vector w = stats::sample_standard_normal(d, rng);
            if (root) {
                const Vector lw = root->triangularView<Eigen::Lower>() * w;
                x += noise * lw;
            } else {
                x += noise * w;
            }
        }
        const double norm = x.norm();
        if (!std::isfinite(norm) || norm > limit) {
            throw NumericalError("langevin_chain: iterate diverged at step " + std::to_string(n) +
                                 "; reduce the step size");
        }
        if (opts.on_step) opts.on_step(x);
    }
    return x;
}

}  // namespace tslab::posterior_approx
