#include "tslab/posterior_approx/gibbs.hpp"

#include "tslab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tslab::posterior_approx {

double grid_inverse_cdf_sample(const std::function<double(double)>& log_density, double lo, double hi,
                               std::size_t grid, stats::RngStream& rng) {
    if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi)) throw DomainError("gibbs: invalid box bounds");
    if (grid < 1) throw DomainError("gibbs: grid resolution must be positive");
    const double width = (hi - lo) / static_cast<double>(grid);
    std::vector<double> w(grid);
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < grid; ++i) {
        const double v = log_density(lo + (static_cast<double>(i) + 0.5) * width);
        w[i] = std::isnan(v) ? -std::numeric_limits<double>::infinity() : v;
        top = std::max(top, w[i]);
    }
    if (!std::isfinite(top)) throw NumericalError("gibbs: conditional has zero mass on the grid");
    double total = 0.0;
    for (double& v : w) {
        v = std::exp(v - top);
        total += v;
    }
    const double target = rng.uniform01() * total;
    double c = 0.0;
    std::size_t cell = grid - 1;
    for (std::size_t i = 0; i < grid; ++i) {
        c += w[i];
        if (target < c) {
            cell = i;
            break;
        }
    }
    while (w[cell] == 0.0 && cell > 0) --cell;
    return lo + (static_cast<double>(cell) + rng.uniform01()) * width;
}

Vector gibbs_sample(const LogDensity& f, Vector init, const Box& box, std::size_t sweeps, stats::RngStream& rng,
                    std::size_t grid) {
    const std::size_t d = f.dimension();
    if (static_cast<std::size_t>(init.size()) != d || box.size() != d) {
        throw ShapeError("gibbs_sample: init, box and density dimensions differ");
    }
    Vector x = std::move(init);
    for (std::size_t s = 0; s < sweeps; ++s) {
        for (std::size_t k = 0; k < d; ++k) {
            const auto idx = static_cast<Eigen::Index>(k);
            auto conditional = [&](double v) {
                x(idx) = v;
                return f.value(x);
            };
            const double draw = grid_inverse_cdf_sample(conditional, box[k].first, box[k].second, grid, rng);
            x(idx) = draw;
        }
    }
    return x;
}

}  // namespace tslab::posterior_approx
