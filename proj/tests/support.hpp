#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace tslab::testing {

struct Moments {
    double mean = 0.0;
    double variance = 0.0;
    std::size_t n = 0;

    double stderr_of_mean() const { return std::sqrt(variance / static_cast<double>(n)); }
};

inline Moments moments(const std::vector<double>& xs) {
    Moments m;
    m.n = xs.size();
    for (double x : xs) m.mean += x;
    m.mean /= static_cast<double>(m.n);
    for (double x : xs) m.variance += (x - m.mean) * (x - m.mean);
    m.variance /= static_cast<double>(m.n - 1);
    return m;
}

/// Standard error of a sample variance for normal-like data.
inline double variance_stderr(const Moments& m) { return m.variance * std::sqrt(2.0 / static_cast<double>(m.n - 1)); }

}  // namespace tslab::testing
