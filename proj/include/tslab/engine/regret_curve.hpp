#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace tslab::engine {

struct CurveMetadata {
    std::string label;
    std::uint64_t config_hash = 0;
    std::uint64_t seed = 0;
    std::size_t num_simulations = 0;
    std::size_t horizon = 0;
};

/// Per-period mean and standard error of an auxiliary per-simulation series.
struct SeriesSummary {
    std::vector<double> mean;
    std::vector<double> standard_error;
};

/// Per-period mean regret across simulations with standard errors.
struct RegretCurve {
    std::vector<double> mean_regret;
    std::vector<double> standard_error;
    /// Sum of the per-period means.
    double cumulative_regret = 0.0;
    /// Standard error of the per-simulation cumulative regret.
    double cumulative_stderr = 0.0;
    CurveMetadata metadata;
    std::map<std::string, SeriesSummary> probes;

    std::size_t horizon() const noexcept { return mean_regret.size(); }
    /// Mean of the per-period means over periods [first, last], 1-based inclusive.
    double window_mean(std::size_t first, std::size_t last) const;
};

/// FNV-1a 64-bit hash.
std::uint64_t fnv1a(const std::string& text);

/// Shortest decimal text that parses back to exactly the same double.
std::string format_double(double x);

/// Header `period,mean_regret,stderr,cumulative`, one row per period.
void write_regret_csv(const RegretCurve& curve, const std::filesystem::path& path);
/// Inverse of write_regret_csv; metadata is not stored in the file.
RegretCurve read_regret_csv(const std::filesystem::path& path);

/// Header `period,mean,stderr`.
void write_series_csv(const SeriesSummary& series, const std::filesystem::path& path);

}  // namespace tslab::engine
