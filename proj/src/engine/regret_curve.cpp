#include "tslab/engine/regret_curve.hpp"

#include "tslab/errors.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

namespace tslab::engine {

double RegretCurve::window_mean(std::size_t first, std::size_t last) const {
    if (first < 1 || last < first || last > mean_regret.size()) {
        throw IndexError("window_mean: window [" + std::to_string(first) + ", " + std::to_string(last) +
                         "] outside 1.." + std::to_string(mean_regret.size()));
    }
    double s = 0.0;
    for (std::size_t t = first; t <= last; ++t) s += mean_regret[t - 1];
    return s / static_cast<double>(last - first + 1);
}

std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string format_double(double x) {
    std::array<char, 64> buf{};
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return std::string(buf.data(), res.ptr);
}

namespace {

double parse_double(const std::string& field, const std::filesystem::path& path, std::size_t line) {
    double v = 0.0;
    auto res = std::from_chars(field.data(), field.data() + field.size(), v);
    if (res.ec != std::errc() || res.ptr != field.data() + field.size()) {
        throw IoError(path.string() + ":" + std::to_string(line) + ": bad number '" + field + "'");
    }
    return v;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace

void write_regret_csv(const RegretCurve& curve, const std::filesystem::path& path) {
    if (curve.standard_error.size() != curve.mean_regret.size()) {
        throw ShapeError("write_regret_csv: mean and stderr lengths differ");
    }
    auto out = open_out(path);
    out << "period,mean_regret,stderr,cumulative\n";
    double cumulative = 0.0;
    for (std::size_t t = 0; t < curve.mean_regret.size(); ++t) {
        cumulative += curve.mean_regret[t];
        out << (t + 1) << ',' << format_double(curve.mean_regret[t]) << ','
            << format_double(curve.standard_error[t]) << ',' << format_double(cumulative) << '\n';
    }
    finish(out, path);
}

RegretCurve read_regret_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string() + " for reading");
    std::string line;
    if (!std::getline(in, line) || line != "period,mean_regret,stderr,cumulative") {
        throw IoError(path.string() + ": missing or unexpected header");
    }
    RegretCurve curve;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream row(line);
        std::array<std::string, 4> f;
        for (auto& field : f) {
            if (!std::getline(row, field, ',')) throw IoError(path.string() + ":" + std::to_string(lineno) + ": short row");
        }
        const double period = parse_double(f[0], path, lineno);
        if (period != static_cast<double>(curve.mean_regret.size() + 1)) {
            throw IoError(path.string() + ":" + std::to_string(lineno) + ": periods out of sequence");
        }
        curve.mean_regret.push_back(parse_double(f[1], path, lineno));
        curve.standard_error.push_back(parse_double(f[2], path, lineno));
        curve.cumulative_regret = parse_double(f[3], path, lineno);
    }
    curve.metadata.horizon = curve.mean_regret.size();
    return curve;
}

void write_series_csv(const SeriesSummary& series, const std::filesystem::path& path) {
    if (series.standard_error.size() != series.mean.size()) {
        throw ShapeError("write_series_csv: mean and stderr lengths differ");
    }
    auto out = open_out(path);
    out << "period,mean,stderr\n";
    for (std::size_t t = 0; t < series.mean.size(); ++t) {
        out << (t + 1) << ',' << format_double(series.mean[t]) << ',' << format_double(series.standard_error[t])
            << '\n';
    }
    finish(out, path);
}

}  // namespace tslab::engine
