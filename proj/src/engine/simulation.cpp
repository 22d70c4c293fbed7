#include "tslab/engine/simulation.hpp"

#include "tslab/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

namespace tslab::engine {

void RunningMoments::add(double x) noexcept {
    ++n_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(n_);
    m2_ += delta * (x - mean_);
}

double RunningMoments::variance() const noexcept {
    return n_ < 2 ? 0.0 : std::max(0.0, m2_ / static_cast<double>(n_ - 1));
}

double RunningMoments::standard_error() const noexcept {
    return n_ == 0 ? 0.0 : std::sqrt(variance() / static_cast<double>(n_));
}

SimulationSummary run_simulations(std::size_t num_sims, std::size_t horizon, std::size_t num_series,
                                  std::size_t threads, const SimulationFn& fn) {
    if (num_sims == 0) throw DomainError("run_simulations: num_simulations must be at least 1");
    if (horizon == 0) throw DomainError("run_simulations: horizon must be at least 1");
    if (num_series == 0) throw DomainError("run_simulations: need at least one series");
    threads = std::max<std::size_t>(1, threads);

    std::vector<std::vector<RunningMoments>> acc(num_series, std::vector<RunningMoments>(horizon));
    RunningMoments totals;

    const std::size_t chunk = std::min(num_sims, threads * 8);
    std::vector<std::vector<std::vector<double>>> buffers(
        chunk, std::vector<std::vector<double>>(num_series, std::vector<double>(horizon, 0.0)));
    std::vector<std::exception_ptr> errors(chunk);

    for (std::size_t base = 0; base < num_sims; base += chunk) {
        const std::size_t count = std::min(chunk, num_sims - base);
        std::atomic<std::size_t> next{0};
        auto worker = [&]() {
            for (std::size_t k = next.fetch_add(1); k < count; k = next.fetch_add(1)) {
                try {
                    for (auto& s : buffers[k]) std::fill(s.begin(), s.end(), 0.0);
                    fn(base + k, buffers[k]);
                } catch (...) {
                    errors[k] = std::current_exception();
                }
            }
        };
        const std::size_t nworkers = std::min(threads, count);
        if (nworkers <= 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            pool.reserve(nworkers);
            for (std::size_t w = 0; w < nworkers; ++w) pool.emplace_back(worker);
            for (auto& th : pool) th.join();
        }
        for (std::size_t k = 0; k < count; ++k) {
            if (errors[k]) std::rethrow_exception(errors[k]);
        }
        for (std::size_t k = 0; k < count; ++k) {
            double total = 0.0;
            for (std::size_t s = 0; s < num_series; ++s) {
                for (std::size_t t = 0; t < horizon; ++t) acc[s][t].add(buffers[k][s][t]);
            }
            for (std::size_t t = 0; t < horizon; ++t) total += buffers[k][0][t];
            totals.add(total);
        }
    }

    SimulationSummary out;
    out.series.resize(num_series);
    for (std::size_t s = 0; s < num_series; ++s) {
        out.series[s].mean.resize(horizon);
        out.series[s].standard_error.resize(horizon);
        for (std::size_t t = 0; t < horizon; ++t) {
            out.series[s].mean[t] = acc[s][t].mean();
            out.series[s].standard_error[t] = acc[s][t].standard_error();
        }
    }
    out.total_stderr = totals.standard_error();
    return out;
}

}  // namespace tslab::engine
