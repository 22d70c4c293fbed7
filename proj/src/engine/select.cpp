#include "tslab/engine/select.hpp"

#include "tslab/errors.hpp"

namespace tslab::engine {

namespace {

template <class Better>
std::size_t pick(const std::vector<double>& values, stats::RngStream& rng, Better better) {
    if (values.empty()) throw ShapeError("argmax: empty value vector");
    std::size_t best = 0;
    std::size_t ties = 1;
    std::vector<std::size_t> tied;
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (better(values[i], values[best])) {
            best = i;
            ties = 1;
            tied.clear();
        } else if (values[i] == values[best]) {
            if (ties == 1) tied.push_back(best);
            tied.push_back(i);
            ++ties;
        }
    }
    if (ties == 1) return best;
    return tied[rng.uniform_index(tied.size())];
}

}  // namespace

std::size_t argmax_random_tie(const std::vector<double>& values, stats::RngStream& rng) {
    return pick(values, rng, [](double a, double b) { return a > b; });
}

std::size_t argmin_random_tie(const std::vector<double>& values, stats::RngStream& rng) {
    return pick(values, rng, [](double a, double b) { return a < b; });
}

}  // namespace tslab::engine
