#include "tslab/cascade/cascade.hpp"

#include "tslab/errors.hpp"
#include "tslab/stats/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace tslab::cascade {

namespace {

void check_distinct(const ItemList& x, std::size_t items) {
    std::vector<char> seen(items, 0);
    for (std::size_t k : x) {
        if (k >= items) throw IndexError("item " + std::to_string(k) + " out of range");
        if (seen[k]) throw DomainError("item " + std::to_string(k) + " listed twice");
        seen[k] = 1;
    }
}

}  // namespace

double list_attraction(const ItemList& x, const std::vector<double>& theta) {
    check_distinct(x, theta.size());
    double miss = 1.0;
    for (std::size_t k : x) miss *= 1.0 - theta[k];
    return 1.0 - miss;
}

int simulate_cascade(const ItemList& x, const std::vector<double>& theta, stats::RngStream& rng) {
    std::vector<char> w(theta.size());
    for (std::size_t k = 0; k < theta.size(); ++k) w[k] = rng.uniform01() < theta[k];
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (w[x[j]]) return static_cast<int>(j + 1);
    }
    return kNoClick;
}

ItemStats ItemStats::uniform(std::size_t items, double alpha0, double beta0) {
    if (!(alpha0 > 0.0) || !(beta0 > 0.0)) throw DomainError("ItemStats: prior counts must be positive");
    return {std::vector<double>(items, alpha0), std::vector<double>(items, beta0)};
}

void cascade_update(ItemStats& stats, const ItemList& x, int y) {
    if (y < 1) throw DomainError("cascade_update: click position must be at least 1");
    const std::size_t examined = y == kNoClick ? x.size() : std::min(static_cast<std::size_t>(y), x.size());
    for (std::size_t j = 1; j <= examined; ++j) {
        const std::size_t k = x[j - 1];
        if (k >= stats.size()) throw IndexError("cascade_update: item out of range");
        if (static_cast<int>(j) == y) stats.alpha[k] += 1.0;
        if (static_cast<int>(j) < y) stats.beta[k] += 1.0;
    }
}

ItemList top_items(const std::vector<double>& score, std::size_t display) {
    if (display > score.size()) throw DomainError("top_items: display exceeds item count");
    ItemList idx(score.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    auto better = [&](std::size_t a, std::size_t b) { return score[a] > score[b] || (score[a] == score[b] && a < b); };
    std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(display), idx.end(), better);
    idx.resize(display);
    return idx;
}

ItemList cascade_ts_select(const ItemStats& stats, std::size_t display, stats::RngStream& rng) {
    std::vector<double> sample(stats.size());
    for (std::size_t k = 0; k < sample.size(); ++k) sample[k] = stats::sample_beta(stats.alpha[k], stats.beta[k], rng);
    return top_items(sample, display);
}

std::vector<double> ucb_scores(const ItemStats& stats, std::size_t t, double optimism) {
    if (t < 1) throw DomainError("ucb_scores: period must be at least 1");
    if (!(optimism >= 0.0)) throw DomainError("ucb_scores: optimism must be nonnegative");
    const double log_t = std::log(static_cast<double>(t));
    std::vector<double> u(stats.size());
    for (std::size_t k = 0; k < u.size(); ++k) {
        const double n = stats.alpha[k] + stats.beta[k];
        u[k] = std::clamp(stats.alpha[k] / n + optimism * std::sqrt(1.5 * log_t / n), 0.0, 1.0);
    }
    return u;
}

ItemList cascade_ucb_select(const ItemStats& stats, std::size_t display, std::size_t t, double optimism) {
    return top_items(ucb_scores(stats, t, optimism), display);
}

double cascade_regret(const ItemList& x, const ItemList& x_star, const std::vector<double>& theta) {
    return list_attraction(x_star, theta) - list_attraction(x, theta);
}

bool ListSet::contains(const ItemList& x) const {
    if (x.size() != display) return false;
    std::vector<char> seen(items, 0);
    for (std::size_t k : x) {
        if (k >= items || seen[k]) return false;
        seen[k] = 1;
    }
    return true;
}

CascadeEnv::CascadeEnv(std::vector<double> theta, std::size_t display) : theta_(std::move(theta)), display_(display) {
    if (display_ == 0 || display_ > theta_.size()) throw DomainError("CascadeEnv: need 1 ≤ J ≤ K");
    for (double p : theta_) {
        if (!(p >= 0.0 && p <= 1.0)) throw DomainError("CascadeEnv: attraction probabilities must lie in [0,1]");
    }
    best_ = top_items(theta_, display_);
    best_value_ = list_attraction(best_, theta_);
}

int CascadeEnv::step(std::size_t, const ItemList& x, stats::RngStream& rng) { return simulate_cascade(x, theta_, rng); }

double CascadeEnv::per_period_regret(std::size_t, const ItemList& x) const {
    return best_value_ - list_attraction(x, theta_);
}

std::vector<double> sample_attractions(std::size_t items, double a, double b, stats::RngStream& rng) {
    std::vector<double> theta(items);
    for (double& p : theta) p = stats::sample_beta(a, b, rng);
    return theta;
}

CascadeAgent::CascadeAgent(ItemStats prior, std::size_t display, CascadeRule rule, double optimism)
    : stats_(std::move(prior)), display_(display), rule_(rule), optimism_(optimism) {
    if (display_ == 0 || display_ > stats_.size()) throw DomainError("CascadeAgent: need 1 ≤ J ≤ K");
    if (!(optimism >= 0.0)) throw DomainError("CascadeAgent: optimism must be nonnegative");
}

ItemList CascadeAgent::select_action(std::size_t t, const ListSet&, stats::RngStream& rng) {
    if (rule_ == CascadeRule::Thompson) return cascade_ts_select(stats_, display_, rng);
    return cascade_ucb_select(stats_, display_, t, optimism_);
}

void CascadeAgent::observe(std::size_t, const ItemList& x, const int& y) { cascade_update(stats_, x, y); }

}  // namespace tslab::cascade
