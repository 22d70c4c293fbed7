#pragma once

#include "tslab/engine/experiment.hpp"

#include <climits>
#include <cstddef>
#include <vector>

namespace tslab::cascade {

/// Ordered list of distinct item ids.
using ItemList = std::vector<std::size_t>;

/// Position marker for a period without a click.
inline constexpr int kNoClick = INT_MAX;

/// h(x, θ′) = 1 − Π_j (1 − θ′_{x_j}). Throws DomainError on duplicate items.
double list_attraction(const ItemList& x, const std::vector<double>& theta);

/// Draws w_k ~ Bern(θ_k) for every item and returns the 1-based position of
/// the first attractive listed item, or kNoClick.
int simulate_cascade(const ItemList& x, const std::vector<double>& theta, stats::RngStream& rng);

inline int cascade_reward(int y, std::size_t display) { return y != kNoClick && y <= static_cast<int>(display); }

/// Click and view counts per item, seeded with prior pseudo-counts.
struct ItemStats {
    std::vector<double> alpha;
    std::vector<double> beta;

    static ItemStats uniform(std::size_t items, double alpha0, double beta0);
    std::size_t size() const noexcept { return alpha.size(); }
};

/// For j = 1..min(y, J): α_{x_j} += 1(j = y), β_{x_j} += 1(j < y).
void cascade_update(ItemStats& stats, const ItemList& x, int y);

/// The `display` items with largest score, in descending order of score;
/// equal scores are ordered by item id.
ItemList top_items(const std::vector<double>& score, std::size_t display);

/// θ̂_k ~ Beta(α_k, β_k); the top-J items under θ̂.
ItemList cascade_ts_select(const ItemStats& stats, std::size_t display, stats::RngStream& rng);

/// U_t(k) = α_k/(α_k+β_k) + c·√(1.5 ln t/(α_k+β_k)) clipped to [0,1].
std::vector<double> ucb_scores(const ItemStats& stats, std::size_t t, double optimism);

ItemList cascade_ucb_select(const ItemStats& stats, std::size_t display, std::size_t t, double optimism);

/// h(x*, θ) − h(x, θ) with x* the top-J items under θ.
double cascade_regret(const ItemList& x, const ItemList& x_star, const std::vector<double>& theta);

/// Lists of exactly J distinct items drawn from K.
struct ListSet {
    std::size_t items = 0;
    std::size_t display = 0;
    bool contains(const ItemList& x) const;
};

using CascadeTraits = engine::ProblemTraits<ItemList, int, ListSet>;

class CascadeEnv : public engine::Environment<CascadeTraits> {
public:
    CascadeEnv(std::vector<double> theta, std::size_t display);

    ListSet admissible_actions(std::size_t) const override { return {theta_.size(), display_}; }
    int step(std::size_t t, const ItemList& x, stats::RngStream& rng) override;
    double per_period_regret(std::size_t t, const ItemList& x) const override;

    const std::vector<double>& theta() const noexcept { return theta_; }
    const ItemList& optimal_list() const noexcept { return best_; }

private:
    std::vector<double> theta_;
    std::size_t display_;
    ItemList best_;
    double best_value_;
};

/// θ_k drawn independently from Beta(a, b).
std::vector<double> sample_attractions(std::size_t items, double a, double b, stats::RngStream& rng);

enum class CascadeRule { Thompson, Ucb };

/// CascadeTS, or CascadeUCB with degree of optimism c (c = 1 is UCB1, c = 0 greedy).
class CascadeAgent : public engine::Agent<CascadeTraits> {
public:
    CascadeAgent(ItemStats prior, std::size_t display, CascadeRule rule, double optimism = 1.0);

    ItemList select_action(std::size_t t, const ListSet& admissible, stats::RngStream& rng) override;
    void observe(std::size_t t, const ItemList& x, const int& y) override;

    const ItemStats& stats() const noexcept { return stats_; }

private:
    ItemStats stats_;
    std::size_t display_;
    CascadeRule rule_;
    double optimism_;
};

}  // namespace tslab::cascade
