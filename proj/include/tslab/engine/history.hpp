#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace tslab::engine {

/// Append-only record of (action, observation) pairs; entry i is period i+1.
template <class Action, class Observation>
class History {
public:
    using Entry = std::pair<Action, Observation>;

    void append(Action a, Observation o) { entries_.emplace_back(std::move(a), std::move(o)); }

    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }
    const Entry& operator[](std::size_t i) const { return entries_[i]; }
    const Entry& at(std::size_t i) const { return entries_.at(i); }

    auto begin() const noexcept { return entries_.begin(); }
    auto end() const noexcept { return entries_.end(); }

private:
    std::vector<Entry> entries_;
};

}  // namespace tslab::engine
