#pragma once

#include "tslab/engine/regret_curve.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace tslab::cli {

/// Scale and seed of one preset run after applying command-line overrides.
struct RunSettings {
    std::size_t sims = 0;
    std::size_t horizon = 0;
    std::uint64_t seed = 0;
    std::size_t threads = 1;
    /// Subset of the preset's agents to run; empty runs all of them.
    std::vector<std::string> agents;

    bool includes(const std::string& agent) const;
};

struct AgentCurve {
    std::string agent;
    engine::RegretCurve curve;
};

struct Preset {
    std::string name;
    /// Figure or table reproduced by the preset.
    std::string figure;
    std::string summary;
    /// Fixed problem parameters, in display order.
    std::vector<std::pair<std::string, std::string>> parameters;
    std::vector<std::string> agents;
    std::size_t horizon = 0;
    /// "periods" or "episodes".
    std::string horizon_unit = "periods";
    std::size_t desk_sims = 1000;
    std::size_t paper_sims = 10000;
    std::uint64_t seed = 1;
    std::function<std::vector<AgentCurve>(const RunSettings&)> run;
};

const std::vector<Preset>& catalog();

/// nullptr when no preset has this name.
const Preset* find_preset(const std::string& name);

/// Defaults of `preset` with any nonzero override applied.
/// Throws DomainError for agent names the preset does not define.
RunSettings resolve(const Preset& preset, std::size_t sims, std::size_t horizon, std::uint64_t seed,
                    bool seed_given, bool paper_scale, std::size_t threads,
                    std::vector<std::string> agents = {});

/// `key=value` lines describing a preset and its defaults.
std::string describe(const Preset& preset);

/// Manifest text for a finished run.
std::string manifest(const Preset& preset, const RunSettings& settings, bool paper_scale,
                     const std::vector<AgentCurve>& curves);

/// Runs the preset and writes `<out>/<preset>/` atomically: nothing is left
/// behind if any curve fails.
void run_to_directory(const Preset& preset, const RunSettings& settings, bool paper_scale, const std::string& out);

}  // namespace tslab::cli
