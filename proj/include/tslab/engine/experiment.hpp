#pragma once

#include "tslab/engine/regret_curve.hpp"
#include "tslab/engine/simulation.hpp"
#include "tslab/errors.hpp"
#include "tslab/stats/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace tslab::engine {

template <class A, class O, class Set>
struct ProblemTraits {
    using Action = A;
    using Observation = O;
    using ActionSet = Set;
};

/// Environment side of the decision loop. It holds the true parameters and
/// is the only party that computes regret.
template <class Traits>
class Environment {
public:
    using Action = typename Traits::Action;
    using Observation = typename Traits::Observation;
    using ActionSet = typename Traits::ActionSet;

    virtual ~Environment() = default;

    /// Called at the start of every period before the action set is queried;
    /// drifting environments evolve their parameters here.
    virtual void begin_period(std::size_t /*t*/, stats::RngStream& /*rng*/) {}
    virtual ActionSet admissible_actions(std::size_t t) const = 0;
    virtual Observation step(std::size_t t, const Action& a, stats::RngStream& rng) = 0;
    /// Expected-reward gap of `a` against the best admissible action in period t.
    virtual double per_period_regret(std::size_t t, const Action& a) const = 0;
};

template <class Traits>
class Agent {
public:
    using Action = typename Traits::Action;
    using Observation = typename Traits::Observation;
    using ActionSet = typename Traits::ActionSet;

    virtual ~Agent() = default;

    virtual Action select_action(std::size_t t, const ActionSet& admissible, stats::RngStream& rng) = 0;
    virtual void observe(std::size_t t, const Action& a, const Observation& o) = 0;
};

template <class Traits>
struct StepRecord {
    std::size_t t;
    const typename Traits::Action& action;
    const typename Traits::Observation& observation;
    double regret;
    const Environment<Traits>& environment;
};

/// Per-simulation auxiliary measurement, one value per period.
template <class Traits>
class Probe {
public:
    virtual ~Probe() = default;
    virtual double record(const StepRecord<Traits>& step) = 0;
};

template <class Traits>
struct ProbeSpec {
    std::string name;
    std::function<std::unique_ptr<Probe<Traits>>()> make;
};

/// Probe wrapping a stateless function of the step.
template <class Traits>
ProbeSpec<Traits> make_probe(std::string name, std::function<double(const StepRecord<Traits>&)> fn) {
    struct Fn final : Probe<Traits> {
        explicit Fn(std::function<double(const StepRecord<Traits>&)> f) : f_(std::move(f)) {}
        double record(const StepRecord<Traits>& s) override { return f_(s); }
        std::function<double(const StepRecord<Traits>&)> f_;
    };
    return {std::move(name), [fn]() -> std::unique_ptr<Probe<Traits>> { return std::make_unique<Fn>(fn); }};
}

template <class Traits>
struct ExperimentConfig {
    std::string label;
    std::size_t horizon = 1;
    std::size_t num_simulations = 1;
    std::uint64_t base_seed = 0;
    std::size_t threads = 1;
    /// Receives a per-simulation initialization stream, so environments may
    /// draw their true parameters from a prior.
    std::function<std::unique_ptr<Environment<Traits>>(stats::RngStream& init)> make_environment;
    std::function<std::unique_ptr<Agent<Traits>>(stats::RngStream& init)> make_agent;
    std::vector<ProbeSpec<Traits>> probes;
    /// Free-form description of every parameter; enters the config hash.
    std::string fingerprint;
};

/// Stream ids derived from a simulation's stream.
enum SimulationStream : std::uint64_t { kEnvironmentStream = 0, kAgentStream = 1, kEnvironmentInit = 2, kAgentInit = 3 };

inline std::uint64_t config_hash(const std::string& label, const std::string& fingerprint, std::size_t horizon,
                                 std::size_t sims, std::uint64_t seed) {
    return fnv1a(label + "|" + fingerprint + "|T=" + std::to_string(horizon) + "|n=" + std::to_string(sims) +
                 "|seed=" + std::to_string(seed));
}

/// Runs config.num_simulations episodes of config.horizon periods.
/// Simulation i draws all randomness from RngStream(base_seed, i).
template <class Traits>
RegretCurve run_experiment(const ExperimentConfig<Traits>& config) {
    if (config.horizon < 1) throw DomainError("run_experiment: horizon must be at least 1");
    if (config.num_simulations < 1) throw DomainError("run_experiment: num_simulations must be at least 1");
    if (!config.make_environment || !config.make_agent) {
        throw DomainError("run_experiment: environment and agent factories are required");
    }
    const std::size_t num_series = 1 + config.probes.size();

    auto simulate = [&](std::size_t sim, std::vector<std::vector<double>>& series) {
        const stats::RngStream root(config.base_seed, sim);
        stats::RngStream env_rng = root.split(kEnvironmentStream);
        stats::RngStream agent_rng = root.split(kAgentStream);
        stats::RngStream env_init = root.split(kEnvironmentInit);
        stats::RngStream agent_init = root.split(kAgentInit);
        auto env = config.make_environment(env_init);
        auto agent = config.make_agent(agent_init);
        std::vector<std::unique_ptr<Probe<Traits>>> probes;
        probes.reserve(config.probes.size());
        for (const auto& p : config.probes) probes.push_back(p.make());

        for (std::size_t t = 1; t <= config.horizon; ++t) {
            env->begin_period(t, env_rng);
            const auto admissible = env->admissible_actions(t);
            const auto action = agent->select_action(t, admissible, agent_rng);
            if (!admissible.contains(action)) {
                throw ContractViolation("agent '" + config.label + "' chose an inadmissible action in simulation " +
                                        std::to_string(sim) + " at period " + std::to_string(t));
            }
            const double regret = env->per_period_regret(t, action);
            const auto obs = env->step(t, action, env_rng);
            agent->observe(t, action, obs);
            series[0][t - 1] = regret;
            const StepRecord<Traits> rec{t, action, obs, regret, *env};
            for (std::size_t k = 0; k < probes.size(); ++k) series[k + 1][t - 1] = probes[k]->record(rec);
        }
    };

    SimulationSummary summary =
        run_simulations(config.num_simulations, config.horizon, num_series, config.threads, simulate);

    RegretCurve curve;
    curve.mean_regret = std::move(summary.series[0].mean);
    curve.standard_error = std::move(summary.series[0].standard_error);
    for (double m : curve.mean_regret) curve.cumulative_regret += m;
    curve.cumulative_stderr = summary.total_stderr;
    curve.metadata.label = config.label;
    curve.metadata.seed = config.base_seed;
    curve.metadata.num_simulations = config.num_simulations;
    curve.metadata.horizon = config.horizon;
    curve.metadata.config_hash =
        config_hash(config.label, config.fingerprint, config.horizon, config.num_simulations, config.base_seed);
    for (std::size_t k = 0; k < config.probes.size(); ++k) {
        curve.probes[config.probes[k].name] = std::move(summary.series[k + 1]);
    }
    return curve;
}

/// Regret of each action in sequence, as judged by the environment.
template <class Traits>
std::vector<double> per_period_regret_series(Environment<Traits>& env,
                                             const std::vector<typename Traits::Action>& actions,
                                             stats::RngStream& rng) {
    std::vector<double> out;
    out.reserve(actions.size());
    for (std::size_t i = 0; i < actions.size(); ++i) {
        const std::size_t t = i + 1;
        env.begin_period(t, rng);
        out.push_back(env.per_period_regret(t, actions[i]));
    }
    return out;
}

}  // namespace tslab::engine
