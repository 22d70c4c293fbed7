#include "tslab/mdp/mdp.hpp"

#include "tslab/engine/finite_belief.hpp"
#include "tslab/engine/simulation.hpp"
#include "tslab/errors.hpp"
#include "tslab/stats/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace tslab::mdp {

namespace {

constexpr double kTieTolerance = 1e-12;

std::size_t sample_categorical(const std::vector<double>& p, stats::RngStream& rng) {
    const double u = rng.uniform01();
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        acc += p[i];
        if (u < acc) return i;
    }
    // Rounding left u above the running total: take the last supported index.
    for (std::size_t i = p.size(); i-- > 0;) {
        if (p[i] > 0.0) return i;
    }
    throw NumericalError("sample_categorical: distribution has no mass");
}

void check_sa(std::size_t s, std::size_t a, std::size_t states, std::size_t actions) {
    if (s >= states || a >= actions) throw IndexError("state or action out of range");
}

}  // namespace

void FiniteHorizonMdp::validate() const {
    if (horizon < 1) throw DomainError("FiniteHorizonMdp: horizon must be at least 1");
    if (states == 0 || actions == 0) throw DomainError("FiniteHorizonMdp: needs at least one state and action");
    if (transition.size() != states || reward.size() != states || initial.size() != states) {
        throw ShapeError("FiniteHorizonMdp: tables must have one row per state");
    }
    auto check_distribution = [&](const std::vector<double>& p, const char* what) {
        if (p.size() != states) throw ShapeError(std::string("FiniteHorizonMdp: ") + what + " has wrong length");
        double total = 0.0;
        for (double v : p) {
            if (!(v >= 0.0)) throw DomainError(std::string("FiniteHorizonMdp: negative probability in ") + what);
            total += v;
        }
        if (std::abs(total - 1.0) > 1e-9) throw DomainError(std::string("FiniteHorizonMdp: ") + what + " does not sum to 1");
    };
    check_distribution(initial, "initial distribution");
    for (std::size_t s = 0; s < states; ++s) {
        if (transition[s].size() != actions || reward[s].size() != actions) {
            throw ShapeError("FiniteHorizonMdp: tables must have one entry per action");
        }
        for (std::size_t a = 0; a < actions; ++a) check_distribution(transition[s][a], "transition row");
    }
}

Solution value_iteration(const FiniteHorizonMdp& mdp, TieBreak ties) {
    mdp.validate();
    if (ties.preferred && ties.preferred->size() != mdp.states) {
        throw ShapeError("value_iteration: one preferred action per state required");
    }
    Solution out{Policy(mdp.states, mdp.horizon),
                 std::vector<std::vector<double>>(mdp.horizon + 1, std::vector<double>(mdp.states, 0.0))};
    std::vector<double> q(mdp.actions);
    std::vector<std::size_t> best;
    for (std::size_t h = mdp.horizon; h-- > 0;) {
        const auto& next = out.value[h + 1];
        for (std::size_t s = 0; s < mdp.states; ++s) {
            double top = -std::numeric_limits<double>::infinity();
            for (std::size_t a = 0; a < mdp.actions; ++a) {
                const auto& p = mdp.transition[s][a];
                q[a] = mdp.reward[s][a] + std::inner_product(p.begin(), p.end(), next.begin(), 0.0);
                top = std::max(top, q[a]);
            }
            best.clear();
            for (std::size_t a = 0; a < mdp.actions; ++a) {
                if (q[a] >= top - kTieTolerance * std::max(1.0, std::abs(top))) best.push_back(a);
            }
            std::size_t choice = best.front();
            if (best.size() > 1) {
                const std::size_t pref = ties.preferred ? (*ties.preferred)[s] : mdp.actions;
                if (std::find(best.begin(), best.end(), pref) != best.end()) {
                    choice = pref;
                } else if (ties.rng) {
                    choice = best[ties.rng->uniform_index(best.size())];
                }
            }
            out.policy.set(s, h, choice);
            out.value[h][s] = q[choice];
        }
    }
    return out;
}

std::vector<std::vector<double>> evaluate_policy(const FiniteHorizonMdp& mdp, const Policy& policy) {
    mdp.validate();
    if (policy.states() != mdp.states || policy.horizon() != mdp.horizon) {
        throw ShapeError("evaluate_policy: policy does not match the MDP");
    }
    std::vector<std::vector<double>> v(mdp.horizon + 1, std::vector<double>(mdp.states, 0.0));
    for (std::size_t h = mdp.horizon; h-- > 0;) {
        for (std::size_t s = 0; s < mdp.states; ++s) {
            const std::size_t a = policy.at(s, h);
            if (a >= mdp.actions) throw IndexError("evaluate_policy: action out of range");
            const auto& p = mdp.transition[s][a];
            v[h][s] = mdp.reward[s][a] + std::inner_product(p.begin(), p.end(), v[h + 1].begin(), 0.0);
        }
    }
    return v;
}

double initial_value(const FiniteHorizonMdp& mdp, const std::vector<std::vector<double>>& value) {
    return std::inner_product(mdp.initial.begin(), mdp.initial.end(), value.at(0).begin(), 0.0);
}

DirichletGaussianPosterior::DirichletGaussianPosterior(std::size_t states, std::size_t actions, std::size_t horizon,
                                                       std::vector<double> initial, double alpha0,
                                                       double reward_mean0, double reward_var0, double noise_var)
    : states_(states),
      actions_(actions),
      horizon_(horizon),
      initial_(std::move(initial)),
      alpha_(states, std::vector<std::vector<double>>(actions, std::vector<double>(states, alpha0))),
      mean_(states, std::vector<double>(actions, reward_mean0)),
      var_(states, std::vector<double>(actions, reward_var0)),
      noise_var_(noise_var) {
    if (!(alpha0 > 0.0)) throw DomainError("DirichletGaussianPosterior: pseudo-counts must be positive");
    if (!(reward_var0 > 0.0) || !(noise_var > 0.0)) {
        throw DomainError("DirichletGaussianPosterior: variances must be positive");
    }
    if (initial_.size() != states) throw ShapeError("DirichletGaussianPosterior: initial distribution length");
}

void DirichletGaussianPosterior::dirichlet_update(std::size_t s, std::size_t a, std::size_t s_next) {
    check_sa(s, a, states_, actions_);
    if (s_next >= states_) throw IndexError("dirichlet_update: successor out of range");
    alpha_[s][a][s_next] += 1.0;
}

void DirichletGaussianPosterior::reward_update(std::size_t s, std::size_t a, double r) {
    check_sa(s, a, states_, actions_);
    const double precision = 1.0 / var_[s][a] + 1.0 / noise_var_;
    mean_[s][a] = (mean_[s][a] / var_[s][a] + r / noise_var_) / precision;
    var_[s][a] = 1.0 / precision;
}

void DirichletGaussianPosterior::observe(std::size_t s, std::size_t a, double r, std::size_t s_next) {
    dirichlet_update(s, a, s_next);
    reward_update(s, a, r);
}

FiniteHorizonMdp DirichletGaussianPosterior::sample(stats::RngStream& rng) const {
    FiniteHorizonMdp m{states_, actions_, horizon_, {}, {}, initial_};
    m.transition.resize(states_);
    m.reward.assign(states_, std::vector<double>(actions_));
    for (std::size_t s = 0; s < states_; ++s) {
        m.transition[s].resize(actions_);
        for (std::size_t a = 0; a < actions_; ++a) {
            m.transition[s][a] = stats::sample_dirichlet(alpha_[s][a], rng);
            m.reward[s][a] = stats::sample_normal(mean_[s][a], var_[s][a], rng);
        }
    }
    return m;
}

FiniteHorizonMdp DirichletGaussianPosterior::mean() const {
    FiniteHorizonMdp m{states_, actions_, horizon_, {}, mean_, initial_};
    m.transition.resize(states_);
    for (std::size_t s = 0; s < states_; ++s) {
        m.transition[s].resize(actions_);
        for (std::size_t a = 0; a < actions_; ++a) {
            const auto& al = alpha_[s][a];
            const double total = std::accumulate(al.begin(), al.end(), 0.0);
            m.transition[s][a].resize(states_);
            for (std::size_t k = 0; k < states_; ++k) m.transition[s][a][k] = al[k] / total;
        }
    }
    return m;
}

Policy DirichletGaussianPosterior::sample_policy(stats::RngStream& rng) const {
    const FiniteHorizonMdp m = sample(rng);
    return value_iteration(m, {&rng, nullptr}).policy;
}

HypothesisPosterior::HypothesisPosterior(std::vector<Hypothesis> hypotheses, std::vector<double> prior)
    : hypotheses_(std::move(hypotheses)) {
    if (hypotheses_.empty() || prior.size() != hypotheses_.size()) {
        throw ShapeError("HypothesisPosterior: one prior weight per hypothesis required");
    }
    prob_ = engine::FiniteBelief(std::move(prior)).probabilities();
    for (const auto& h : hypotheses_) {
        const auto* pref = h.preferred.empty() ? nullptr : &h.preferred;
        policies_.push_back(value_iteration(h.mdp, {nullptr, pref}).policy);
    }
}

Policy HypothesisPosterior::sample_policy(stats::RngStream& rng) const {
    return policies_[sample_categorical(prob_, rng)];
}

void HypothesisPosterior::observe(std::size_t s, std::size_t a, double r, std::size_t s_next) {
    std::vector<double> likelihood(hypotheses_.size());
    for (std::size_t u = 0; u < hypotheses_.size(); ++u) {
        const auto& m = hypotheses_[u].mdp;
        check_sa(s, a, m.states, m.actions);
        const bool reward_ok = std::abs(m.reward[s][a] - r) <= 1e-9;
        likelihood[u] = reward_ok ? m.transition[s][a].at(s_next) : 0.0;
    }
    engine::FiniteBelief belief(prob_);
    belief.bayes_update(likelihood);
    prob_ = belief.probabilities();
}

void PsrlAgent::begin_episode(stats::RngStream& rng) {
    policy_ = std::make_unique<Policy>(posterior_->sample_policy(rng));
}

std::size_t PsrlAgent::act(std::size_t s, std::size_t h, stats::RngStream&) {
    if (!policy_) throw ContractViolation("PsrlAgent: act called before begin_episode");
    return policy_->at(s, h);
}

void PsrlAgent::observe(std::size_t s, std::size_t a, double r, std::size_t s_next) {
    posterior_->observe(s, a, r, s_next);
}

std::size_t PerTimestepTsAgent::act(std::size_t s, std::size_t h, stats::RngStream& rng) {
    return posterior_->sample_policy(rng).at(s, h);
}

void PerTimestepTsAgent::observe(std::size_t s, std::size_t a, double r, std::size_t s_next) {
    posterior_->observe(s, a, r, s_next);
}

MdpEnvironment::MdpEnvironment(FiniteHorizonMdp mdp, double reward_noise_var)
    : mdp_(std::move(mdp)), noise_var_(reward_noise_var) {
    mdp_.validate();
    if (!(reward_noise_var >= 0.0)) throw DomainError("MdpEnvironment: noise variance must be nonnegative");
    optimal_ = initial_value(mdp_, value_iteration(mdp_).value);
}

std::size_t MdpEnvironment::reset(stats::RngStream& rng) const { return sample_categorical(mdp_.initial, rng); }

Transition MdpEnvironment::step(std::size_t s, std::size_t a, stats::RngStream& rng) const {
    check_sa(s, a, mdp_.states, mdp_.actions);
    double r = mdp_.reward[s][a];
    if (noise_var_ > 0.0) r += stats::sample_normal(0.0, noise_var_, rng);
    return {r, sample_categorical(mdp_.transition[s][a], rng)};
}

FiniteHorizonMdp build_chain_env(std::size_t n, bool reward_right) {
    if (n < 1) throw DomainError("build_chain_env: chain half-length must be at least 1");
    const std::size_t states = 2 * n + 1;
    const std::size_t goal = reward_right ? states - 1 : 0;
    FiniteHorizonMdp m{states, 2, n, {}, {}, std::vector<double>(states, 0.0)};
    m.initial[n] = 1.0;
    m.transition.assign(states, std::vector<std::vector<double>>(2, std::vector<double>(states, 0.0)));
    m.reward.assign(states, std::vector<double>(2, 0.0));
    for (std::size_t s = 0; s < states; ++s) {
        const bool end = s == 0 || s == states - 1;
        const std::size_t next[2] = {end ? s : s - 1, end ? s : s + 1};
        for (std::size_t a = 0; a < 2; ++a) {
            m.transition[s][a][next[a]] = 1.0;
            m.reward[s][a] = (!end && next[a] == goal) ? 1.0 : 0.0;
        }
    }
    return m;
}

std::unique_ptr<HypothesisPosterior> informed_chain_posterior(std::size_t n) {
    std::vector<HypothesisPosterior::Hypothesis> h;
    for (bool right : {false, true}) {
        const auto m = build_chain_env(n, right);
        h.push_back({m, std::vector<std::size_t>(m.states, right ? kRight : kLeft)});
    }
    return std::make_unique<HypothesisPosterior>(std::move(h), std::vector<double>{0.5, 0.5});
}

std::unique_ptr<DirichletGaussianPosterior> uninformed_chain_posterior(std::size_t n) {
    const auto m = build_chain_env(n, true);
    return std::make_unique<DirichletGaussianPosterior>(m.states, m.actions, m.horizon, m.initial, 1.0, 0.0, 1.0,
                                                        kExactRewardNoise);
}

engine::RegretCurve run_episodic(const EpisodicConfig& config) {
    if (config.episodes < 1 || config.num_simulations < 1) {
        throw DomainError("run_episodic: episodes and simulations must be positive");
    }
    if (!config.make_environment || !config.make_agent) {
        throw DomainError("run_episodic: environment and agent factories are required");
    }
    auto simulate = [&](std::size_t sim, std::vector<std::vector<double>>& series) {
        const stats::RngStream root(config.base_seed, sim);
        stats::RngStream env_rng = root.split(0);
        stats::RngStream agent_rng = root.split(1);
        stats::RngStream env_init = root.split(2);
        stats::RngStream agent_init = root.split(3);
        const auto env = config.make_environment(env_init);
        const auto agent = config.make_agent(agent_init);
        const auto& m = env->mdp();
        for (std::size_t k = 0; k < config.episodes; ++k) {
            agent->begin_episode(agent_rng);
            std::size_t s = env->reset(env_rng);
            double ret = 0.0;
            for (std::size_t h = 0; h < m.horizon; ++h) {
                const std::size_t a = agent->act(s, h, agent_rng);
                if (a >= m.actions) {
                    throw ContractViolation("agent '" + config.label + "' chose an invalid action in simulation " +
                                            std::to_string(sim) + " at episode " + std::to_string(k + 1));
                }
                const Transition tr = env->step(s, a, env_rng);
                agent->observe(s, a, tr.reward, tr.next);
                ret += tr.reward;
                s = tr.next;
            }
            series[0][k] = env->optimal_value() - ret;
            series[1][k] = ret;
        }
    };
    engine::SimulationSummary summary =
        engine::run_simulations(config.num_simulations, config.episodes, 2, config.threads, simulate);
    engine::RegretCurve curve;
    curve.mean_regret = std::move(summary.series[0].mean);
    curve.standard_error = std::move(summary.series[0].standard_error);
    for (double v : curve.mean_regret) curve.cumulative_regret += v;
    curve.cumulative_stderr = summary.total_stderr;
    curve.metadata = {config.label,
                      engine::fnv1a(config.label + "|" + config.fingerprint + "|T=" + std::to_string(config.episodes) +
                                    "|n=" + std::to_string(config.num_simulations) +
                                    "|seed=" + std::to_string(config.base_seed)),
                      config.base_seed, config.num_simulations, config.episodes};
    curve.probes["episode_reward"] = std::move(summary.series[1]);
    return curve;
}

}  // namespace tslab::mdp
