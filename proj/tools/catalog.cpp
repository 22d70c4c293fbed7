#include "catalog.hpp"

#include "tslab/assortment/assortment.hpp"
#include "tslab/bernoulli/beta_bandit.hpp"
#include "tslab/bernoulli/revealing.hpp"
#include "tslab/cascade/cascade.hpp"
#include "tslab/engine/experiment.hpp"
#include "tslab/errors.hpp"
#include "tslab/mdp/mdp.hpp"
#include "tslab/path_logistic/model.hpp"
#include "tslab/posterior_approx/bernoulli_approx.hpp"
#include "tslab/posterior_approx/linear_bandit.hpp"
#include "tslab/shortest_path/lognormal.hpp"
#include "tslab/stats/distributions.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>

namespace tslab::cli {

namespace {

namespace fs = std::filesystem;

using Params = std::vector<std::pair<std::string, std::string>>;

template <class Traits>
using EnvFactory = std::function<std::unique_ptr<engine::Environment<Traits>>(stats::RngStream&)>;

template <class Traits>
struct AgentSpec {
    std::string name;
    std::function<std::unique_ptr<engine::Agent<Traits>>(stats::RngStream&)> make;
};

template <class Traits>
std::vector<AgentCurve> run_agents(const std::string& preset, const std::string& fingerprint, const RunSettings& s,
                                   const EnvFactory<Traits>& env, const std::vector<AgentSpec<Traits>>& agents,
                                   const std::vector<engine::ProbeSpec<Traits>>& probes = {}) {
    std::vector<AgentCurve> out;
    for (const auto& a : agents) {
        if (!s.includes(a.name)) continue;
        engine::ExperimentConfig<Traits> c;
        c.label = preset + "/" + a.name;
        c.horizon = s.horizon;
        c.num_simulations = s.sims;
        c.base_seed = s.seed;
        c.threads = s.threads;
        c.make_environment = env;
        c.make_agent = a.make;
        c.probes = probes;
        c.fingerprint = fingerprint;
        out.push_back({a.name, engine::run_experiment(c)});
    }
    return out;
}

std::string fingerprint_of(const std::string& name, const Params& params) {
    std::string fp = name;
    for (const auto& [k, v] : params) fp += ";" + k + "=" + v;
    return fp;
}

std::string join(const std::vector<std::string>& items) {
    std::string s;
    for (const auto& i : items) s += (s.empty() ? "" : ",") + i;
    return s;
}

Preset make_preset(std::string name, std::string figure, std::string summary, Params params,
                   std::vector<std::string> agents, std::size_t horizon, std::size_t paper_sims,
                   std::function<std::vector<AgentCurve>(const RunSettings&, const std::string&)> body) {
    Preset p;
    p.name = std::move(name);
    p.figure = std::move(figure);
    p.summary = std::move(summary);
    p.parameters = std::move(params);
    p.agents = std::move(agents);
    p.horizon = horizon;
    p.paper_sims = paper_sims;
    const std::string fp = fingerprint_of(p.name, p.parameters);
    p.run = [fp, body = std::move(body)](const RunSettings& s) { return body(s, fp); };
    return p;
}

// ---- Bernoulli bandit ----

using bernoulli::BernoulliTraits;
using bernoulli::BetaParams;
using bernoulli::BetaRule;

std::vector<engine::ProbeSpec<BernoulliTraits>> action_probes(std::size_t k) {
    std::vector<engine::ProbeSpec<BernoulliTraits>> probes;
    for (std::size_t a = 0; a < k; ++a) {
        probes.push_back(engine::make_probe<BernoulliTraits>(
            "action_" + std::to_string(a + 1),
            [a](const engine::StepRecord<BernoulliTraits>& r) { return r.action == a ? 1.0 : 0.0; }));
    }
    return probes;
}

AgentSpec<BernoulliTraits> beta_agent(std::string name, BetaParams prior, BetaRule rule) {
    return {std::move(name), [prior, rule](stats::RngStream&) -> std::unique_ptr<engine::Agent<BernoulliTraits>> {
                return std::make_unique<bernoulli::BetaBernoulliAgent>(prior, rule);
            }};
}

EnvFactory<BernoulliTraits> fixed_bernoulli(std::vector<double> theta) {
    return [theta](stats::RngStream&) { return std::make_unique<bernoulli::BernoulliEnv>(theta); };
}

EnvFactory<BernoulliTraits> random_bernoulli(BetaParams prior) {
    return [prior](stats::RngStream& init) {
        return std::make_unique<bernoulli::BernoulliEnv>(bernoulli::sample_theta(prior, init));
    };
}

Preset fig3() {
    return make_preset(
        "fig3", "Figures 3 and 4a",
        "Three-armed Bernoulli bandit with fixed success probabilities; regret and per-arm selection rates.",
        {{"K", "3"}, {"theta", "(0.9,0.8,0.7)"}, {"prior", "Beta(1,1)"}}, {"greedy", "ts"}, 1000, 10000,
        [](const RunSettings& s, const std::string& fp) {
            const auto prior = BetaParams::uniform(3);
            return run_agents<BernoulliTraits>("fig3", fp, s, fixed_bernoulli({0.9, 0.8, 0.7}),
                                               {beta_agent("greedy", prior, BetaRule::Greedy),
                                                beta_agent("ts", prior, BetaRule::Thompson)},
                                               action_probes(3));
        });
}

Preset fig4() {
    return make_preset("fig4", "Figure 4b",
                       "Three-armed Bernoulli bandit with success probabilities drawn from the prior per simulation.",
                       {{"K", "3"}, {"theta", "Beta(1,1) per simulation"}, {"prior", "Beta(1,1)"}},
                       {"greedy", "ts"}, 1000, 10000, [](const RunSettings& s, const std::string& fp) {
                           const auto prior = BetaParams::uniform(3);
                           return run_agents<BernoulliTraits>("fig4", fp, s, random_bernoulli(prior),
                                                              {beta_agent("greedy", prior, BetaRule::Greedy),
                                                               beta_agent("ts", prior, BetaRule::Thompson)});
                       });
}

AgentSpec<BernoulliTraits> approx_agent(std::string name, BetaParams prior, posterior_approx::ApproxRule rule) {
    return {std::move(name), [prior, rule](stats::RngStream&) -> std::unique_ptr<engine::Agent<BernoulliTraits>> {
                return std::make_unique<posterior_approx::ApproxBernoulliAgent>(prior, rule);
            }};
}

Preset fig9() {
    using posterior_approx::ApproxRule;
    return make_preset(
        "fig9", "Figure 9a",
        "Approximate posterior sampling against exact Thompson sampling on the random-theta Bernoulli bandit.",
        {{"K", "3"}, {"theta", "Beta(1,1) per simulation"}, {"prior", "Beta(1,1)"}, {"langevin_steps", "100"},
         {"langevin_step", "0.05"}, {"gibbs_grid", "2048"}},
        {"ts", "laplace", "bootstrap", "langevin", "gibbs"}, 1000, 10000,
        [](const RunSettings& s, const std::string& fp) {
            const auto prior = BetaParams::uniform(3);
            return run_agents<BernoulliTraits>("fig9", fp, s, random_bernoulli(prior),
                                               {beta_agent("ts", prior, BetaRule::Thompson),
                                                approx_agent("laplace", prior, ApproxRule::Laplace),
                                                approx_agent("bootstrap", prior, ApproxRule::Bootstrap),
                                                approx_agent("langevin", prior, ApproxRule::Langevin),
                                                approx_agent("gibbs", prior, ApproxRule::Gibbs)});
        });
}

Preset fig11() {
    return make_preset(
        "fig11", "Figure 11",
        "Coherent against uniform priors when success probabilities are drawn from skewed beta distributions.",
        {{"K", "3"}, {"theta", "Beta(1,50),Beta(1,100),Beta(1,200) per simulation"},
         {"coherent_prior", "Beta(1,50),Beta(1,100),Beta(1,200)"}, {"misspecified_prior", "Beta(1,1)"}},
        {"coherent", "misspecified"}, 1000, 10000, [](const RunSettings& s, const std::string& fp) {
            const BetaParams coherent({1, 1, 1}, {50, 100, 200});
            return run_agents<BernoulliTraits>("fig11", fp, s, random_bernoulli(coherent),
                                               {beta_agent("coherent", coherent, BetaRule::Thompson),
                                                beta_agent("misspecified", BetaParams::uniform(3), BetaRule::Thompson)});
        });
}

Preset fig13() {
    return make_preset(
        "fig13", "Figure 13",
        "Drifting Bernoulli bandit: stationary against nonstationary Thompson sampling.",
        {{"K", "3"}, {"gamma", "0.01"}, {"anchor", "Beta(1,1)"}, {"prior", "Beta(1,1)"}}, {"ts", "nonstationary-ts"},
        2000, 10000, [](const RunSettings& s, const std::string& fp) {
            const auto anchor = BetaParams::uniform(3);
            const double gamma = 0.01;
            EnvFactory<BernoulliTraits> env = [anchor, gamma](stats::RngStream& init) {
                return std::make_unique<bernoulli::BernoulliEnv>(bernoulli::sample_theta(anchor, init),
                                                                 bernoulli::BernoulliEnv::Drift{gamma, anchor});
            };
            AgentSpec<BernoulliTraits> ns{
                "nonstationary-ts", [anchor, gamma](stats::RngStream&) -> std::unique_ptr<engine::Agent<BernoulliTraits>> {
                    return std::make_unique<bernoulli::BetaBernoulliAgent>(
                        anchor, BetaRule::Thompson, bernoulli::EpsilonSchedule::fixed(0.0),
                        bernoulli::BetaBernoulliAgent::Nonstationary{gamma, anchor});
                }};
            return run_agents<BernoulliTraits>("fig13", fp, s, env,
                                               {beta_agent("ts", anchor, BetaRule::Thompson), ns});
        });
}

Preset revealing() {
    using bernoulli::RevealingTraits;
    return make_preset(
        "revealing-action", "Revealing-action example",
        "Finite hypothesis problem whose revealing action is never optimal for any hypothesis.",
        {{"k", "10"}, {"theta", "uniform on {1..k}"}, {"revealing_reward", "1/(2 theta)"}}, {"ts"}, 100, 10000,
        [](const RunSettings& s, const std::string& fp) {
            const std::size_t k = 10;
            EnvFactory<RevealingTraits> env = [k](stats::RngStream& init) {
                return std::make_unique<bernoulli::RevealingActionEnv>(bernoulli::revealing_action_env(k, init));
            };
            AgentSpec<RevealingTraits> ts{"ts", [k](stats::RngStream&) -> std::unique_ptr<engine::Agent<RevealingTraits>> {
                                              return std::make_unique<bernoulli::RevealingTsAgent>(k);
                                          }};
            auto probe = engine::make_probe<RevealingTraits>(
                "revealing_rate", [](const engine::StepRecord<RevealingTraits>& r) { return r.action == 0 ? 1.0 : 0.0; });
            return run_agents<RevealingTraits>("revealing-action", fp, s, env, {ts}, {probe});
        });
}

// ---- Shortest path ----

using shortest_path::BinomialBridge;
using shortest_path::PathTraits;

constexpr std::size_t kBridgeStages = 20;
constexpr double kEdgeMu = -0.5;
constexpr double kEdgeSigma2 = 1.0;
constexpr double kNoise = 1.0;

Params bridge_params(const std::string& model) {
    return {{"M", std::to_string(kBridgeStages)}, {"mu_e", "-0.5"}, {"sigma2_e", "1"}, {"sigma2_tilde", "1"},
            {"observation_model", model}};
}

EnvFactory<PathTraits> bridge_env(std::shared_ptr<const BinomialBridge> bridge, shortest_path::ObservationModel m) {
    return [bridge, m](stats::RngStream& init) {
        auto theta = shortest_path::sample_edge_theta(bridge->num_edges(), kEdgeMu, kEdgeSigma2, init);
        return std::make_unique<shortest_path::BridgeEnv>(bridge, std::move(theta), kNoise, m);
    };
}

AgentSpec<PathTraits> independent_agent(std::string name, std::shared_ptr<const BinomialBridge> bridge,
                                        shortest_path::PathRule rule, double epsilon = 0.0) {
    return {std::move(name), [bridge, rule, epsilon](stats::RngStream&) -> std::unique_ptr<engine::Agent<PathTraits>> {
                auto prior = shortest_path::IndependentEdgeBelief::uniform(bridge->num_edges(), kEdgeMu, kEdgeSigma2,
                                                                           kNoise);
                return std::make_unique<shortest_path::IndependentPathAgent>(bridge, std::move(prior), rule, epsilon);
            }};
}

Preset fig6() {
    using shortest_path::PathRule;
    return make_preset("fig6", "Figure 6",
                       "Online shortest path on a binomial bridge with independent lognormal travel times.",
                       bridge_params("independent"),
                       {"ts", "greedy", "epsilon-0.01", "epsilon-0.05", "epsilon-0.1"}, 500, 10000,
                       [](const RunSettings& s, const std::string& fp) {
                           auto bridge = std::make_shared<const BinomialBridge>(kBridgeStages);
                           return run_agents<PathTraits>(
                               "fig6", fp, s, bridge_env(bridge, shortest_path::ObservationModel::Independent),
                               {independent_agent("ts", bridge, PathRule::Thompson),
                                independent_agent("greedy", bridge, PathRule::Greedy),
                                independent_agent("epsilon-0.01", bridge, PathRule::EpsilonGreedy, 0.01),
                                independent_agent("epsilon-0.05", bridge, PathRule::EpsilonGreedy, 0.05),
                                independent_agent("epsilon-0.1", bridge, PathRule::EpsilonGreedy, 0.1)},
                               {shortest_path::travel_time_ratio_probe()});
                       });
}

Preset fig7() {
    using shortest_path::PathRule;
    return make_preset(
        "fig7", "Figure 7", "Correlated travel times: coherent joint posterior against per-edge independent updates.",
        bridge_params("correlated"), {"coherent-ts", "misspecified-ts"}, 500, 10000,
        [](const RunSettings& s, const std::string& fp) {
            auto bridge = std::make_shared<const BinomialBridge>(kBridgeStages);
            AgentSpec<PathTraits> coherent{
                "coherent-ts", [bridge](stats::RngStream&) -> std::unique_ptr<engine::Agent<PathTraits>> {
                    const auto e = static_cast<Eigen::Index>(bridge->num_edges());
                    shortest_path::CorrelatedBelief prior{stats::Vector::Constant(e, kEdgeMu),
                                                          kEdgeSigma2 * stats::Matrix::Identity(e, e)};
                    return std::make_unique<shortest_path::CorrelatedPathAgent>(bridge, std::move(prior), kNoise);
                }};
            return run_agents<PathTraits>("fig7", fp, s,
                                          bridge_env(bridge, shortest_path::ObservationModel::Correlated),
                                          {coherent, independent_agent("misspecified-ts", bridge, PathRule::Thompson)},
                                          {shortest_path::travel_time_ratio_probe()});
        });
}

Preset fig8() {
    using path_logistic::LogisticTraits;
    Preset p = make_preset(
        "fig8", "Figure 8", "Binary route feedback on a binomial bridge: Laplace and bootstrap approximate sampling.",
        {{"M", std::to_string(kBridgeStages)}, {"theta_prior", "Gamma(shape=2,rate=2)"},
         {"feedback", "logistic(M - path length)"}},
        {"laplace", "bootstrap"}, 500, 1000, [](const RunSettings& s, const std::string& fp) {
            auto bridge = std::make_shared<const BinomialBridge>(kBridgeStages);
            EnvFactory<LogisticTraits> env = [bridge](stats::RngStream& init) {
                return std::make_unique<path_logistic::LogisticPathEnv>(
                    bridge, path_logistic::sample_gamma_theta(bridge->num_edges(), init));
            };
            auto agent = [bridge](std::string name, path_logistic::LogisticRule rule) {
                return AgentSpec<LogisticTraits>{
                    std::move(name), [bridge, rule](stats::RngStream&) -> std::unique_ptr<engine::Agent<LogisticTraits>> {
                        return std::make_unique<path_logistic::LogisticPathAgent>(bridge, rule);
                    }};
            };
            return run_agents<LogisticTraits>("fig8", fp, s, env,
                                              {agent("laplace", path_logistic::LogisticRule::Laplace),
                                               agent("bootstrap", path_logistic::LogisticRule::Bootstrap)});
        });
    p.desk_sims = 20;
    return p;
}

// ---- Assortment ----

Preset fig12() {
    using assortment::AssortmentRule;
    using assortment::AssortmentTraits;
    Preset p = make_preset(
        "fig12", "Figure 12", "Product assortment with lognormal demand and pairwise substitution effects.",
        {{"n", "6"}, {"sigma2", "0.04"}, {"price", "1/6"}, {"prior_diagonal_var", "1"}, {"prior_offdiagonal_var", "0.2"}},
        {"ts", "epsilon-0.07", "annealing-9", "greedy"}, 500, 10000,
        [](const RunSettings& s, const std::string& fp) {
            const auto prior =
                assortment::AssortmentBelief::independent(6, 1.0, 0.2, 0.04, std::vector<double>(6, 1.0 / 6.0));
            EnvFactory<AssortmentTraits> env = [prior](stats::RngStream& init) {
                return std::make_unique<assortment::AssortmentEnv>(assortment::sample_environment_theta(prior, init),
                                                                   prior.sigma2, prior.prices);
            };
            auto agent = [prior](std::string name, AssortmentRule rule, bernoulli::EpsilonSchedule schedule) {
                return AgentSpec<AssortmentTraits>{
                    std::move(name),
                    [prior, rule, schedule](stats::RngStream&) -> std::unique_ptr<engine::Agent<AssortmentTraits>> {
                        return std::make_unique<assortment::AssortmentAgent>(prior, rule, schedule);
                    }};
            };
            using bernoulli::EpsilonSchedule;
            return run_agents<AssortmentTraits>(
                "fig12", fp, s, env,
                {agent("ts", AssortmentRule::Thompson, EpsilonSchedule::fixed(0.0)),
                 agent("epsilon-0.07", AssortmentRule::EpsilonGreedy, EpsilonSchedule::fixed(0.07)),
                 agent("annealing-9", AssortmentRule::EpsilonGreedy, EpsilonSchedule::annealing(9.0)),
                 agent("greedy", AssortmentRule::Greedy, EpsilonSchedule::fixed(0.0))});
        });
    p.desk_sims = 500;
    return p;
}

// ---- Cascade ----

const std::vector<std::string>& optimism_grid() {
    static const std::vector<std::string> grid = {"0",   "0.0001", "0.001", "0.005", "0.01", "0.05",
                                                  "0.1", "0.2",    "0.3",   "0.5",   "0.75", "1"};
    return grid;
}

std::vector<std::string> cascade_agents() {
    std::vector<std::string> a{"ts"};
    for (const auto& c : optimism_grid()) a.push_back("ucb-c" + c);
    return a;
}

Preset cascade_preset(std::string name, std::string figure, std::size_t items, std::size_t display, double a0,
                      double b0, std::size_t desk_sims) {
    using cascade::CascadeTraits;
    const std::string prior_text = "Beta(" + engine::format_double(a0) + "," + engine::format_double(b0) + ")";
    std::string summary = "Cascading bandit: CascadeTS against CascadeUCB over a grid of optimism levels";
    summary += a0 == 1.0 && b0 == 1.0 ? ", both with uniform priors." : ".";
    const std::string preset_name = name;
    Preset p = make_preset(
        std::move(name), std::move(figure), std::move(summary),
        {{"K", std::to_string(items)}, {"J", std::to_string(display)}, {"theta", "Beta(1,40)"},
         {"agent_prior", prior_text}, {"optimism", join(optimism_grid())}},
        cascade_agents(), 20000, 1000, [=](const RunSettings& s, const std::string& fp) {
            EnvFactory<CascadeTraits> env = [items, display](stats::RngStream& init) {
                return std::make_unique<cascade::CascadeEnv>(cascade::sample_attractions(items, 1.0, 40.0, init),
                                                             display);
            };
            auto agent = [=](std::string agent_name, cascade::CascadeRule rule, double c) {
                return AgentSpec<CascadeTraits>{
                    std::move(agent_name), [=](stats::RngStream&) -> std::unique_ptr<engine::Agent<CascadeTraits>> {
                        return std::make_unique<cascade::CascadeAgent>(cascade::ItemStats::uniform(items, a0, b0),
                                                                       display, rule, c);
                    }};
            };
            std::vector<AgentSpec<CascadeTraits>> agents{agent("ts", cascade::CascadeRule::Thompson, 0.0)};
            for (const auto& c : optimism_grid()) {
                agents.push_back(agent("ucb-c" + c, cascade::CascadeRule::Ucb, std::stod(c)));
            }
            return run_agents<CascadeTraits>(preset_name, fp, s, env, agents);
        });
    p.desk_sims = desk_sims;
    return p;
}

// ---- MDP ----

AgentCurve episodic(const std::string& preset, const std::string& agent, const std::string& fp,
                    const RunSettings& s, std::size_t n,
                    std::function<std::unique_ptr<mdp::EpisodicAgent>(stats::RngStream&)> make) {
    mdp::EpisodicConfig c;
    c.label = preset + "/" + agent;
    c.episodes = s.horizon;
    c.num_simulations = s.sims;
    c.base_seed = s.seed;
    c.threads = s.threads;
    c.make_environment = [n](stats::RngStream& init) {
        return std::make_unique<mdp::MdpEnvironment>(mdp::build_chain_env(n, init.uniform01() < 0.5));
    };
    c.make_agent = std::move(make);
    c.fingerprint = fp;
    return {agent, mdp::run_episodic(c)};
}

Preset fig14(bool informed) {
    const std::size_t n = 5;
    const std::string name = informed ? "fig14" : "fig14b";
    Params params{{"N", std::to_string(n)}, {"states", std::to_string(2 * n + 1)}, {"H", std::to_string(n)}};
    if (informed) {
        params.emplace_back("prior", "two hypotheses, reward at either end with probability 1/2");
    } else {
        params.emplace_back("prior", "Dirichlet(1) transitions, N(0,1) mean rewards");
        params.emplace_back("reward_noise_var", engine::format_double(mdp::kExactRewardNoise));
    }
    Preset p = make_preset(
        name, informed ? "Figure 14a" : "Figure 14b",
        std::string("Chain MDP: one posterior sample per episode against one per timestep, ") +
            (informed ? "informed prior." : "uninformed prior."),
        params, {"psrl", "ts-per-timestep"}, informed ? 50 : 200, 1000,
        [=](const RunSettings& s, const std::string& fp) {
            auto posterior = [=]() -> std::unique_ptr<mdp::MdpPosterior> {
                if (informed) return mdp::informed_chain_posterior(n);
                return mdp::uninformed_chain_posterior(n);
            };
            std::vector<AgentCurve> out;
            if (s.includes("psrl")) {
                out.push_back(episodic(name, "psrl", fp, s, n,
                                       [=](stats::RngStream&) -> std::unique_ptr<mdp::EpisodicAgent> {
                                           return std::make_unique<mdp::PsrlAgent>(posterior());
                                       }));
            }
            if (s.includes("ts-per-timestep")) {
                out.push_back(episodic(name, "ts-per-timestep", fp, s, n,
                                       [=](stats::RngStream&) -> std::unique_ptr<mdp::EpisodicAgent> {
                                           return std::make_unique<mdp::PerTimestepTsAgent>(posterior());
                                       }));
            }
            return out;
        });
    p.horizon_unit = "episodes";
    return p;
}

// ---- Linear bandit ----

Preset linear_ensemble() {
    using posterior_approx::LinearTraits;
    return make_preset(
        "linear-ensemble", "Ensemble sampling example",
        "Gaussian linear bandit: exact Kalman Thompson sampling against ensemble sampling.",
        {{"d", "5"}, {"actions", "20, entries N(0,1) from a fixed generator"}, {"prior", "N(0,I)"},
         {"noise_var", "1"}, {"models", "30"}},
        {"kalman-ts", "ensemble-ts"}, 200, 10000, [](const RunSettings& s, const std::string& fp) {
            const std::size_t d = 5;
            stats::RngStream gen(0, 0);
            std::vector<stats::Vector> actions;
            for (int k = 0; k < 20; ++k) actions.push_back(stats::sample_standard_normal(d, gen));
            const stats::Vector mean = stats::Vector::Zero(static_cast<Eigen::Index>(d));
            const auto cov = stats::SpdMatrix::identity(d);
            EnvFactory<LinearTraits> env = [=](stats::RngStream& init) {
                return std::make_unique<posterior_approx::LinearBanditEnv>(actions, stats::sample_mvn(mean, cov, init),
                                                                           1.0);
            };
            AgentSpec<LinearTraits> kalman{"kalman-ts",
                                           [=](stats::RngStream&) -> std::unique_ptr<engine::Agent<LinearTraits>> {
                                               return std::make_unique<posterior_approx::KalmanTsAgent>(actions, mean,
                                                                                                        cov, 1.0);
                                           }};
            AgentSpec<LinearTraits> ensemble{
                "ensemble-ts", [=](stats::RngStream& init) -> std::unique_ptr<engine::Agent<LinearTraits>> {
                    return std::make_unique<posterior_approx::EnsembleTsAgent>(actions, mean, cov, 1.0, 30, init);
                }};
            return run_agents<LinearTraits>("linear-ensemble", fp, s, env, {kalman, ensemble});
        });
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open " + path.string() + " for writing");
    f << text;
    if (!f) throw IoError("failed writing " + path.string());
}

}  // namespace

const std::vector<Preset>& catalog() {
    static const std::vector<Preset> presets = [] {
        std::vector<Preset> p;
        p.push_back(fig3());
        p.push_back(fig4());
        p.push_back(fig6());
        p.push_back(fig7());
        p.push_back(fig8());
        p.push_back(fig9());
        p.push_back(fig11());
        p.push_back(fig12());
        p.push_back(fig13());
        p.push_back(cascade_preset("table1", "Table 1", 1000, 100, 1.0, 40.0, 50));
        p.push_back(cascade_preset("table2", "Table 2", 50, 10, 1.0, 40.0, 200));
        p.push_back(cascade_preset("table3", "Table 3", 1000, 100, 1.0, 1.0, 50));
        p.push_back(fig14(true));
        p.push_back(fig14(false));
        p.push_back(revealing());
        p.push_back(linear_ensemble());
        return p;
    }();
    return presets;
}

const Preset* find_preset(const std::string& name) {
    for (const auto& p : catalog()) {
        if (p.name == name) return &p;
    }
    return nullptr;
}

bool RunSettings::includes(const std::string& agent) const {
    return agents.empty() || std::find(agents.begin(), agents.end(), agent) != agents.end();
}

RunSettings resolve(const Preset& preset, std::size_t sims, std::size_t horizon, std::uint64_t seed,
                    bool seed_given, bool paper_scale, std::size_t threads, std::vector<std::string> agents) {
    for (const auto& a : agents) {
        if (std::find(preset.agents.begin(), preset.agents.end(), a) == preset.agents.end()) {
            throw DomainError("preset '" + preset.name + "' has no agent '" + a + "'");
        }
    }
    RunSettings s;
    s.agents = std::move(agents);
    s.sims = sims ? sims : (paper_scale ? preset.paper_sims : preset.desk_sims);
    s.horizon = horizon ? horizon : preset.horizon;
    s.seed = seed_given ? seed : preset.seed;
    s.threads = threads ? threads : 1;
    return s;
}

std::string describe(const Preset& preset) {
    std::ostringstream o;
    o << "preset=" << preset.name << "\n";
    o << "figure=" << preset.figure << "\n";
    o << "summary=" << preset.summary << "\n";
    for (const auto& [k, v] : preset.parameters) o << k << "=" << v << "\n";
    o << "T=" << preset.horizon << "\n";
    o << "horizon_unit=" << preset.horizon_unit << "\n";
    o << "desk_sims=" << preset.desk_sims << "\n";
    o << "paper_sims=" << preset.paper_sims << "\n";
    o << "seed=" << preset.seed << "\n";
    o << "agents=" << join(preset.agents) << "\n";
    return o.str();
}

std::string manifest(const Preset& preset, const RunSettings& settings, bool paper_scale,
                     const std::vector<AgentCurve>& curves) {
    std::ostringstream o;
    o << "preset=" << preset.name << "\n";
    o << "figure=" << preset.figure << "\n";
    for (const auto& [k, v] : preset.parameters) o << "param." << k << "=" << v << "\n";
    o << "T=" << settings.horizon << "\n";
    o << "horizon_unit=" << preset.horizon_unit << "\n";
    o << "sims=" << settings.sims << "\n";
    o << "seed=" << settings.seed << "\n";
    o << "paper_scale=" << (paper_scale ? "true" : "false") << "\n";
    std::string all = fingerprint_of(preset.name, preset.parameters);
    for (const auto& c : curves) all += "|" + std::to_string(c.curve.metadata.config_hash);
    o << "config_hash=" << engine::fnv1a(all) << "\n";
    std::vector<std::string> names;
    for (const auto& c : curves) names.push_back(c.agent);
    o << "agents=" << join(names) << "\n";
    for (const auto& c : curves) {
        const std::string key = "agent." + c.agent + ".";
        o << key << "csv=" << c.agent << ".csv\n";
        o << key << "config_hash=" << c.curve.metadata.config_hash << "\n";
        o << key << "cumulative_regret=" << engine::format_double(c.curve.cumulative_regret) << "\n";
        o << key << "cumulative_stderr=" << engine::format_double(c.curve.cumulative_stderr) << "\n";
        for (const auto& [probe, _] : c.curve.probes) {
            o << key << "probe." << probe << "=probes/" << c.agent << "." << probe << ".csv\n";
        }
    }
    return o.str();
}

void run_to_directory(const Preset& preset, const RunSettings& settings, bool paper_scale, const std::string& out) {
    const auto curves = preset.run(settings);
    const fs::path root(out);
    const fs::path final_dir = root / preset.name;
    const fs::path staging = root / ("." + preset.name + ".partial");
    try {
        fs::create_directories(root);
        fs::remove_all(staging);
        fs::create_directories(staging / "probes");
        for (const auto& c : curves) {
            engine::write_regret_csv(c.curve, staging / (c.agent + ".csv"));
            for (const auto& [probe, series] : c.curve.probes) {
                engine::write_series_csv(series, staging / "probes" / (c.agent + "." + probe + ".csv"));
            }
        }
        write_text(staging / "manifest.txt", manifest(preset, settings, paper_scale, curves));
        fs::remove_all(final_dir);
        fs::rename(staging, final_dir);
    } catch (const fs::filesystem_error& e) {
        std::error_code ignored;
        fs::remove_all(staging, ignored);
        throw IoError(e.what());
    } catch (...) {
        std::error_code ignored;
        fs::remove_all(staging, ignored);
        throw;
    }
}

}  // namespace tslab::cli
