#include "tslab/shortest_path/lognormal.hpp"

#include "tslab/errors.hpp"
#include "tslab/stats/distributions.hpp"

#include <cmath>
#include <string>

namespace tslab::shortest_path {

bool BridgeActionSet::contains(const Path& p) const {
    if (!bridge || !bridge->graph().is_path(p)) return false;
    if (!closed.empty()) {
        for (std::size_t e : p) {
            if (closed[e]) return false;
        }
    }
    return true;
}

IndependentEdgeBelief IndependentEdgeBelief::uniform(std::size_t edges, double mu, double sigma2,
                                                     double sigma2_tilde) {
    if (!(sigma2 > 0.0) || !(sigma2_tilde > 0.0)) throw DomainError("IndependentEdgeBelief: variances must be positive");
    return {std::vector<double>(edges, mu), std::vector<double>(edges, sigma2), sigma2_tilde};
}

std::vector<double> IndependentEdgeBelief::expected_theta() const {
    std::vector<double> out(mu.size());
    for (std::size_t e = 0; e < mu.size(); ++e) out[e] = std::exp(mu[e] + 0.5 * sigma2[e]);
    return out;
}

void independent_update(IndependentEdgeBelief& belief, std::size_t edge, double y) {
    if (edge >= belief.mu.size()) throw IndexError("independent_update: edge out of range");
    if (!(y > 0.0)) throw DomainError("independent_update: observation must be positive");
    const double prior_precision = 1.0 / belief.sigma2[edge];
    const double obs_precision = 1.0 / belief.sigma2_tilde;
    const double pseudo = std::log(y) + 0.5 * belief.sigma2_tilde;
    const double precision = prior_precision + obs_precision;
    belief.mu[edge] = (prior_precision * belief.mu[edge] + obs_precision * pseudo) / precision;
    belief.sigma2[edge] = 1.0 / precision;
}

Matrix observation_covariance(const BinomialBridge& bridge, const Path& path, double sigma2_tilde) {
    const auto n = static_cast<Eigen::Index>(path.size());
    Matrix s(n, n);
    for (Eigen::Index a = 0; a < n; ++a) {
        for (Eigen::Index b = 0; b < n; ++b) {
            if (a == b) {
                s(a, b) = sigma2_tilde;
            } else if (bridge.half(path[a]) == bridge.half(path[b])) {
                s(a, b) = 2.0 * sigma2_tilde / 3.0;
            } else {
                s(a, b) = sigma2_tilde / 3.0;
            }
        }
    }
    return s;
}

void correlated_update(CorrelatedBelief& belief, const BinomialBridge& bridge, const Path& path,
                       const std::vector<double>& y, double sigma2_tilde) {
    if (y.size() != path.size()) throw ShapeError("correlated_update: one observation per traversed edge required");
    if (!(sigma2_tilde > 0.0)) throw DomainError("correlated_update: sigma2_tilde must be positive");
    if (path.empty()) return;
    const auto n = static_cast<Eigen::Index>(path.size());
    const Eigen::Index dim = belief.mu.size();
    Vector resid(n);
    for (Eigen::Index a = 0; a < n; ++a) {
        if (!(y[a] > 0.0)) throw DomainError("correlated_update: observations must be positive");
        resid(a) = std::log(y[a]) - belief.mu(static_cast<Eigen::Index>(path[a]));
    }
    // ΣHᵀ: the traversed columns of Σ.
    Matrix sh(dim, n);
    for (Eigen::Index a = 0; a < n; ++a) sh.col(a) = belief.sigma.col(static_cast<Eigen::Index>(path[a]));
    Matrix s = observation_covariance(bridge, path, sigma2_tilde);
    for (Eigen::Index a = 0; a < n; ++a) s.row(a) += sh.row(static_cast<Eigen::Index>(path[a]));
    stats::symmetrize(s);
    const Matrix ls = stats::cholesky_lower(s);
    // Gain K = ΣHᵀS⁻¹, formed as (S⁻¹·HΣ)ᵀ.
    Matrix kt = sh.transpose();
    ls.triangularView<Eigen::Lower>().solveInPlace(kt);
    ls.transpose().triangularView<Eigen::Upper>().solveInPlace(kt);
    belief.mu.noalias() += kt.transpose() * resid;
    belief.sigma.noalias() -= kt.transpose() * sh.transpose();
    stats::symmetrize(belief.sigma);
}

std::vector<double> sample_env_independent(const std::vector<double>& theta, double sigma2_tilde, const Path& path,
                                           stats::RngStream& rng) {
    std::vector<double> y(path.size());
    for (std::size_t a = 0; a < path.size(); ++a) {
        y[a] = stats::sample_lognormal(std::log(theta[path[a]]) - 0.5 * sigma2_tilde, sigma2_tilde, rng);
    }
    return y;
}

std::vector<double> sample_env_correlated(const BinomialBridge& bridge, const std::vector<double>& theta,
                                          double sigma2_tilde, const Path& path, stats::RngStream& rng) {
    const double m = -sigma2_tilde / 6.0;
    const double v = sigma2_tilde / 3.0;
    const double eta = stats::sample_lognormal(m, v, rng);
    const double nu[2] = {stats::sample_lognormal(m, v, rng), stats::sample_lognormal(m, v, rng)};
    std::vector<double> y(path.size());
    for (std::size_t a = 0; a < path.size(); ++a) {
        const double zeta = stats::sample_lognormal(m, v, rng);
        y[a] = zeta * eta * nu[bridge.half(path[a])] * theta[path[a]];
    }
    return y;
}

BridgeEnv::BridgeEnv(std::shared_ptr<const BinomialBridge> bridge, std::vector<double> theta, double sigma2_tilde,
                     ObservationModel model)
    : bridge_(std::move(bridge)), theta_(std::move(theta)), sigma2_tilde_(sigma2_tilde), model_(model) {
    if (!bridge_) throw DomainError("BridgeEnv: missing bridge");
    if (theta_.size() != bridge_->num_edges()) throw ShapeError("BridgeEnv: one mean travel time per edge required");
    if (!(sigma2_tilde > 0.0)) throw DomainError("BridgeEnv: sigma2_tilde must be positive");
    optimal_cost_ = bridge_->shortest(theta_).cost;
}

void BridgeEnv::set_closures(std::vector<std::vector<bool>> per_period) {
    for (const auto& c : per_period) {
        if (!c.empty() && c.size() != bridge_->num_edges()) throw ShapeError("BridgeEnv: closure mask size mismatch");
    }
    closures_ = std::move(per_period);
    optimal_by_period_.resize(closures_.size());
    for (std::size_t i = 0; i < closures_.size(); ++i) {
        optimal_by_period_[i] =
            closures_[i].empty() ? optimal_cost_ : bridge_->shortest(theta_, &closures_[i]).cost;
    }
}

BridgeActionSet BridgeEnv::admissible_actions(std::size_t t) const {
    BridgeActionSet s{bridge_.get(), {}};
    if (t >= 1 && t <= closures_.size()) s.closed = closures_[t - 1];
    return s;
}

PathObservation BridgeEnv::step(std::size_t, const Path& a, stats::RngStream& rng) {
    if (model_ == ObservationModel::Independent) return {sample_env_independent(theta_, sigma2_tilde_, a, rng)};
    return {sample_env_correlated(*bridge_, theta_, sigma2_tilde_, a, rng)};
}

double BridgeEnv::per_period_regret(std::size_t t, const Path& a) const {
    const double best = (t >= 1 && t <= closures_.size()) ? optimal_by_period_[t - 1] : optimal_cost_;
    return path_cost(a, theta_) - best;
}

std::vector<double> sample_edge_theta(std::size_t edges, double mu, double sigma2, stats::RngStream& rng) {
    std::vector<double> theta(edges);
    for (double& t : theta) t = stats::sample_lognormal(mu, sigma2, rng);
    return theta;
}

IndependentPathAgent::IndependentPathAgent(std::shared_ptr<const BinomialBridge> bridge, IndependentEdgeBelief prior,
                                           PathRule rule, double epsilon)
    : bridge_(std::move(bridge)), belief_(std::move(prior)), rule_(rule), epsilon_(epsilon) {
    if (!bridge_ || belief_.mu.size() != bridge_->num_edges() || belief_.sigma2.size() != bridge_->num_edges()) {
        throw ShapeError("IndependentPathAgent: belief does not match bridge");
    }
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw DomainError("IndependentPathAgent: epsilon must lie in [0,1]");
}

Path IndependentPathAgent::select_action(std::size_t, const BridgeActionSet& admissible, stats::RngStream& rng) {
    if (rule_ == PathRule::EpsilonGreedy && epsilon_ > 0.0 && rng.uniform01() < epsilon_) {
        for (int attempt = 0; attempt < 64; ++attempt) {
            Path p = bridge_->random_path(rng);
            if (admissible.contains(p)) return p;
        }
    }
    std::vector<double> w;
    if (rule_ == PathRule::Thompson) {
        w.resize(belief_.mu.size());
        for (std::size_t e = 0; e < w.size(); ++e) w[e] = stats::sample_lognormal(belief_.mu[e], belief_.sigma2[e], rng);
    } else {
        w = belief_.expected_theta();
    }
    return bridge_->shortest(w, admissible.closed_or_null()).edges;
}

void IndependentPathAgent::observe(std::size_t, const Path& a, const PathObservation& o) {
    if (o.y.size() != a.size()) throw ShapeError("IndependentPathAgent: observation size mismatch");
    for (std::size_t i = 0; i < a.size(); ++i) independent_update(belief_, a[i], o.y[i]);
}

CorrelatedPathAgent::CorrelatedPathAgent(std::shared_ptr<const BinomialBridge> bridge, CorrelatedBelief prior,
                                         double sigma2_tilde)
    : bridge_(std::move(bridge)), belief_(std::move(prior)), sigma2_tilde_(sigma2_tilde) {
    const auto n = static_cast<Eigen::Index>(bridge_ ? bridge_->num_edges() : 0);
    if (!bridge_ || belief_.mu.size() != n || belief_.sigma.rows() != n || belief_.sigma.cols() != n) {
        throw ShapeError("CorrelatedPathAgent: belief does not match bridge");
    }
}

Path CorrelatedPathAgent::select_action(std::size_t, const BridgeActionSet& admissible, stats::RngStream& rng) {
    const Matrix l = stats::cholesky_lower(belief_.sigma);
    const Vector phi = stats::sample_mvn_factor(belief_.mu, l, rng);
    std::vector<double> w(static_cast<std::size_t>(phi.size()));
    for (std::size_t e = 0; e < w.size(); ++e) w[e] = std::exp(phi(static_cast<Eigen::Index>(e)));
    return bridge_->shortest(w, admissible.closed_or_null()).edges;
}

void CorrelatedPathAgent::observe(std::size_t, const Path& a, const PathObservation& o) {
    correlated_update(belief_, *bridge_, a, o.y, sigma2_tilde_);
}

engine::ProbeSpec<PathTraits> travel_time_ratio_probe() {
    struct Ratio final : engine::Probe<PathTraits> {
        double total = 0.0;
        double record(const engine::StepRecord<PathTraits>& s) override {
            for (double y : s.observation.y) total += y;
            const auto& env = static_cast<const BridgeEnv&>(s.environment);
            return total / (static_cast<double>(s.t) * env.optimal_cost());
        }
    };
    return {"travel_time_ratio", []() -> std::unique_ptr<engine::Probe<PathTraits>> { return std::make_unique<Ratio>(); }};
}

}  // namespace tslab::shortest_path
