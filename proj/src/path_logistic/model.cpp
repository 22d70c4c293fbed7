#include "tslab/path_logistic/model.hpp"

#include "tslab/errors.hpp"
#include "tslab/posterior_approx/bootstrap.hpp"
#include "tslab/stats/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace tslab::path_logistic {

namespace {

double softplus(double z) { return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

double logistic(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

}  // namespace

double click_probability(const Path& x, const std::vector<double>& theta, std::size_t stages) {
    return logistic(static_cast<double>(stages) - shortest_path::path_cost(x, theta));
}

int simulate_feedback(const Path& x, const std::vector<double>& theta, std::size_t stages, stats::RngStream& rng) {
    return rng.uniform01() < click_probability(x, theta, stages) ? 1 : 0;
}

void FeedbackHistory::append(const Path& x, int y) {
    if (y != 0 && y != 1) throw DomainError("FeedbackHistory: feedback must be 0 or 1");
    std::size_t id = paths_.size();
    for (std::size_t i = 0; i < paths_.size(); ++i) {
        if (paths_[i] == x) {
            id = i;
            break;
        }
    }
    if (id == paths_.size()) paths_.push_back(x);
    path_of_.push_back(id);
    y_.push_back(y);
}

PathCounts PathCounts::from(const FeedbackHistory& h) {
    std::vector<std::size_t> all(h.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return resampled(h, all);
}

PathCounts PathCounts::resampled(const FeedbackHistory& h, const std::vector<std::size_t>& indices) {
    PathCounts c;
    std::vector<std::size_t> slot(h.paths().size(), h.paths().size());
    for (std::size_t i : indices) {
        if (i >= h.size()) throw IndexError("PathCounts: record index out of range");
        const std::size_t p = h.path_of(i);
        if (slot[p] == h.paths().size()) {
            slot[p] = c.paths.size();
            c.paths.push_back(h.paths()[p]);
            c.ones.push_back(0.0);
            c.zeros.push_back(0.0);
        }
        (h.feedback(i) == 1 ? c.ones : c.zeros)[slot[p]] += 1.0;
    }
    return c;
}

LogisticLikelihood::LogisticLikelihood(std::size_t edges, std::size_t stages, PathCounts counts, Coordinates coords)
    : edges_(edges), stages_(static_cast<double>(stages)), counts_(std::move(counts)), coords_(coords) {
    for (const Path& p : counts_.paths) {
        for (std::size_t e : p) {
            if (e >= edges) throw IndexError("LogisticLikelihood: edge out of range");
        }
    }
}

Vector LogisticLikelihood::theta_of(const Vector& x) const {
    if (static_cast<std::size_t>(x.size()) != edges_) throw ShapeError("LogisticLikelihood: dimension mismatch");
    return coords_ == Coordinates::Psi ? Vector(x.array().exp()) : x;
}

double LogisticLikelihood::value(const Vector& x) const {
    const Vector theta = theta_of(x);
    double v = 0.0;
    for (std::size_t i = 0; i < counts_.paths.size(); ++i) {
        double s = 0.0;
        for (std::size_t e : counts_.paths[i]) s += theta(static_cast<Eigen::Index>(e));
        const double z = s - stages_;
        v += counts_.zeros[i] * z - (counts_.ones[i] + counts_.zeros[i]) * softplus(z);
    }
    return v;
}

Vector LogisticLikelihood::gradient(const Vector& x) const {
    const Vector theta = theta_of(x);
    Vector g = Vector::Zero(x.size());
    for (std::size_t i = 0; i < counts_.paths.size(); ++i) {
        double s = 0.0;
        for (std::size_t e : counts_.paths[i]) s += theta(static_cast<Eigen::Index>(e));
        const double d1 = counts_.zeros[i] - (counts_.ones[i] + counts_.zeros[i]) * logistic(s - stages_);
        for (std::size_t e : counts_.paths[i]) {
            const auto k = static_cast<Eigen::Index>(e);
            g(k) += coords_ == Coordinates::Psi ? d1 * theta(k) : d1;
        }
    }
    return g;
}

Matrix LogisticLikelihood::hessian(const Vector& x) const {
    const Vector theta = theta_of(x);
    Matrix h = Matrix::Zero(x.size(), x.size());
    for (std::size_t i = 0; i < counts_.paths.size(); ++i) {
        const Path& p = counts_.paths[i];
        double s = 0.0;
        for (std::size_t e : p) s += theta(static_cast<Eigen::Index>(e));
        const double n = counts_.ones[i] + counts_.zeros[i];
        const double sig = logistic(s - stages_);
        const double d1 = counts_.zeros[i] - n * sig;
        const double d2 = -n * sig * (1.0 - sig);
        for (std::size_t a : p) {
            const auto ka = static_cast<Eigen::Index>(a);
            for (std::size_t b : p) {
                const auto kb = static_cast<Eigen::Index>(b);
                h(ka, kb) += coords_ == Coordinates::Psi ? d2 * theta(ka) * theta(kb) : d2;
            }
            if (coords_ == Coordinates::Psi) h(ka, ka) += d1 * theta(ka);
        }
    }
    return h;
}

LogPosterior::LogPosterior(std::size_t edges, std::size_t stages, PathCounts counts, Coordinates coords)
    : likelihood_(edges, stages, std::move(counts), coords), coords_(coords) {}

void LogPosterior::check(const Vector& x) const {
    if (coords_ == Coordinates::Theta && !(x.array() > 0.0).all()) {
        throw DomainError("LogPosterior: θ must be strictly positive");
    }
}

double LogPosterior::value(const Vector& x) const {
    check(x);
    double prior = 0.0;
    if (coords_ == Coordinates::Theta) {
        prior = ((kPriorShape - 1.0) * x.array().log() - kPriorRate * x.array()).sum();
    } else {
        prior = (kPriorShape * x.array() - kPriorRate * x.array().exp()).sum();
    }
    return prior + likelihood_.value(x);
}

Vector LogPosterior::gradient(const Vector& x) const {
    check(x);
    Vector g = likelihood_.gradient(x);
    if (coords_ == Coordinates::Theta) {
        g.array() += (kPriorShape - 1.0) / x.array() - kPriorRate;
    } else {
        g.array() += kPriorShape - kPriorRate * x.array().exp();
    }
    return g;
}

Matrix LogPosterior::hessian(const Vector& x) const {
    check(x);
    Matrix h = likelihood_.hessian(x);
    if (coords_ == Coordinates::Theta) {
        h.diagonal().array() -= (kPriorShape - 1.0) / x.array().square();
    } else {
        h.diagonal().array() -= kPriorRate * x.array().exp();
    }
    return h;
}

LogisticPathEnv::LogisticPathEnv(std::shared_ptr<const BinomialBridge> bridge, std::vector<double> theta)
    : bridge_(std::move(bridge)), theta_(std::move(theta)) {
    if (!bridge_) throw DomainError("LogisticPathEnv: missing bridge");
    if (theta_.size() != bridge_->num_edges()) throw ShapeError("LogisticPathEnv: one θ per edge required");
    best_click_ = click_probability(bridge_->shortest(theta_).edges, theta_, bridge_->stages());
}

BridgeActionSet LogisticPathEnv::admissible_actions(std::size_t) const { return {bridge_.get(), {}}; }

int LogisticPathEnv::step(std::size_t, const Path& a, stats::RngStream& rng) {
    return simulate_feedback(a, theta_, bridge_->stages(), rng);
}

double LogisticPathEnv::per_period_regret(std::size_t, const Path& a) const {
    return best_click_ - click_probability(a, theta_, bridge_->stages());
}

PathResult shortest_under_sample(const BinomialBridge& bridge, std::vector<double> w, const std::vector<bool>* closed) {
    const double lo = *std::min_element(w.begin(), w.end());
    if (!(lo > 0.0)) {
        for (double& v : w) v += 1.0 - lo;
    }
    return bridge.shortest(w, closed);
}

std::vector<double> sample_gamma_theta(std::size_t edges, stats::RngStream& rng) {
    std::vector<double> theta(edges);
    for (double& t : theta) t = stats::sample_gamma(kPriorShape, kPriorRate, rng);
    return theta;
}

LogisticPathAgent::LogisticPathAgent(std::shared_ptr<const BinomialBridge> bridge, LogisticRule rule)
    : bridge_(std::move(bridge)), rule_(rule) {
    if (!bridge_) throw DomainError("LogisticPathAgent: missing bridge");
    // ψ-coordinate prior mode: ln(shape/rate).
    warm_ = Vector::Constant(static_cast<Eigen::Index>(bridge_->num_edges()), std::log(kPriorShape / kPriorRate));
}

Vector LogisticPathAgent::laplace_draw(stats::RngStream& rng) {
    const LogPosterior f(bridge_->num_edges(), bridge_->stages(), PathCounts::from(history_), Coordinates::Psi);
    const auto fit = posterior_approx::laplace_fit(f, warm_);
    warm_ = fit.mode;
    return fit.sample(rng);
}

Vector LogisticPathAgent::bootstrap_draw(stats::RngStream& rng) {
    const std::size_t d = bridge_->num_edges();
    const auto indices = posterior_approx::bootstrap_indices(history_.size(), rng);
    Vector anchor(static_cast<Eigen::Index>(d));
    for (Eigen::Index e = 0; e < anchor.size(); ++e) anchor(e) = stats::sample_gamma(kPriorShape, kPriorRate, rng);
    if (history_.empty()) return anchor;
    const LogisticLikelihood lik(d, bridge_->stages(), PathCounts::resampled(history_, indices), Coordinates::Theta);
    Matrix precision = Matrix::Zero(anchor.size(), anchor.size());
    precision.diagonal().setConstant(kPriorRate * kPriorRate / kPriorShape);
    const posterior_approx::PenalizedLikelihood objective(&lik, anchor, std::move(precision));
    return posterior_approx::newton_maximize(objective, anchor).mode;
}

Path LogisticPathAgent::select_action(std::size_t, const BridgeActionSet& admissible, stats::RngStream& rng) {
    std::vector<double> w(bridge_->num_edges());
    if (rule_ == LogisticRule::Laplace) {
        const Vector psi = laplace_draw(rng);
        for (std::size_t e = 0; e < w.size(); ++e) w[e] = std::exp(psi(static_cast<Eigen::Index>(e)));
    } else {
        const Vector theta = bootstrap_draw(rng);
        for (std::size_t e = 0; e < w.size(); ++e) w[e] = theta(static_cast<Eigen::Index>(e));
    }
    return shortest_under_sample(*bridge_, std::move(w), admissible.closed_or_null()).edges;
}

void LogisticPathAgent::observe(std::size_t, const Path& a, const int& y) { history_.append(a, y); }

}  // namespace tslab::path_logistic
