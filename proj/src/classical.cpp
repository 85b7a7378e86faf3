#include "ergm/classical.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>

#include "ergm/parallel.hpp"

namespace ergm {
namespace {

// Pseudolikelihood pieces over all dyads.
struct PseudoData {
  std::vector<StatVector> delta;
  std::vector<int> response;
};

PseudoData collect_dyads(const Graph& g, const ModelSpec& spec) {
  PseudoData data;
  const int n = g.node_count();
  data.delta.reserve(std::size_t(g.dyad_count()));
  for (int i = 0; i < n; ++i) {
    for (int j = g.directed() ? 0 : i + 1; j < n; ++j) {
      if (i == j) continue;
      data.delta.push_back(change_stats(g, {i, j}, spec));
      data.response.push_back(g.has_edge(i, j) ? 1 : 0);
    }
  }
  return data;
}

double pseudo_loglik(const PseudoData& data, const StatVector& theta) {
  double ll = 0.0;
  for (std::size_t k = 0; k < data.delta.size(); ++k) {
    const double x = theta.dot(data.delta[k]);
    // y*x - log(1+e^x), stable in both tails
    ll += data.response[k] * x - (x > 0 ? x + std::log1p(std::exp(-x))
                                        : std::log1p(std::exp(x)));
  }
  return ll;
}

double logistic(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace

FitResult mple(const Graph& observed, const ModelSpec& spec) {
  spec.validate();
  if (observed.directed() != spec.directed)
    throw std::invalid_argument("observed graph directedness mismatch");
  const int d = spec.dim();
  const PseudoData data = collect_dyads(observed, spec);

  FitResult fit;
  fit.estimate = StatVector::Zero(d);
  fit.std_errors = StatVector::Zero(d);

  StatVector theta = StatVector::Zero(d);
  double ll = pseudo_loglik(data, theta);
  Eigen::MatrixXd info(d, d);
  StatVector grad(d);
  int iter = 0;
  for (; iter < 50; ++iter) {
    grad.setZero();
    info.setZero();
    for (std::size_t k = 0; k < data.delta.size(); ++k) {
      const double p = logistic(theta.dot(data.delta[k]));
      grad += (data.response[k] - p) * data.delta[k];
      info += p * (1.0 - p) * data.delta[k] * data.delta[k].transpose();
    }
    if (grad.lpNorm<Eigen::Infinity>() < 1e-8) break;

    Eigen::LLT<Eigen::MatrixXd> llt(info);
    if (llt.info() != Eigen::Success) {
      fit.estimate = theta;
      fit.message = "observed information singular (separation?)";
      fit.diagnostics["iterations"] = iter;
      fit.diagnostics["grad_norm"] = grad.lpNorm<Eigen::Infinity>();
      return fit;
    }
    StatVector step = llt.solve(grad);
    // step halving keeps the objective ascending (float-level slack so the
    // final micro-step near the optimum is not rejected)
    double scale = 1.0;
    int halvings = 0;
    for (; halvings < 10; ++halvings) {
      const double candidate_ll = pseudo_loglik(data, theta + scale * step);
      if (candidate_ll >= ll - 1e-10) break;
      scale *= 0.5;
    }
    if (halvings == 10) {
      fit.estimate = theta;
      fit.message = "pseudolikelihood ascent stalled";
      fit.diagnostics["iterations"] = iter;
      return fit;
    }
    theta += scale * step;
    ll = pseudo_loglik(data, theta);
    if (!theta.allFinite()) {
      fit.estimate = theta;
      fit.message = "estimate diverged (separation?)";
      return fit;
    }
  }

  fit.estimate = theta;
  fit.diagnostics["iterations"] = iter;
  fit.diagnostics["grad_norm"] = grad.lpNorm<Eigen::Infinity>();
  if (iter == 50) {
    fit.message = "no convergence in 50 Newton iterations";
    return fit;
  }
  if (theta.lpNorm<Eigen::Infinity>() > 15.0) {
    // gradient met the tolerance on a flat tail: perfect separation
    fit.message = "separation: pseudolikelihood has no finite optimum";
    return fit;
  }
  Eigen::LLT<Eigen::MatrixXd> llt(info);
  if (llt.info() != Eigen::Success) {
    fit.message = "information singular at the optimum";
    return fit;
  }
  const Eigen::MatrixXd cov =
      llt.solve(Eigen::MatrixXd::Identity(d, d));
  fit.std_errors = cov.diagonal().array().sqrt();
  fit.std_errors_available = true;
  fit.converged = true;
  return fit;
}

std::vector<StatVector> draw_reference_sample(const Graph& observed,
                                              const ModelSpec& spec,
                                              const StatVector& theta0, int m,
                                              const SamplerConfig& cfg,
                                              int threads) {
  if (m < 2) throw std::invalid_argument("need at least two reference draws");
  std::vector<StatVector> sample(static_cast<std::size_t>(m));
  const StatVector s_obs = global_stats(observed, spec);
  parallel_for(m, threads, [&](std::int64_t i) {
    Rng rng(Rng::derive(cfg.seed, std::uint64_t(i)));
    Graph g = observed;
    sample[std::size_t(i)] = mh_run(g, theta0, spec, cfg.proposal,
                                    cfg.iterations, rng, s_obs)
                                 .final_stats;
  });
  return sample;
}

double log_likelihood_ratio(const StatVector& theta, const StatVector& theta0,
                            const StatVector& s_obs,
                            const std::vector<StatVector>& sample) {
  const StatVector shift = theta - theta0;
  double max_exp = -std::numeric_limits<double>::infinity();
  for (const auto& s : sample) max_exp = std::max(max_exp, shift.dot(s));
  double sum = 0.0;
  for (const auto& s : sample) sum += std::exp(shift.dot(s) - max_exp);
  const double lse =
      max_exp + std::log(sum) - std::log(double(sample.size()));
  return shift.dot(s_obs) - lse;
}

std::vector<std::pair<StatVector, double>> log_ratio_surface(
    const Graph& observed, const ModelSpec& spec, const StatVector& theta0,
    int m, const SamplerConfig& cfg, const std::vector<StatVector>& grid) {
  if (grid.empty()) throw std::invalid_argument("empty evaluation grid");
  const auto sample = draw_reference_sample(observed, spec, theta0, m, cfg);
  const StatVector s_obs = global_stats(observed, spec);
  std::vector<std::pair<StatVector, double>> surface;
  surface.reserve(grid.size());
  for (const auto& theta : grid)
    surface.emplace_back(theta,
                         log_likelihood_ratio(theta, theta0, s_obs, sample));
  return surface;
}

FitResult mcmle(const Graph& observed, const ModelSpec& spec,
                const StatVector& theta0, int m, const SamplerConfig& cfg,
                const McmleOptions& options) {
  spec.validate();
  const int d = spec.dim();
  if (theta0.size() != d) throw std::invalid_argument("theta0 dimension mismatch");
  const StatVector s_obs = global_stats(observed, spec);
  const auto sample =
      draw_reference_sample(observed, spec, theta0, m, cfg, options.threads);

  FitResult fit;
  fit.estimate = theta0;
  fit.std_errors = StatVector::Zero(d);

  // Convex-range screen: the observed statistics must be covered by the
  // simulated ones coordinate by coordinate, otherwise the surface has no
  // interior optimum in that direction.
  bool outside_range = false;
  for (int k = 0; k < d; ++k) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& s : sample) {
      lo = std::min(lo, s[k]);
      hi = std::max(hi, s[k]);
    }
    if (s_obs[k] < lo || s_obs[k] > hi) outside_range = true;
  }
  fit.diagnostics["convex_range_violated"] = outside_range ? 1.0 : 0.0;

  StatVector theta = theta0;
  double objective = 0.0;  // w at theta0 is identically zero
  StatVector grad = StatVector::Zero(d);
  Eigen::MatrixXd hessian = Eigen::MatrixXd::Zero(d, d);
  std::vector<double> weights(sample.size());
  double m_eff = double(m);
  bool trust_hit = false, singular = false, stalled = false, at_optimum = false;
  int iter = 0;

  for (; iter < options.max_iterations; ++iter) {
    // self-normalised importance weights at the current theta
    const StatVector shift = theta - theta0;
    double max_exp = -std::numeric_limits<double>::infinity();
    for (const auto& s : sample) max_exp = std::max(max_exp, shift.dot(s));
    double total = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
      weights[i] = std::exp(shift.dot(sample[i]) - max_exp);
      total += weights[i];
    }
    StatVector mean = StatVector::Zero(d);
    for (std::size_t i = 0; i < sample.size(); ++i) {
      weights[i] /= total;
      mean += weights[i] * sample[i];
    }
    double sumsq = 0.0;
    for (double w : weights) sumsq += w * w;
    m_eff = 1.0 / sumsq;
    if (m_eff < options.min_ess) break;

    grad = s_obs - mean;
    hessian.setZero();
    for (std::size_t i = 0; i < sample.size(); ++i) {
      const StatVector centered = sample[i] - mean;
      hessian += weights[i] * centered * centered.transpose();
    }
    if (grad.lpNorm<Eigen::Infinity>() < 1e-6) {
      at_optimum = true;
      break;
    }
    Eigen::LLT<Eigen::MatrixXd> llt(hessian);
    if (llt.info() != Eigen::Success ||
        hessian.diagonal().minCoeff() < 1e-12) {
      singular = true;
      break;
    }
    StatVector step = llt.solve(grad);
    double scale = 1.0;
    int halvings = 0;
    for (; halvings < 10; ++halvings) {
      const double candidate =
          log_likelihood_ratio(theta + scale * step, theta0, s_obs, sample);
      if (candidate >= objective) {
        objective = candidate;
        break;
      }
      scale *= 0.5;
    }
    if (halvings == 10) {
      // distinguish numerical stall at the optimum from a genuine failure
      if (grad.lpNorm<Eigen::Infinity>() < 1e-4)
        at_optimum = true;
      else
        stalled = true;
      break;
    }
    theta += scale * step;
    if ((theta - theta0).norm() > options.trust_radius) {
      trust_hit = true;
      break;
    }
  }

  fit.estimate = theta;
  fit.diagnostics["iterations"] = iter;
  fit.diagnostics["m_eff"] = m_eff;
  fit.diagnostics["grad_norm"] = grad.lpNorm<Eigen::Infinity>();
  fit.diagnostics["trust_radius_hit"] = trust_hit ? 1.0 : 0.0;
  fit.diagnostics["singular_information"] = singular ? 1.0 : 0.0;

  const bool failed = outside_range || trust_hit || singular || stalled ||
                      m_eff < options.min_ess || !at_optimum;
  if (failed) {
    fit.message = outside_range
                      ? "observed statistics outside simulated range"
                  : trust_hit ? "estimate escaped the trust region"
                  : singular  ? "weighted covariance singular"
                  : stalled   ? "ascent stalled"
                  : m_eff < options.min_ess
                      ? "importance weights collapsed"
                      : "no convergence";
    return fit;
  }

  // At the optimum the weighted covariance estimates the Fisher information
  // of the exponential family; its inverse gives the standard errors.
  Eigen::LLT<Eigen::MatrixXd> llt(hessian);
  if (llt.info() == Eigen::Success &&
      hessian.diagonal().minCoeff() > 1e-12) {
    const Eigen::MatrixXd cov = llt.solve(Eigen::MatrixXd::Identity(d, d));
    fit.std_errors = cov.diagonal().array().sqrt();
    fit.std_errors_available = true;
  }
  fit.converged = true;
  return fit;
}

}  // namespace ergm
