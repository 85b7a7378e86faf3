#include "ergm/exchange.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ergm {

Prior Prior::isotropic(int dim, double variance) {
  Prior p;
  p.mean = StatVector::Zero(dim);
  p.covariance = variance * Eigen::MatrixXd::Identity(dim, dim);
  return p;
}

void Prior::validate() const {
  if (mean.size() == 0) throw std::invalid_argument("prior has zero dimension");
  if (covariance.rows() != mean.size() || covariance.cols() != mean.size())
    throw std::invalid_argument("prior covariance shape mismatch");
  if (!covariance.isApprox(covariance.transpose(), 1e-12))
    throw std::invalid_argument("prior covariance not symmetric");
  Eigen::LLT<Eigen::MatrixXd> llt(covariance);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument("prior covariance not positive definite");
}

void Prior::ensure_factored() const {
  if (!factored_) {
    llt_.compute(covariance);
    if (llt_.info() != Eigen::Success)
      throw std::invalid_argument("prior covariance not positive definite");
    factored_ = true;
  }
}

double Prior::log_density(const StatVector& theta) const {
  ensure_factored();
  const StatVector centered = theta - mean;
  const StatVector half = llt_.matrixL().solve(centered);
  double log_det = 0.0;
  for (int i = 0; i < covariance.rows(); ++i)
    log_det += std::log(llt_.matrixL()(i, i));
  const double d = static_cast<double>(theta.size());
  return -0.5 * half.squaredNorm() - log_det -
         0.5 * d * std::log(2.0 * std::numbers::pi);
}

double exchange_log_alpha(const StatVector& theta, const StatVector& theta_p,
                          const StatVector& s_obs, const StatVector& s_aux,
                          const Prior& prior) {
  if (theta.size() != theta_p.size() || theta.size() != s_obs.size() ||
      theta.size() != s_aux.size())
    throw std::invalid_argument("dimension mismatch");
  return (theta - theta_p).dot(s_aux - s_obs) + prior.log_density(theta_p) -
         prior.log_density(theta);
}

ChainOutput run_exchange(const Graph& observed, const ModelSpec& spec,
                         const Prior& prior, const ExchangeConfig& cfg) {
  spec.validate();
  prior.validate();
  const int d = spec.dim();
  if (observed.directed() != spec.directed)
    throw std::invalid_argument("observed graph directedness mismatch");
  if (prior.mean.size() != d)
    throw std::invalid_argument("prior dimension does not match model");
  if (static_cast<int>(cfg.proposal_sd.size()) != d)
    throw std::invalid_argument("need one proposal scale per component");
  for (double sd : cfg.proposal_sd)
    if (!(sd > 0.0)) throw std::invalid_argument("proposal scales must be positive");
  if (cfg.main_iterations < 1)
    throw std::invalid_argument("main_iterations must be >= 1");
  if (cfg.init.size() != 0 && cfg.init.size() != d)
    throw std::invalid_argument("init dimension mismatch");

  const StatVector s_obs = global_stats(observed, spec);
  StatVector theta = cfg.init.size() == d ? cfg.init : StatVector::Zero(d);

  ChainOutput out;
  out.seed = cfg.seed;
  out.draws.resize(cfg.main_iterations, d);
  out.acceptance_per_component.assign(d, 0.0);

  Rng walk(Rng::derive(cfg.seed, 0));
  std::uint64_t aux_counter = 0;
  StatVector theta_p = theta;

  for (std::int64_t sweep = 0; sweep < cfg.main_iterations; ++sweep) {
    for (int k = 0; k < d; ++k) {
      theta_p = theta;
      theta_p[k] += walk.normal(0.0, cfg.proposal_sd[k]);

      Rng aux_rng(Rng::derive(cfg.seed, 1 + aux_counter++));
      Graph aux = observed;  // auxiliary chain starts at the observed network
      const StatVector s_aux =
          mh_run(aux, theta_p, spec, cfg.aux.proposal, cfg.aux.iterations,
                 aux_rng, s_obs)
              .final_stats;

      const double log_alpha =
          exchange_log_alpha(theta, theta_p, s_obs, s_aux, prior);
      const bool accept =
          log_alpha >= 0.0 || std::log(walk.uniform01()) < log_alpha;
      if (accept) {
        theta = theta_p;
        out.acceptance_per_component[k] += 1.0;
      }
      if (cfg.record_aux_stats) out.aux_log.push_back({s_aux, accept});
    }
    out.draws.row(sweep) = theta;
  }

  double total = 0.0;
  for (auto& a : out.acceptance_per_component) {
    total += a;
    a /= static_cast<double>(cfg.main_iterations);
  }
  out.acceptance_overall =
      total / static_cast<double>(cfg.main_iterations * d);
  return out;
}

DegeneracyReport degeneracy_monitor(const std::vector<AuxRecord>& log,
                                    int node_count, bool directed,
                                    int edges_index, double near) {
  if (log.empty()) throw std::invalid_argument("empty auxiliary log");
  const double dyads =
      directed ? double(node_count) * (node_count - 1)
               : double(node_count) * (node_count - 1) / 2.0;
  DegeneracyReport rep;
  rep.total = static_cast<std::int64_t>(log.size());
  for (const auto& rec : log) {
    const double e = rec.stats[edges_index];
    const bool empty = e <= 0.0;
    const bool complete = e >= dyads;
    const bool extreme = e <= near * dyads || e >= (1.0 - near) * dyads;
    rep.empty_fraction += empty;
    rep.complete_fraction += complete;
    rep.near_extreme_fraction += extreme;
    if (rec.accepted) {
      ++rep.accepted;
      rep.accepted_empty_fraction += empty;
      rep.accepted_complete_fraction += complete;
      rep.accepted_near_extreme_fraction += extreme;
    }
  }
  rep.empty_fraction /= double(rep.total);
  rep.complete_fraction /= double(rep.total);
  rep.near_extreme_fraction /= double(rep.total);
  if (rep.accepted > 0) {
    rep.accepted_empty_fraction /= double(rep.accepted);
    rep.accepted_complete_fraction /= double(rep.accepted);
    rep.accepted_near_extreme_fraction /= double(rep.accepted);
  }
  return rep;
}

}  // namespace ergm
