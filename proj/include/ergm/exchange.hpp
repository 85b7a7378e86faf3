#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "ergm/graph.hpp"
#include "ergm/sampler.hpp"
#include "ergm/statistics.hpp"

namespace ergm {

/// Multivariate normal prior over the natural parameters.
struct Prior {
  StatVector mean;
  Eigen::MatrixXd covariance;

  static Prior isotropic(int dim, double variance);
  double log_density(const StatVector& theta) const;
  void validate() const;

 private:
  mutable Eigen::LLT<Eigen::MatrixXd> llt_;
  mutable bool factored_ = false;
  void ensure_factored() const;
};

struct ExchangeConfig {
  std::int64_t main_iterations = 1000;  // single-site sweeps (d updates each)
  SamplerConfig aux;                    // auxiliary-chain settings
  std::vector<double> proposal_sd;      // per-component random-walk scales
  StatVector init;                      // empty: zeros
  std::uint64_t seed = 0;
  bool record_aux_stats = false;
};

struct AuxRecord {
  StatVector stats;
  bool accepted = false;
};

/// Posterior draws of one chain plus bookkeeping.
struct ChainOutput {
  Eigen::MatrixXd draws;  // iterations x d, one row per sweep
  std::vector<double> acceptance_per_component;
  double acceptance_overall = 0.0;
  std::vector<AuxRecord> aux_log;  // empty unless requested
  std::uint64_t seed = 0;
};

/// Log acceptance ratio of the exchange move: the auxiliary draw at theta'
/// cancels both intractable normalising constants, leaving
/// (theta - theta')' (s_aux - s_obs) + log prior(theta') - log prior(theta).
/// Uncapped; accept when log(u) is below it.
double exchange_log_alpha(const StatVector& theta, const StatVector& theta_p,
                          const StatVector& s_obs, const StatVector& s_aux,
                          const Prior& prior);

/// Single-site exchange sampler. Each sweep updates the components one at a
/// time; every component proposal draws its own auxiliary graph, a sampler
/// run of cfg.aux.iterations steps started from the observed network.
ChainOutput run_exchange(const Graph& observed, const ModelSpec& spec,
                         const Prior& prior, const ExchangeConfig& cfg);

struct DegeneracyReport {
  double empty_fraction = 0.0;
  double complete_fraction = 0.0;
  double near_extreme_fraction = 0.0;  // within x of either end, inclusive
  double accepted_empty_fraction = 0.0;
  double accepted_complete_fraction = 0.0;
  double accepted_near_extreme_fraction = 0.0;
  std::int64_t total = 0;
  std::int64_t accepted = 0;
};

/// Degeneracy monitor over an auxiliary-statistics log. The edge statistic
/// (component `edges_index`) is compared against the empty and complete
/// extremes for a graph of `node_count` nodes; `near` is the relative margin.
DegeneracyReport degeneracy_monitor(const std::vector<AuxRecord>& log,
                                    int node_count, bool directed,
                                    int edges_index = 0, double near = 0.05);

}  // namespace ergm
