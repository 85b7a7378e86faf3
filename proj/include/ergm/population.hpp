#pragma once

#include <cstdint>
#include <vector>

#include "ergm/diagnostics.hpp"
#include "ergm/exchange.hpp"

namespace ergm {

struct PopulationConfig {
  int chains = 0;  // H >= 3; 0 means "2 * dim" default
  double gamma = 0.5;
  Eigen::MatrixXd epsilon_cov;       // empty: 0.1 * I
  std::int64_t iterations_per_chain = 1000;
  std::int64_t warmup_iterations = -1;  // <0: 20% of iterations_per_chain
  SamplerConfig aux;
  std::vector<double> block_proposal_sd;  // warmup block-update scales
  std::vector<StatVector> init;  // empty: overdispersed sd-3 normal draws
  std::uint64_t seed = 0;
  bool record_aux_stats = false;
  int threads = 0;  // 0: hardware concurrency capped at H
};

/// One parallel adaptive-direction move: theta_h plus gamma times the
/// difference of two other randomly chosen chain states plus the given
/// symmetric noise draw.
StatVector ads_propose(const std::vector<StatVector>& states, int h,
                       double gamma, const StatVector& epsilon_draw, Rng& rng);

/// Log proposal density of moving chain h from `from` to `to` given the
/// selected pair (h1, h2); used to check the reverse-move symmetry.
double ads_log_proposal_density(const std::vector<StatVector>& states, int h,
                                int h1, int h2, const StatVector& from,
                                const StatVector& to, double gamma,
                                const Eigen::MatrixXd& epsilon_cov);

struct PopulationResult {
  std::vector<ChainOutput> chains;
  PosteriorSummary pooled;  // warmup draws excluded
  std::int64_t warmup_iterations = 0;
};

/// Population exchange sampler: H interacting chains, block random-walk
/// updates during warmup, parallel ADS moves afterwards. Within an
/// iteration every chain reads the other chains' states from the
/// start-of-iteration snapshot, so chains can run concurrently.
PopulationResult run_population(const Graph& observed, const ModelSpec& spec,
                                const Prior& prior,
                                const PopulationConfig& cfg);

}  // namespace ergm
