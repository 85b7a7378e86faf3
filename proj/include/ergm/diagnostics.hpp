#pragma once

#include <span>
#include <vector>

#include "ergm/exchange.hpp"

namespace ergm {

struct PosteriorSummary {
  Eigen::MatrixXd chain_means;  // chains x d
  Eigen::MatrixXd chain_sds;    // chains x d
  StatVector pooled_mean;
  StatVector pooled_sd;
  std::vector<double> ess;      // per parameter, summed over chains
  std::vector<double> acceptance_per_chain;
  std::int64_t draws_per_chain_used = 0;
};

/// Per-chain and pooled posterior moments after discarding the leading
/// burn-in fraction of every chain. Chains must agree in dimension and
/// length.
PosteriorSummary summarize(const std::vector<ChainOutput>& chains,
                           double burn_in_fraction);

/// Sample autocorrelation function, lags 0..max_lag (ACF(0) = 1). A
/// zero-variance series yields NaN beyond lag zero.
std::vector<double> autocorrelation(std::span<const double> series,
                                    int max_lag);

struct EssResult {
  double value = 0.0;
  bool degenerate = false;  // zero-variance input, value = N by convention
};

/// N / (1 + 2 sum ACF), truncated at the first nonpositive consecutive-lag
/// pair (Geyer's initial positive sequence).
EssResult effective_sample_size(std::span<const double> series);

/// First lag at which |ACF| drops below the threshold; the operational
/// reading of "negligible autocorrelation".
int first_negligible_lag(std::span<const double> series, double threshold,
                         int max_lag);

}  // namespace ergm
