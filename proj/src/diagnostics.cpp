#include "ergm/diagnostics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ergm {

PosteriorSummary summarize(const std::vector<ChainOutput>& chains,
                           double burn_in_fraction) {
  if (chains.empty()) throw std::invalid_argument("no chains to summarize");
  if (burn_in_fraction < 0.0 || burn_in_fraction >= 1.0)
    throw std::invalid_argument("burn-in fraction must be in [0,1)");
  const int d = static_cast<int>(chains.front().draws.cols());
  const std::int64_t len = chains.front().draws.rows();
  for (const auto& c : chains)
    if (c.draws.cols() != d || c.draws.rows() != len)
      throw std::invalid_argument("chains disagree in shape");

  const std::int64_t discard = static_cast<std::int64_t>(
      std::floor(burn_in_fraction * double(len) + 1e-9));
  const std::int64_t kept = len - discard;
  if (kept < 1) throw std::invalid_argument("burn-in leaves no draws");

  const int h = static_cast<int>(chains.size());
  PosteriorSummary out;
  out.chain_means.resize(h, d);
  out.chain_sds.resize(h, d);
  out.pooled_mean = StatVector::Zero(d);
  out.pooled_sd = StatVector::Zero(d);
  out.ess.assign(d, 0.0);
  out.draws_per_chain_used = kept;

  Eigen::MatrixXd pooled(h * kept, d);
  std::vector<double> series(static_cast<std::size_t>(kept));
  for (int c = 0; c < h; ++c) {
    const auto block = chains[c].draws.bottomRows(kept);
    pooled.middleRows(std::int64_t(c) * kept, kept) = block;
    for (int k = 0; k < d; ++k) {
      const double mean = block.col(k).mean();
      out.chain_means(c, k) = mean;
      const double var =
          (block.col(k).array() - mean).square().sum() / double(kept - 1);
      out.chain_sds(c, k) = std::sqrt(std::max(0.0, var));
      for (std::int64_t t = 0; t < kept; ++t)
        series[std::size_t(t)] = block(t, k);
      out.ess[k] += kept >= 10 ? effective_sample_size(series).value
                               : double(kept);
    }
    out.acceptance_per_chain.push_back(chains[c].acceptance_overall);
  }
  for (int k = 0; k < d; ++k) {
    const double mean = pooled.col(k).mean();
    out.pooled_mean[k] = mean;
    const double var = (pooled.col(k).array() - mean).square().sum() /
                       double(pooled.rows() - 1);
    out.pooled_sd[k] = std::sqrt(std::max(0.0, var));
  }
  return out;
}

std::vector<double> autocorrelation(std::span<const double> series,
                                    int max_lag) {
  const std::int64_t n = static_cast<std::int64_t>(series.size());
  if (n <= max_lag)
    throw std::invalid_argument("series shorter than requested lag range");
  double mean = 0.0;
  for (double x : series) mean += x;
  mean /= double(n);
  double c0 = 0.0;
  for (double x : series) c0 += (x - mean) * (x - mean);
  c0 /= double(n);
  std::vector<double> acf(static_cast<std::size_t>(max_lag) + 1, 0.0);
  acf[0] = 1.0;
  // relative floor so round-off on a constant series still reads as degenerate
  if (c0 <= 1e-14 * (mean * mean + 1e-300)) {
    for (int k = 1; k <= max_lag; ++k)
      acf[std::size_t(k)] = std::numeric_limits<double>::quiet_NaN();
    return acf;
  }
  for (int k = 1; k <= max_lag; ++k) {
    double ck = 0.0;
    for (std::int64_t t = 0; t + k < n; ++t)
      ck += (series[std::size_t(t)] - mean) * (series[std::size_t(t + k)] - mean);
    ck /= double(n);
    acf[std::size_t(k)] = ck / c0;
  }
  return acf;
}

EssResult effective_sample_size(std::span<const double> series) {
  const std::int64_t n = static_cast<std::int64_t>(series.size());
  if (n < 10) throw std::invalid_argument("series too short for ESS");
  const int max_lag = static_cast<int>(std::min<std::int64_t>(n - 1, n / 2));
  const auto acf = autocorrelation(series, max_lag);
  if (std::isnan(acf[1])) return {double(n), true};
  // Geyer initial positive sequence: sum consecutive-lag pairs while positive
  double tail = 0.0;
  for (int k = 1; k + 1 <= max_lag; k += 2) {
    const double pair = acf[std::size_t(k)] + acf[std::size_t(k + 1)];
    if (pair <= 0.0) break;
    tail += pair;
  }
  const double iact = 1.0 + 2.0 * tail;
  return {double(n) / iact, false};
}

int first_negligible_lag(std::span<const double> series, double threshold,
                         int max_lag) {
  const auto acf = autocorrelation(series, max_lag);
  for (int k = 1; k <= max_lag; ++k)
    if (std::abs(acf[std::size_t(k)]) < threshold) return k;
  return max_lag;
}

}  // namespace ergm
