#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ergm/graph.hpp"
#include "ergm/sampler.hpp"
#include "ergm/statistics.hpp"

namespace ergm {

/// Observed values with simulated percentile bands, one entry per bin.
struct GofBand {
  std::string family;  // "degree", "in-degree", "out-degree", "esp", "geodesic"
  std::vector<double> observed;
  std::vector<double> p5, p50, p95;
  std::vector<std::string> bin_labels;
};

struct GofReport {
  bool directed = false;
  std::vector<GofBand> families;
};

/// Bayesian goodness of fit: thin `count` parameter vectors uniformly out of
/// the pooled posterior draws, simulate one graph per draw (auxiliary run
/// from the observed network), and band the unmodelled summaries: degree
/// distribution (in/out for directed graphs), edgewise shared partners, and
/// geodesic-distance proportions with an unreachable bin.
GofReport bayesian_gof(const Graph& observed, const ModelSpec& spec,
                       const Eigen::MatrixXd& draws, int count,
                       const SamplerConfig& aux, std::uint64_t seed,
                       int threads = 0);

/// Fraction of occupied bins whose observed value lies inside [p5, p95].
double gof_coverage(const GofReport& report);

}  // namespace ergm
