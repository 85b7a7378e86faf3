#pragma once

#include <map>
#include <string>
#include <vector>

#include "ergm/graph.hpp"
#include "ergm/sampler.hpp"
#include "ergm/statistics.hpp"

namespace ergm {

struct FitResult {
  StatVector estimate;
  StatVector std_errors;           // meaningful only if available
  bool std_errors_available = false;
  bool converged = false;
  std::map<std::string, double> diagnostics;
  std::string message;
};

/// Maximum pseudolikelihood: logistic regression of every dyad indicator on
/// its change statistics, Newton-Raphson from zero. Standard errors from the
/// inverse observed information. Separation or a singular information matrix
/// is reported, not thrown.
FitResult mple(const Graph& observed, const ModelSpec& spec);

struct McmleOptions {
  double trust_radius = 20.0;   // ||theta - theta0|| divergence guard
  double min_ess = 5.0;         // importance-weight effective sample size
  int max_iterations = 200;
  int threads = 0;
};

/// Reference sample for the importance-sampled likelihood-ratio surface:
/// m independent sampler runs from the observed graph at theta0.
std::vector<StatVector> draw_reference_sample(const Graph& observed,
                                              const ModelSpec& spec,
                                              const StatVector& theta0, int m,
                                              const SamplerConfig& cfg,
                                              int threads = 0);

/// Importance-sampled approximation of the log likelihood ratio
/// l(theta) - l(theta0) from stored reference statistics.
double log_likelihood_ratio(const StatVector& theta, const StatVector& theta0,
                            const StatVector& s_obs,
                            const std::vector<StatVector>& sample);

/// Monte Carlo MLE seeded at theta0. Declares failure (converged = false)
/// on trust-radius escape, importance-weight collapse, or the observed
/// statistics falling outside the sampled per-coordinate range.
FitResult mcmle(const Graph& observed, const ModelSpec& spec,
                const StatVector& theta0, int m, const SamplerConfig& cfg,
                const McmleOptions& options = {});

/// The ratio surface evaluated on a grid, one shared reference sample.
std::vector<std::pair<StatVector, double>> log_ratio_surface(
    const Graph& observed, const ModelSpec& spec, const StatVector& theta0,
    int m, const SamplerConfig& cfg, const std::vector<StatVector>& grid);

}  // namespace ergm
