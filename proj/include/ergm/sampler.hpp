#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ergm/graph.hpp"
#include "ergm/rng.hpp"
#include "ergm/statistics.hpp"

namespace ergm {

enum class ProposalKind { TNT, UniformDyad };

struct SamplerConfig {
  ProposalKind proposal = ProposalKind::TNT;
  std::int64_t iterations = 1000;  // proposed toggles, not sweeps
  std::uint64_t seed = 0;
  std::int64_t record_stats_every = 0;  // 0: no trace
};

struct TntProposal {
  Dyad dyad;
  double log_hastings;  // log q(y|y') - log q(y'|y)
};

/// Tie/no-tie move: pick the edge set or the empty-dyad set with equal
/// probability (the nonempty one with probability 1 when the graph is empty
/// or complete), then a uniform dyad within it. The Hastings term accounts
/// for the selection probabilities changing with the edge count; without it
/// the chain targets the wrong law.
TntProposal tnt_propose(const Graph& g, Rng& rng);

/// Hastings correction for toggling a specific dyad under TNT selection.
double tnt_log_hastings(const Graph& g, Dyad d);

struct MhRunResult {
  std::int64_t accepted = 0;
  StatVector final_stats;  // s(final graph), tracked incrementally
};

/// Metropolis-Hastings dyad-update run, in place. `current_stats` must be
/// s(g) on entry. Records s(y) every `record_every` steps into `trace` when
/// given. This is the inner loop every estimator drives.
MhRunResult mh_run(Graph& g, const StatVector& theta, const ModelSpec& spec,
                   ProposalKind proposal, std::int64_t iterations, Rng& rng,
                   const StatVector& current_stats,
                   std::int64_t record_every = 0,
                   std::vector<StatVector>* trace = nullptr);

/// Approximate draw from pi(y|theta) after cfg.iterations MH steps.
Graph sample_graph(const StatVector& theta, const ModelSpec& spec,
                   const Graph& init, const SamplerConfig& cfg);

/// Sufficient-statistic trace of a sampler run, thinned by
/// cfg.record_stats_every (which must be positive).
std::vector<StatVector> stats_trace(const StatVector& theta,
                                    const ModelSpec& spec, const Graph& init,
                                    const SamplerConfig& cfg);

}  // namespace ergm
