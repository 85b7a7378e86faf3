#include "ergm/sampler.hpp"

#include <cmath>
#include <stdexcept>

namespace ergm {
namespace {

// log probability that TNT selects one specific dyad of the given kind
// when the graph has E edges out of Nd dyads.
double select_log_prob(std::int64_t edges, std::int64_t dyads, bool as_edge) {
  if (edges == 0) return -std::log(static_cast<double>(dyads));   // empty set forced
  if (edges == dyads) return -std::log(static_cast<double>(dyads));  // edge set forced
  const std::int64_t set_size = as_edge ? edges : dyads - edges;
  return std::log(0.5) - std::log(static_cast<double>(set_size));
}

}  // namespace

double tnt_log_hastings(const Graph& g, Dyad d) {
  const bool removing = g.has_edge(d);
  const std::int64_t dyads = g.dyad_count();
  const std::int64_t edges = g.edge_count();
  const std::int64_t edges_after = removing ? edges - 1 : edges + 1;
  const double forward = select_log_prob(edges, dyads, removing);
  const double reverse = select_log_prob(edges_after, dyads, !removing);
  return reverse - forward;
}

TntProposal tnt_propose(const Graph& g, Rng& rng) {
  const std::int64_t dyads = g.dyad_count();
  if (dyads == 0) throw std::invalid_argument("graph has no dyads");
  const std::int64_t edges = g.edge_count();
  bool pick_edge;
  if (edges == 0)
    pick_edge = false;
  else if (edges == dyads)
    pick_edge = true;
  else
    pick_edge = rng.uniform01() < 0.5;
  const Dyad d = pick_edge
                     ? g.edge_at(static_cast<std::int64_t>(
                           rng.uniform_below(static_cast<std::uint64_t>(edges))))
                     : g.empty_dyad_at(static_cast<std::int64_t>(rng.uniform_below(
                           static_cast<std::uint64_t>(dyads - edges))));
  return {d, tnt_log_hastings(g, d)};
}

MhRunResult mh_run(Graph& g, const StatVector& theta, const ModelSpec& spec,
                   ProposalKind proposal, std::int64_t iterations, Rng& rng,
                   const StatVector& current_stats, std::int64_t record_every,
                   std::vector<StatVector>* trace) {
  const int d = spec.dim();
  if (theta.size() != d) throw std::invalid_argument("theta dimension mismatch");
  MhRunResult result;
  result.final_stats = current_stats;
  StatVector delta(d);
  const std::int64_t dyads = g.dyad_count();

  for (std::int64_t step = 1; step <= iterations; ++step) {
    Dyad dyad;
    double log_hastings = 0.0;
    if (proposal == ProposalKind::TNT) {
      const TntProposal p = tnt_propose(g, rng);
      dyad = p.dyad;
      log_hastings = p.log_hastings;
    } else {
      dyad = g.dyad_at(
          static_cast<std::int64_t>(rng.uniform_below(static_cast<std::uint64_t>(dyads))));
    }
    change_stats(g, dyad, spec, delta.data());
    const double sign = g.has_edge(dyad) ? -1.0 : 1.0;
    const double log_alpha = sign * theta.dot(delta) + log_hastings;
    if (log_alpha >= 0.0 || std::log(rng.uniform01()) < log_alpha) {
      g.toggle(dyad);
      result.final_stats += sign * delta;
      ++result.accepted;
    }
    if (record_every > 0 && step % record_every == 0 && trace)
      trace->push_back(result.final_stats);
  }
  return result;
}

Graph sample_graph(const StatVector& theta, const ModelSpec& spec,
                   const Graph& init, const SamplerConfig& cfg) {
  if (init.directed() != spec.directed)
    throw std::invalid_argument("init graph directedness does not match model");
  if (cfg.iterations < 1) throw std::invalid_argument("iterations must be >= 1");
  Graph g = init;
  Rng rng(cfg.seed);
  const StatVector s0 = global_stats(g, spec);
  mh_run(g, theta, spec, cfg.proposal, cfg.iterations, rng, s0);
  return g;
}

std::vector<StatVector> stats_trace(const StatVector& theta,
                                    const ModelSpec& spec, const Graph& init,
                                    const SamplerConfig& cfg) {
  if (cfg.record_stats_every <= 0)
    throw std::invalid_argument("record_stats_every must be positive");
  Graph g = init;
  Rng rng(cfg.seed);
  const StatVector s0 = global_stats(g, spec);
  std::vector<StatVector> trace;
  trace.reserve(static_cast<std::size_t>(cfg.iterations / cfg.record_stats_every));
  mh_run(g, theta, spec, cfg.proposal, cfg.iterations, rng, s0,
         cfg.record_stats_every, &trace);
  return trace;
}

}  // namespace ergm
