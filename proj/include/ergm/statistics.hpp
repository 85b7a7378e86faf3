#pragma once

#include <Eigen/Dense>
#include <string>
#include <string_view>
#include <vector>

#include "ergm/graph.hpp"

namespace ergm {

/// Length-d vector of statistic values; also used for the natural
/// parameters theta (same dimension throughout the estimators).
using StatVector = Eigen::VectorXd;

enum class TermKind {
  Edges,
  TwoStars,
  ThreeStars,
  Triangles,
  Mutual,
  CyclicTriples,
  GWDegree,
  GWESP,
};

/// One sufficient-statistic term. Decay parameters of the geometrically
/// weighted terms are fixed model constants, never estimated.
struct StatisticTerm {
  TermKind kind = TermKind::Edges;
  double decay = 0.0;  // phi, gw terms only; must be >= 0

  bool is_integer_valued() const {
    return kind != TermKind::GWDegree && kind != TermKind::GWESP;
  }
  bool requires_directed() const {
    return kind == TermKind::Mutual || kind == TermKind::CyclicTriples;
  }
  bool requires_undirected() const {
    return !requires_directed() && kind != TermKind::Edges;
  }
  std::string name() const;

  /// Parse config names: edges, kstar2, kstar3, triangle, mutual, ctriple,
  /// gwdegree(phi), gwesp(phi). Case-insensitive.
  static StatisticTerm parse(std::string_view text);
};

struct ModelSpec {
  std::vector<StatisticTerm> terms;
  bool directed = false;

  int dim() const { return static_cast<int>(terms.size()); }

  /// Throws unless every term is compatible with the directedness flag and
  /// the dimension is at least one.
  void validate() const;

  /// Comma-separated term list, e.g. "edges, gwdegree(0.8), gwesp(0.8)".
  static ModelSpec parse(std::string_view term_list, bool directed);
  std::string describe() const;
};

/// s(y) for the whole graph.
StatVector global_stats(const Graph& g, const ModelSpec& spec);

/// Change statistics: s(y with d set to 1) - s(y with d set to 0), computed
/// locally. Independent of the dyad's current state. `out` must hold dim()
/// doubles; this overload is allocation-free for the sampler's inner loop.
void change_stats(const Graph& g, Dyad d, const ModelSpec& spec, double* out);
StatVector change_stats(const Graph& g, Dyad d, const ModelSpec& spec);

/// Full-conditional probability of a tie given the rest of the graph:
/// logistic(theta . delta).
double conditional_edge_probability(const StatVector& theta,
                                    const StatVector& delta);

}  // namespace ergm
