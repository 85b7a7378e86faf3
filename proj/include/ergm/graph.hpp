#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace ergm {

/// An unordered (undirected) or ordered (directed) node pair, no self-loops.
/// Undirected dyads are kept in canonical form i < j.
struct Dyad {
  int i = 0;
  int j = 0;
  friend bool operator==(const Dyad&, const Dyad&) = default;
};

struct GeodesicCounts {
  std::vector<std::int64_t> at_distance;  // index l >= 1; [0] unused
  std::int64_t unreachable = 0;           // pairs with no connecting path
};

/// Dense simple graph tuned for dyad-toggle MCMC: O(1) edge queries, O(1)
/// toggles with cached degrees, and O(1) uniform selection of an edge or an
/// empty dyad (the graph keeps all dyads partitioned into edges / non-edges).
///
/// Confined to one thread at a time; copy freely across chains.
class Graph {
 public:
  Graph(int n, bool directed);

  int node_count() const { return n_; }
  bool directed() const { return directed_; }
  std::int64_t edge_count() const { return edge_count_; }
  std::int64_t dyad_count() const {
    return directed_ ? std::int64_t(n_) * (n_ - 1)
                     : std::int64_t(n_) * (n_ - 1) / 2;
  }

  bool has_edge(int i, int j) const { return adj_[idx(i, j)] != 0; }
  bool has_edge(Dyad d) const { return has_edge(d.i, d.j); }

  /// Flip one dyad; both directions for undirected graphs. O(1).
  void toggle(Dyad d);

  int degree(int v) const { return deg_out_[v]; }  // undirected
  int out_degree(int v) const { return deg_out_[v]; }
  int in_degree(int v) const { return deg_in_[v]; }

  /// k-th current edge / empty dyad / dyad, in internal order.
  Dyad edge_at(std::int64_t k) const { return dyads_[k]; }
  Dyad empty_dyad_at(std::int64_t k) const { return dyads_[edge_count_ + k]; }
  Dyad dyad_at(std::int64_t k) const { return dyads_[k]; }

  std::span<const std::uint8_t> row(int i) const {
    return {adj_.data() + std::size_t(i) * n_, std::size_t(n_)};
  }

  /// Common neighbours of i and j: |{k : y_ik = 1 and y_jk = 1}|.
  int shared_partner_count(Dyad d) const;

  /// D_k = number of nodes of degree exactly k, k = 0..n-1. Undirected only.
  std::vector<std::int64_t> degree_histogram() const;
  std::vector<std::int64_t> in_degree_histogram() const;
  std::vector<std::int64_t> out_degree_histogram() const;

  /// EP_k = number of edges whose endpoints share exactly k partners,
  /// k = 0..n-2. Undirected only.
  std::vector<std::int64_t> esp_histogram() const;

  /// Shortest-path length counts over all pairs (unordered if undirected,
  /// ordered if directed); unreachable pairs counted separately.
  GeodesicCounts geodesic_distribution() const;

  /// Canonicalize and bounds-check a dyad; throws on self-loops.
  Dyad canonical(Dyad d) const;

 private:
  std::size_t idx(int i, int j) const {
    return std::size_t(i) * n_ + j;
  }
  std::size_t dyad_slot(Dyad d) const { return idx(d.i, d.j); }

  int n_;
  bool directed_;
  std::int64_t edge_count_ = 0;
  std::vector<std::uint8_t> adj_;   // n*n, row-major
  std::vector<int> deg_out_;
  std::vector<int> deg_in_;
  std::vector<Dyad> dyads_;         // first edge_count_ entries are edges
  std::vector<std::int64_t> pos_;   // dyad slot -> position in dyads_
};

}  // namespace ergm
