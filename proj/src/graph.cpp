#include "ergm/graph.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <string>

namespace ergm {

Graph::Graph(int n, bool directed) : n_(n), directed_(directed) {
  if (n < 1) throw std::invalid_argument("graph needs at least one node");
  adj_.assign(std::size_t(n) * n, 0);
  deg_out_.assign(n, 0);
  deg_in_.assign(n, 0);
  pos_.assign(std::size_t(n) * n, -1);
  dyads_.reserve(dyad_count());
  for (int i = 0; i < n; ++i) {
    for (int j = directed ? 0 : i + 1; j < n; ++j) {
      if (i == j) continue;
      pos_[idx(i, j)] = std::int64_t(dyads_.size());
      dyads_.push_back(Dyad{i, j});
    }
  }
}

Dyad Graph::canonical(Dyad d) const {
  if (d.i < 0 || d.j < 0 || d.i >= n_ || d.j >= n_)
    throw std::invalid_argument("dyad index out of range");
  if (d.i == d.j)
    throw std::invalid_argument("self-loop dyad (" + std::to_string(d.i) +
                                "," + std::to_string(d.j) + ") not allowed");
  if (!directed_ && d.i > d.j) std::swap(d.i, d.j);
  return d;
}

void Graph::toggle(Dyad d) {
  d = canonical(d);
  const bool removing = has_edge(d);
  const std::int64_t p = pos_[dyad_slot(d)];
  if (removing) {
    adj_[idx(d.i, d.j)] = 0;
    if (!directed_) adj_[idx(d.j, d.i)] = 0;
    --deg_out_[d.i];
    --deg_in_[d.j];
    if (!directed_) {
      --deg_out_[d.j];
      --deg_in_[d.i];
    }
    // swap out of the edge prefix
    const std::int64_t last = edge_count_ - 1;
    std::swap(dyads_[p], dyads_[last]);
    pos_[dyad_slot(dyads_[p])] = p;
    pos_[dyad_slot(dyads_[last])] = last;
    --edge_count_;
  } else {
    adj_[idx(d.i, d.j)] = 1;
    if (!directed_) adj_[idx(d.j, d.i)] = 1;
    ++deg_out_[d.i];
    ++deg_in_[d.j];
    if (!directed_) {
      ++deg_out_[d.j];
      ++deg_in_[d.i];
    }
    const std::int64_t first_empty = edge_count_;
    std::swap(dyads_[p], dyads_[first_empty]);
    pos_[dyad_slot(dyads_[p])] = p;
    pos_[dyad_slot(dyads_[first_empty])] = first_empty;
    ++edge_count_;
  }
}

int Graph::shared_partner_count(Dyad d) const {
  d = canonical(d);
  const std::uint8_t* ri = adj_.data() + idx(d.i, 0);
  const std::uint8_t* rj = adj_.data() + idx(d.j, 0);
  int count = 0;
  for (int k = 0; k < n_; ++k) count += ri[k] & rj[k];
  return count;
}

std::vector<std::int64_t> Graph::degree_histogram() const {
  if (directed_)
    throw std::invalid_argument(
        "degree_histogram is undirected-only; use in/out variants");
  std::vector<std::int64_t> hist(n_, 0);
  for (int v = 0; v < n_; ++v) ++hist[deg_out_[v]];
  return hist;
}

std::vector<std::int64_t> Graph::in_degree_histogram() const {
  std::vector<std::int64_t> hist(n_, 0);
  for (int v = 0; v < n_; ++v) ++hist[deg_in_[v]];
  return hist;
}

std::vector<std::int64_t> Graph::out_degree_histogram() const {
  std::vector<std::int64_t> hist(n_, 0);
  for (int v = 0; v < n_; ++v) ++hist[deg_out_[v]];
  return hist;
}

std::vector<std::int64_t> Graph::esp_histogram() const {
  if (directed_) throw std::invalid_argument("esp_histogram is undirected-only");
  std::vector<std::int64_t> hist(std::max(1, n_ - 1), 0);
  for (std::int64_t k = 0; k < edge_count_; ++k)
    ++hist[shared_partner_count(dyads_[k])];
  return hist;
}

GeodesicCounts Graph::geodesic_distribution() const {
  GeodesicCounts out;
  out.at_distance.assign(std::size_t(n_) + 1, 0);
  std::vector<int> dist(n_);
  std::deque<int> queue;
  for (int src = 0; src < n_; ++src) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[src] = 0;
    queue.assign(1, src);
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      const std::uint8_t* ru = adj_.data() + idx(u, 0);
      for (int v = 0; v < n_; ++v) {
        if (ru[v] && dist[v] < 0) {
          dist[v] = dist[u] + 1;
          queue.push_back(v);
        }
      }
    }
    for (int v = directed_ ? 0 : src + 1; v < n_; ++v) {
      if (v == src) continue;
      if (dist[v] < 0)
        ++out.unreachable;
      else
        ++out.at_distance[dist[v]];
    }
  }
  return out;
}

}  // namespace ergm
