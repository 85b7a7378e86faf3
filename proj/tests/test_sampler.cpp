#include <doctest.h>

#include <cmath>
#include <map>

#include "ergm/sampler.hpp"
#include "oracles.hpp"

using ergm::Dyad;
using ergm::Graph;
using ergm::ModelSpec;
using ergm::ProposalKind;
using ergm::Rng;
using ergm::SamplerConfig;
using ergm::StatVector;

TEST_CASE("tnt proposal handles degenerate graphs") {
  Rng rng(1);
  Graph empty(4, false);
  for (int rep = 0; rep < 50; ++rep) {
    auto p = tnt_propose(empty, rng);
    CHECK_FALSE(empty.has_edge(p.dyad));
    // forced empty-set pick 1/6 vs. reverse edge pick 1/2
    CHECK(p.log_hastings == doctest::Approx(std::log(0.5) - std::log(1.0 / 6.0)));
  }
  Graph full(3, false);
  full.toggle({0, 1});
  full.toggle({0, 2});
  full.toggle({1, 2});
  std::map<std::pair<int, int>, int> seen;
  for (int rep = 0; rep < 600; ++rep) {
    auto p = tnt_propose(full, rng);
    CHECK(full.has_edge(p.dyad));
    ++seen[{p.dyad.i, p.dyad.j}];
  }
  CHECK(seen.size() == 3);  // all three edges proposed
}

TEST_CASE("tnt detailed balance: forward and reverse log ratios cancel") {
  Rng rng(2);
  auto spec = ModelSpec::parse("edges, kstar2, triangle", false);
  StatVector theta(3);
  theta << -0.4, 0.2, 0.1;
  for (int rep = 0; rep < 200; ++rep) {
    Graph g = oracle::random_graph(6, false, 0.4, rng);
    int i = int(rng.uniform_below(6)), j = int(rng.uniform_below(6));
    if (i == j) continue;
    Dyad d = g.canonical({i, j});
    const double sign = g.has_edge(d) ? -1.0 : 1.0;
    const double forward =
        sign * theta.dot(change_stats(g, d, spec)) + tnt_log_hastings(g, d);
    Graph h = g;
    h.toggle(d);
    const double backward =
        -sign * theta.dot(change_stats(h, d, spec)) + tnt_log_hastings(h, d);
    CHECK(std::abs(forward + backward) < 1e-10);
  }
}

TEST_CASE("seed determinism") {
  auto spec = ModelSpec::parse("edges, triangle", false);
  StatVector theta(2);
  theta << -0.5, 0.3;
  Graph init(8, false);
  SamplerConfig cfg{ProposalKind::TNT, 5000, 77, 0};
  Graph a = sample_graph(theta, spec, init, cfg);
  Graph b = sample_graph(theta, spec, init, cfg);
  CHECK(oracle::adjacency(a) == oracle::adjacency(b));
  cfg.seed = 78;
  Graph c = sample_graph(theta, spec, init, cfg);
  CHECK(oracle::adjacency(a) != oracle::adjacency(c));
}

TEST_CASE("uniform-at-zero and binomial edge law on n=4") {
  // theta = 0 with the uniform proposal: all 64 graphs equally likely
  auto spec = ModelSpec::parse("edges", false);
  StatVector zero = StatVector::Zero(1);
  Graph g(4, false);
  Rng rng(5);
  StatVector s = global_stats(g, spec);
  std::vector<std::int64_t> visits(64, 0);
  const int steps = 200000;
  for (int chunk = 0; chunk < steps; ++chunk) {
    mh_run(g, zero, spec, ProposalKind::UniformDyad, 1, rng, s);
    s = global_stats(g, spec);
    ++visits[oracle::graph_mask(g)];
  }
  double tv = 0.0;
  for (auto v : visits) tv += std::abs(double(v) / steps - 1.0 / 64.0);
  CHECK(tv / 2 < 0.02);

  // edges-only theta = -1: edge count is Binomial(6, e^-1/(1+e^-1))
  StatVector theta(1);
  theta << -1.0;
  Graph h(4, false);
  Rng rng2(6);
  StatVector hs = global_stats(h, spec);
  std::vector<std::int64_t> counts(7, 0);
  for (int step = 0; step < 200000; ++step) {
    auto r = mh_run(h, theta, spec, ProposalKind::TNT, 1, rng2, hs);
    hs = r.final_stats;
    ++counts[std::size_t(h.edge_count())];
  }
  const double p = std::exp(-1.0) / (1.0 + std::exp(-1.0));
  double tv2 = 0.0;
  for (int e = 0; e <= 6; ++e) {
    const double binom = std::exp(std::lgamma(7.0) - std::lgamma(e + 1.0) -
                                  std::lgamma(7.0 - e)) *
                         std::pow(p, e) * std::pow(1 - p, 6 - e);
    tv2 += std::abs(double(counts[e]) / 200000 - binom);
  }
  CHECK(tv2 / 2 < 0.02);
}

TEST_CASE("stats trace thinning and zero-parameter mean") {
  auto spec = ModelSpec::parse("edges", false);
  StatVector zero = StatVector::Zero(1);
  Graph init(4, false);
  SamplerConfig cfg{ProposalKind::TNT, 60000, 9, 10};
  auto trace = stats_trace(zero, spec, init, cfg);
  CHECK(trace.size() == 6000);
  double mean = 0.0;
  for (const auto& s : trace) mean += s[0];
  mean /= double(trace.size());
  CHECK(mean == doctest::Approx(3.0).epsilon(0.05));
}
