#include <doctest.h>

#include <cmath>

#include "ergm/graph.hpp"
#include "ergm/rng.hpp"
#include "ergm/statistics.hpp"
#include "oracles.hpp"

using ergm::Dyad;
using ergm::Graph;
using ergm::ModelSpec;
using ergm::Rng;
using ergm::StatisticTerm;
using ergm::StatVector;
using ergm::TermKind;

namespace {

Graph triangle() {
  Graph g(3, false);
  g.toggle({0, 1});
  g.toggle({1, 2});
  g.toggle({0, 2});
  return g;
}

ModelSpec undirected_all() {
  return ModelSpec::parse(
      "edges, kstar2, kstar3, triangle, gwdegree(0.8), gwesp(0.8)", false);
}

ModelSpec directed_all() {
  return ModelSpec::parse("edges, mutual, ctriple", true);
}

}  // namespace

TEST_CASE("term parsing") {
  CHECK(StatisticTerm::parse("Edges").kind == TermKind::Edges);
  CHECK(StatisticTerm::parse(" KSTAR2 ").kind == TermKind::TwoStars);
  CHECK(StatisticTerm::parse("gwdegree(0.8)").decay == doctest::Approx(0.8));
  CHECK(StatisticTerm::parse("GWESP(2.0)").kind == TermKind::GWESP);
  CHECK_THROWS_AS(StatisticTerm::parse("kstar4"), std::invalid_argument);
  CHECK_THROWS_AS(StatisticTerm::parse("gwesp(-1)"), std::invalid_argument);
  CHECK_THROWS_AS(StatisticTerm::parse("gwesp(x)"), std::invalid_argument);
  CHECK_THROWS_AS(ModelSpec::parse("edges, mutual", false), std::invalid_argument);
  CHECK_THROWS_AS(ModelSpec::parse("edges, triangle", true), std::invalid_argument);
  CHECK_THROWS_AS(ModelSpec::parse("", false), std::invalid_argument);
  CHECK(ModelSpec::parse("edges, kstar2", false).dim() == 2);
}

TEST_CASE("global stats on hand-checkable graphs") {
  auto spec = ModelSpec::parse("edges, kstar2, triangle", false);
  StatVector s = global_stats(triangle(), spec);
  CHECK(s[0] == 3.0);
  CHECK(s[1] == 3.0);
  CHECK(s[2] == 1.0);

  // one edge: gwdegree collapses to 2 for any decay
  for (double phi : {0.0, 0.1, 0.8, 2.0}) {
    Graph g(6, false);
    g.toggle({1, 4});
    auto gw = ModelSpec{{{TermKind::GWDegree, phi}}, false};
    CHECK(global_stats(g, gw)[0] == doctest::Approx(2.0).epsilon(1e-12));
    // one triangle: gwesp collapses to 3 for any decay
    auto ge = ModelSpec{{{TermKind::GWESP, phi}}, false};
    CHECK(global_stats(triangle(), ge)[0] == doctest::Approx(3.0).epsilon(1e-12));
  }

  Graph d(3, true);
  d.toggle({0, 1});
  d.toggle({1, 0});
  d.toggle({1, 2});
  StatVector sd = global_stats(d, directed_all());
  CHECK(sd[0] == 3.0);
  CHECK(sd[1] == 1.0);
  CHECK(sd[2] == 0.0);
  d.toggle({2, 0});
  CHECK(global_stats(d, directed_all())[2] == 1.0);

  CHECK_THROWS_AS(global_stats(d, undirected_all()), std::invalid_argument);
}

TEST_CASE("global stats match brute force on random graphs") {
  Rng rng(101);
  for (int rep = 0; rep < 100; ++rep) {
    Graph g = oracle::random_graph(7, false, 0.2 + 0.6 * rng.uniform01(), rng);
    StatVector got = global_stats(g, undirected_all());
    StatVector want = oracle::global_stats_bf(g, undirected_all());
    for (int t = 0; t < got.size(); ++t)
      CHECK(got[t] == doctest::Approx(want[t]).epsilon(1e-12));
  }
  for (int rep = 0; rep < 100; ++rep) {
    Graph g = oracle::random_graph(7, true, 0.2 + 0.6 * rng.uniform01(), rng);
    StatVector got = global_stats(g, directed_all());
    StatVector want = oracle::global_stats_bf(g, directed_all());
    for (int t = 0; t < got.size(); ++t) CHECK(got[t] == want[t]);
  }
}

TEST_CASE("change statistics: simple cases") {
  auto spec = ModelSpec::parse("edges, triangle", false);
  Graph path(3, false);  // 1-0-2
  path.toggle({0, 1});
  path.toggle({0, 2});
  StatVector delta = change_stats(path, {1, 2}, spec);
  CHECK(delta[0] == 1.0);
  CHECK(delta[1] == 1.0);  // one common neighbour closes one triangle
}

TEST_CASE("change statistics equal global differences on random graphs") {
  Rng rng(202);
  int checked = 0;
  for (int rep = 0; rep < 200; ++rep) {
    const bool directed = rep % 2 == 1;
    const int n = 4 + int(rng.uniform_below(5));  // 4..8
    Graph g = oracle::random_graph(n, directed, 0.15 + 0.7 * rng.uniform01(), rng);
    const ModelSpec spec = directed ? directed_all() : undirected_all();
    for (int i = 0; i < n; ++i) {
      for (int j = directed ? 0 : i + 1; j < n; ++j) {
        if (i == j) continue;
        const Dyad d{i, j};
        StatVector delta = change_stats(g, d, spec);
        Graph plus = g;
        if (!plus.has_edge(d)) plus.toggle(d);
        Graph minus = g;
        if (minus.has_edge(d)) minus.toggle(d);
        StatVector diff = global_stats(plus, spec) - global_stats(minus, spec);
        for (int t = 0; t < spec.dim(); ++t) {
          if (spec.terms[t].is_integer_valued())
            CHECK(delta[t] == diff[t]);
          else
            CHECK(std::abs(delta[t] - diff[t]) < 1e-10);
        }
        ++checked;
      }
    }
  }
  CHECK(checked > 1000);
}

TEST_CASE("path independence: summed change stats reproduce global stats") {
  Rng rng(303);
  auto spec = undirected_all();
  for (int rep = 0; rep < 20; ++rep) {
    Graph g(8, false);
    StatVector s = global_stats(g, spec);  // zeros
    for (int step = 0; step < 120; ++step) {
      int i = int(rng.uniform_below(8));
      int j = int(rng.uniform_below(8));
      if (i == j) continue;
      Dyad d = g.canonical({i, j});
      StatVector delta = change_stats(g, d, spec);
      s += g.has_edge(d) ? StatVector(-delta) : delta;
      g.toggle(d);
    }
    StatVector expect = global_stats(g, spec);
    for (int t = 0; t < spec.dim(); ++t)
      CHECK(std::abs(s[t] - expect[t]) < 1e-8);
  }
}

TEST_CASE("conditional edge probability") {
  StatVector zero = StatVector::Zero(3);
  StatVector delta(3);
  delta << 1.0, -2.0, 0.5;
  CHECK(ergm::conditional_edge_probability(zero, delta) == doctest::Approx(0.5));

  StatVector theta(1), d1(1);
  theta << std::log(0.125 / 0.875);
  d1 << 1.0;
  CHECK(ergm::conditional_edge_probability(theta, d1) == doctest::Approx(0.125));

  // matches the two-sided unnormalised-likelihood ratio
  Rng rng(404);
  auto spec = ModelSpec::parse("edges, kstar2, triangle", false);
  for (int rep = 0; rep < 40; ++rep) {
    Graph g = oracle::random_graph(6, false, 0.5, rng);
    StatVector theta3(3);
    theta3 << rng.normal(), rng.normal(), rng.normal();
    const Dyad d{int(rng.uniform_below(5)), 5};
    Graph plus = g, minus = g;
    if (!plus.has_edge(d)) plus.toggle(d);
    if (minus.has_edge(d)) minus.toggle(d);
    const double a = theta3.dot(global_stats(plus, spec));
    const double b = theta3.dot(global_stats(minus, spec));
    const double want = std::exp(a) / (std::exp(a) + std::exp(b));
    const double got = ergm::conditional_edge_probability(
        theta3, change_stats(g, d, spec));
    CHECK(got == doctest::Approx(want).epsilon(1e-10));
  }
}
