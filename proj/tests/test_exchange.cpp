#include <doctest.h>

#include <cmath>

#include "ergm/diagnostics.hpp"
#include "ergm/exchange.hpp"
#include "oracles.hpp"

using ergm::AuxRecord;
using ergm::ExchangeConfig;
using ergm::Graph;
using ergm::ModelSpec;
using ergm::Prior;
using ergm::ProposalKind;
using ergm::Rng;
using ergm::StatVector;

namespace {

StatVector vec2(double a, double b) {
  StatVector v(2);
  v << a, b;
  return v;
}

}  // namespace

TEST_CASE("exchange log alpha identities") {
  Prior prior = Prior::isotropic(2, 30.0);
  const StatVector theta = vec2(-1.0, 0.3);
  const StatVector s_obs = vec2(15.0, 36.0);
  const StatVector s_aux = vec2(40.0, 200.0);

  // identical proposal: always accept
  CHECK(exchange_log_alpha(theta, theta, s_obs, s_aux, prior) == 0.0);

  // matched statistics and equal prior density: zero
  const StatVector theta_mirror = vec2(1.0, -0.3);  // same norm, zero mean prior
  CHECK(std::abs(exchange_log_alpha(theta, theta_mirror, s_obs, s_obs,
                                    prior)) < 1e-12);

  // matches the four-factor unnormalised ratio computed term by term
  Rng rng(31);
  for (int rep = 0; rep < 50; ++rep) {
    const StatVector t = vec2(rng.normal(), rng.normal());
    const StatVector tp = vec2(rng.normal(), rng.normal());
    const StatVector so = vec2(10.0 * rng.uniform01(), 50.0 * rng.uniform01());
    const StatVector sa = vec2(10.0 * rng.uniform01(), 50.0 * rng.uniform01());
    const double direct = tp.dot(so) + prior.log_density(tp) + t.dot(sa) -
                          t.dot(so) - prior.log_density(t) - tp.dot(sa);
    CHECK(exchange_log_alpha(t, tp, so, sa, prior) ==
          doctest::Approx(direct).epsilon(1e-10));
    // antisymmetry under swapping the roles of theta and theta'
    CHECK(exchange_log_alpha(t, tp, so, sa, prior) ==
          doctest::Approx(-exchange_log_alpha(tp, t, so, sa, prior))
              .epsilon(1e-10));
  }
}

TEST_CASE("exchange posterior matches quadrature for a Bernoulli model") {
  // edges-only model: z(theta) = (1+e^theta)^Nd is available in closed form,
  // so the posterior has a numeric gold standard.
  Rng rng(32);
  Graph g = oracle::random_graph(10, false, 0.3, rng);
  const double dyads = double(g.dyad_count());
  const double e_obs = double(g.edge_count());

  auto spec = ModelSpec::parse("edges", false);
  Prior prior = Prior::isotropic(1, 30.0);
  ExchangeConfig cfg;
  cfg.main_iterations = 6000;
  cfg.aux = {ProposalKind::TNT, 500, 0, 0};
  cfg.proposal_sd = {0.6};
  cfg.seed = 99;
  auto chain = run_exchange(g, spec, prior, cfg);

  // quadrature of the exactly normalised posterior
  const double lo = -8.0, hi = 8.0;
  const int cells = 4000;
  std::vector<double> density(cells), center(cells);
  double total = 0.0;
  for (int c = 0; c < cells; ++c) {
    const double x = lo + (hi - lo) * (c + 0.5) / cells;
    center[c] = x;
    const double log_post = x * e_obs - dyads * std::log1p(std::exp(x)) -
                            0.5 * x * x / 30.0;
    density[c] = std::exp(log_post);
    total += density[c];
  }
  double quad_mean = 0.0;
  for (int c = 0; c < cells; ++c) {
    density[c] /= total;
    quad_mean += center[c] * density[c];
  }

  // compare on the post burn-in draws
  const std::int64_t burn = 600;
  std::vector<double> draws;
  for (std::int64_t t = burn; t < chain.draws.rows(); ++t)
    draws.push_back(chain.draws(t, 0));
  std::sort(draws.begin(), draws.end());
  double mean = 0.0;
  for (double x : draws) mean += x;
  mean /= double(draws.size());
  CHECK(std::abs(mean - quad_mean) < 0.05);

  // Kolmogorov-Smirnov distance against the quadrature CDF
  double ks = 0.0, cdf = 0.0;
  std::size_t i = 0;
  for (int c = 0; c < cells; ++c) {
    cdf += density[c];
    while (i < draws.size() && draws[i] <= center[c]) ++i;
    ks = std::max(ks, std::abs(double(i) / double(draws.size()) - cdf));
  }
  CHECK(ks < 0.05);
}

TEST_CASE("exchange is seed deterministic and records acceptance") {
  Rng rng(33);
  Graph g = oracle::random_graph(8, false, 0.3, rng);
  auto spec = ModelSpec::parse("edges, kstar2", false);
  Prior prior = Prior::isotropic(2, 30.0);
  ExchangeConfig cfg;
  cfg.main_iterations = 200;
  cfg.aux = {ProposalKind::TNT, 200, 0, 0};
  cfg.proposal_sd = {1.0, std::sqrt(0.1)};
  cfg.seed = 7;
  cfg.record_aux_stats = true;
  auto a = run_exchange(g, spec, prior, cfg);
  auto b = run_exchange(g, spec, prior, cfg);
  CHECK(a.draws == b.draws);
  CHECK(a.acceptance_overall == b.acceptance_overall);
  CHECK(a.aux_log.size() == 400);  // one per component update
  CHECK(a.acceptance_overall >= 0.0);
  CHECK(a.acceptance_overall <= 1.0);
  for (double r : a.acceptance_per_component) {
    CHECK(r >= 0.0);
    CHECK(r <= 1.0);
  }

  cfg.seed = 8;
  auto c = run_exchange(g, spec, prior, cfg);
  CHECK(a.draws != c.draws);
}

TEST_CASE("start-point robustness on the pedagogical model shape") {
  // two far-apart starts, one in the degenerate region, agree after the
  // first thousand sweeps
  Rng rng(34);
  Graph g = oracle::random_graph(16, false, 0.125, rng);
  auto spec = ModelSpec::parse("edges, kstar2", false);
  Prior prior = Prior::isotropic(2, 30.0);
  ExchangeConfig cfg;
  cfg.main_iterations = 4000;
  cfg.aux = {ProposalKind::TNT, 500, 0, 0};
  cfg.proposal_sd = {1.0, std::sqrt(0.1)};
  cfg.seed = 41;
  cfg.init = vec2(2.0, 1.0);  // degenerate region
  auto high = run_exchange(g, spec, prior, cfg);
  cfg.seed = 42;
  cfg.init = vec2(-6.0, -1.0);
  auto low = run_exchange(g, spec, prior, cfg);
  // the chains must agree within their own Monte Carlo error after the
  // first thousand sweeps
  auto tail_stats = [](const ergm::ChainOutput& c, int k) {
    std::vector<double> tail;
    for (std::int64_t t = 1000; t < c.draws.rows(); ++t)
      tail.push_back(c.draws(t, k));
    double m = 0.0;
    for (double x : tail) m += x;
    m /= double(tail.size());
    double var = 0.0;
    for (double x : tail) var += (x - m) * (x - m);
    var /= double(tail.size() - 1);
    const double ess = ergm::effective_sample_size(tail).value;
    return std::pair{m, var / std::max(ess, 2.0)};
  };
  for (int k = 0; k < 2; ++k) {
    const auto [mh, vh] = tail_stats(high, k);
    const auto [ml, vl] = tail_stats(low, k);
    CHECK(std::abs(mh - ml) < 3.5 * std::sqrt(vh + vl));
  }
}

TEST_CASE("degeneracy monitor fractions") {
  std::vector<AuxRecord> log;
  StatVector empty(1), full(1), mid(1), low(1);
  empty << 0.0;
  full << 28.0;  // complete 8-node graph
  mid << 14.0;
  low << 1.0;  // within 5% of empty
  log.push_back({empty, false});
  log.push_back({full, true});
  log.push_back({mid, true});
  log.push_back({low, false});
  auto rep = degeneracy_monitor(log, 8, false, 0, 0.05);
  CHECK(rep.total == 4);
  CHECK(rep.empty_fraction == doctest::Approx(0.25));
  CHECK(rep.complete_fraction == doctest::Approx(0.25));
  CHECK(rep.near_extreme_fraction == doctest::Approx(0.75));
  CHECK(rep.accepted == 2);
  CHECK(rep.accepted_complete_fraction == doctest::Approx(0.5));
  CHECK(rep.accepted_empty_fraction == doctest::Approx(0.0));

  std::vector<AuxRecord> all_empty(5, {empty, false});
  CHECK(degeneracy_monitor(all_empty, 8, false).empty_fraction == 1.0);
  CHECK_THROWS_AS(ergm::degeneracy_monitor({}, 8, false), std::invalid_argument);
}

TEST_CASE("accepted proposals track the observed statistics") {
  Rng rng(35);
  Graph g = oracle::random_graph(16, false, 0.125, rng);
  auto spec = ModelSpec::parse("edges, kstar2", false);
  const double e_obs = global_stats(g, spec)[0];
  Prior prior = Prior::isotropic(2, 30.0);
  ExchangeConfig cfg;
  cfg.main_iterations = 1500;
  cfg.aux = {ProposalKind::TNT, 500, 0, 0};
  cfg.proposal_sd = {1.0, std::sqrt(0.1)};
  cfg.seed = 77;
  cfg.record_aux_stats = true;
  auto chain = run_exchange(g, spec, prior, cfg);
  double accepted_dist = 0.0, all_dist = 0.0;
  std::int64_t accepted = 0;
  for (const auto& rec : chain.aux_log) {
    all_dist += std::abs(rec.stats[0] - e_obs);
    if (rec.accepted) {
      accepted_dist += std::abs(rec.stats[0] - e_obs);
      ++accepted;
    }
  }
  REQUIRE(accepted > 10);
  accepted_dist /= double(accepted);
  all_dist /= double(chain.aux_log.size());
  CHECK(accepted_dist < all_dist);
}
