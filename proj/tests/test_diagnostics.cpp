#include <doctest.h>

#include <cmath>

#include "ergm/diagnostics.hpp"
#include "ergm/rng.hpp"

using ergm::autocorrelation;
using ergm::ChainOutput;
using ergm::effective_sample_size;
using ergm::Rng;
using ergm::StatVector;

namespace {

std::vector<double> ar1_series(double rho, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> x(n);
  x[0] = rng.normal();
  const double innovation_sd = std::sqrt(1.0 - rho * rho);
  for (std::size_t t = 1; t < n; ++t)
    x[t] = rho * x[t - 1] + innovation_sd * rng.normal();
  return x;
}

}  // namespace

TEST_CASE("acf basics") {
  auto x = ar1_series(0.0, 20000, 1);
  auto acf = autocorrelation(x, 40);
  CHECK(acf[0] == 1.0);
  int outliers = 0;
  for (int k = 1; k <= 40; ++k) {
    CHECK(std::abs(acf[std::size_t(k)]) <= 1.0);
    if (std::abs(acf[std::size_t(k)]) >= 3.0 / std::sqrt(20000.0)) ++outliers;
  }
  CHECK(outliers <= 3);  // ~1% of 40 lags expected outside 3 sigma

  auto rho9 = ar1_series(0.9, 60000, 2);
  auto acf9 = autocorrelation(rho9, 20);
  for (int k = 1; k <= 10; ++k)
    CHECK(acf9[std::size_t(k)] ==
          doctest::Approx(std::pow(0.9, k)).epsilon(0.12));

  std::vector<double> constant(100, 4.2);
  auto degenerate = autocorrelation(constant, 5);
  CHECK(degenerate[0] == 1.0);
  CHECK(std::isnan(degenerate[1]));

  CHECK_THROWS_AS(autocorrelation(std::vector<double>(5, 0.0), 10),
                  std::invalid_argument);
}

TEST_CASE("effective sample size") {
  auto iid = ar1_series(0.0, 20000, 3);
  auto ess = effective_sample_size(iid);
  CHECK_FALSE(ess.degenerate);
  CHECK(ess.value == doctest::Approx(20000).epsilon(0.10));

  auto rho9 = ar1_series(0.9, 60000, 4);
  const double expect = 60000.0 * (1.0 - 0.9) / (1.0 + 0.9);
  auto ess9 = effective_sample_size(rho9);
  CHECK(ess9.value == doctest::Approx(expect).epsilon(0.20));

  std::vector<double> constant(200, 1.0);
  auto flagged = effective_sample_size(constant);
  CHECK(flagged.degenerate);
  CHECK(flagged.value == 200.0);
}

TEST_CASE("summarize pools chains correctly") {
  ChainOutput a, b;
  a.draws.resize(4, 1);
  a.draws << 1.0, 1.0, 1.0, 1.0;
  a.acceptance_overall = 0.5;
  auto single = ergm::summarize({a}, 0.0);
  CHECK(single.pooled_mean[0] == 1.0);
  CHECK(single.pooled_sd[0] == 0.0);

  // hand-computed pooled moments for two synthetic chains
  a.draws << 1.0, 2.0, 3.0, 4.0;
  b = a;
  b.draws << 5.0, 6.0, 7.0, 8.0;
  auto two = ergm::summarize({a, b}, 0.0);
  CHECK(two.chain_means(0, 0) == doctest::Approx(2.5));
  CHECK(two.chain_means(1, 0) == doctest::Approx(6.5));
  CHECK(two.pooled_mean[0] == doctest::Approx(4.5));
  // pooled sd over {1..8}: sqrt(42/7 / ... ) = sqrt(6)
  CHECK(two.pooled_sd[0] == doctest::Approx(std::sqrt(6.0)));
  // pooled mean equals the equal-weight mean of chain means
  CHECK(two.pooled_mean[0] ==
        doctest::Approx((two.chain_means(0, 0) + two.chain_means(1, 0)) / 2));

  // invariant to chain ordering
  auto swapped = ergm::summarize({b, a}, 0.0);
  CHECK(swapped.pooled_mean[0] == two.pooled_mean[0]);
  CHECK(swapped.pooled_sd[0] == two.pooled_sd[0]);

  // burn-in discards the leading fraction
  auto burned = ergm::summarize({a}, 0.5);
  CHECK(burned.pooled_mean[0] == doctest::Approx(3.5));

  CHECK_THROWS_AS(ergm::summarize({}, 0.1), std::invalid_argument);
}

TEST_CASE("ess does not exceed length on positively correlated chains") {
  for (std::uint64_t seed = 10; seed < 13; ++seed) {
    auto x = ar1_series(0.7, 20000, seed);
    auto ess = effective_sample_size(x);
    CHECK(ess.value <= 20000.0);
    CHECK(ess.value > 0.0);
  }
}
