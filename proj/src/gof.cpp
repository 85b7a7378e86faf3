#include "ergm/gof.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ergm/parallel.hpp"

namespace ergm {
namespace {

// Raw summary vectors of one graph, fixed bin layout per family.
struct Summaries {
  std::vector<double> degree, in_degree, out_degree, esp, geodesic;
};

Summaries summarize_graph(const Graph& g) {
  Summaries s;
  const int n = g.node_count();
  if (g.directed()) {
    auto in = g.in_degree_histogram();
    auto out = g.out_degree_histogram();
    s.in_degree.assign(in.begin(), in.end());
    s.out_degree.assign(out.begin(), out.end());
  } else {
    auto deg = g.degree_histogram();
    s.degree.assign(deg.begin(), deg.end());
  }
  // shared partners of existing edges, same formula either way
  s.esp.assign(std::size_t(std::max(1, n - 1)), 0.0);
  for (std::int64_t e = 0; e < g.edge_count(); ++e)
    s.esp[std::size_t(g.shared_partner_count(g.edge_at(e)))] += 1.0;
  // geodesic proportions over all pairs, unreachable last
  const auto geo = g.geodesic_distribution();
  const double pairs = double(g.dyad_count());
  s.geodesic.assign(std::size_t(n) + 1, 0.0);
  for (std::size_t l = 1; l < geo.at_distance.size() && l <= std::size_t(n); ++l)
    s.geodesic[l - 1] = double(geo.at_distance[l]) / pairs;
  s.geodesic[std::size_t(n)] = double(geo.unreachable) / pairs;
  return s;
}

GofBand make_band(const std::string& family, const std::vector<double>& obs,
                  std::vector<std::vector<double>>& sims, bool geodesic,
                  int node_count) {
  GofBand band;
  band.family = family;
  const std::size_t bins = obs.size();
  band.observed = obs;
  band.p5.resize(bins);
  band.p50.resize(bins);
  band.p95.resize(bins);
  std::vector<double> column(sims.size());
  for (std::size_t b = 0; b < bins; ++b) {
    for (std::size_t i = 0; i < sims.size(); ++i) column[i] = sims[i][b];
    std::sort(column.begin(), column.end());
    auto pick = [&](double q) {
      const double pos = q * double(column.size() - 1);
      const std::size_t lo = std::size_t(std::floor(pos));
      const std::size_t hi = std::size_t(std::ceil(pos));
      const double frac = pos - double(lo);
      return (1.0 - frac) * column[lo] + frac * column[hi];
    };
    band.p5[b] = pick(0.05);
    band.p50[b] = pick(0.50);
    band.p95[b] = pick(0.95);
    if (geodesic)
      band.bin_labels.push_back(b + 1 <= std::size_t(node_count)
                                    ? std::to_string(b + 1)
                                    : "inf");
    else
      band.bin_labels.push_back(std::to_string(b));
  }
  return band;
}

// Drop trailing bins that carry no mass anywhere, keeping at least `keep`.
void trim_band(GofBand& band, std::size_t keep) {
  std::size_t last = band.observed.size();
  while (last > keep) {
    const std::size_t b = last - 1;
    if (band.observed[b] > 0.0 || band.p95[b] > 0.0) break;
    --last;
  }
  band.observed.resize(last);
  band.p5.resize(last);
  band.p50.resize(last);
  band.p95.resize(last);
  band.bin_labels.resize(last);
}

}  // namespace

GofReport bayesian_gof(const Graph& observed, const ModelSpec& spec,
                       const Eigen::MatrixXd& draws, int count,
                       const SamplerConfig& aux, std::uint64_t seed,
                       int threads) {
  spec.validate();
  if (draws.rows() == 0) throw std::invalid_argument("no posterior draws");
  if (draws.cols() != spec.dim())
    throw std::invalid_argument("draw dimension does not match model");
  if (count < 1 || count > draws.rows())
    throw std::invalid_argument("count must be in [1, number of draws]");

  // uniform thinning across the pooled draws
  std::vector<std::int64_t> picks(static_cast<std::size_t>(count));
  const double stride = double(draws.rows()) / double(count);
  for (int i = 0; i < count; ++i)
    picks[std::size_t(i)] = std::min<std::int64_t>(
        draws.rows() - 1, std::int64_t(std::floor((double(i) + 0.5) * stride)));

  const StatVector s_obs = global_stats(observed, spec);
  std::vector<Summaries> sims(static_cast<std::size_t>(count));
  parallel_for(count, threads, [&](std::int64_t i) {
    Rng rng(Rng::derive(seed, std::uint64_t(i)));
    Graph g = observed;
    const StatVector theta = draws.row(picks[std::size_t(i)]);
    mh_run(g, theta, spec, aux.proposal, aux.iterations, rng, s_obs);
    sims[std::size_t(i)] = summarize_graph(g);
  });
  const Summaries obs = summarize_graph(observed);

  GofReport report;
  report.directed = observed.directed();
  auto collect = [&](const std::string& family,
                     const std::vector<double> Summaries::* member,
                     bool geodesic) {
    std::vector<std::vector<double>> columns(sims.size());
    for (std::size_t i = 0; i < sims.size(); ++i) columns[i] = sims[i].*member;
    GofBand band = make_band(family, obs.*member, columns, geodesic,
                             observed.node_count());
    trim_band(band, geodesic ? std::size_t(2) : std::size_t(5));
    report.families.push_back(std::move(band));
  };
  if (observed.directed()) {
    collect("in-degree", &Summaries::in_degree, false);
    collect("out-degree", &Summaries::out_degree, false);
  } else {
    collect("degree", &Summaries::degree, false);
  }
  collect("esp", &Summaries::esp, false);
  collect("geodesic", &Summaries::geodesic, true);
  return report;
}

double gof_coverage(const GofReport& report) {
  std::int64_t occupied = 0, inside = 0;
  for (const auto& band : report.families) {
    for (std::size_t b = 0; b < band.observed.size(); ++b) {
      if (band.observed[b] <= 0.0 && band.p95[b] <= 0.0) continue;
      ++occupied;
      if (band.observed[b] >= band.p5[b] && band.observed[b] <= band.p95[b])
        ++inside;
    }
  }
  return occupied == 0 ? 1.0 : double(inside) / double(occupied);
}

}  // namespace ergm
