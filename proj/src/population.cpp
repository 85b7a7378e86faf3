#include "ergm/population.hpp"

#include <barrier>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace ergm {

StatVector ads_propose(const std::vector<StatVector>& states, int h,
                       double gamma, const StatVector& epsilon_draw,
                       Rng& rng) {
  const int n = static_cast<int>(states.size());
  if (n < 3) throw std::invalid_argument("parallel ADS needs at least 3 chains");
  // h1 != h2, both different from h, uniform without replacement
  int h1 = static_cast<int>(rng.uniform_below(std::uint64_t(n - 1)));
  if (h1 >= h) ++h1;
  int h2 = static_cast<int>(rng.uniform_below(std::uint64_t(n - 2)));
  for (int skip : {std::min(h, h1), std::max(h, h1)})
    if (h2 >= skip) ++h2;
  return states[std::size_t(h)] +
         gamma * (states[std::size_t(h1)] - states[std::size_t(h2)]) +
         epsilon_draw;
}

double ads_log_proposal_density(const std::vector<StatVector>& states, int h,
                                int h1, int h2, const StatVector& from,
                                const StatVector& to, double gamma,
                                const Eigen::MatrixXd& epsilon_cov) {
  const StatVector eps = to - from -
                         gamma * (states[std::size_t(h1)] -
                                  states[std::size_t(h2)]);
  Eigen::LLT<Eigen::MatrixXd> llt(epsilon_cov);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument("epsilon covariance not positive definite");
  const StatVector half = llt.matrixL().solve(eps);
  double log_det = 0.0;
  for (int i = 0; i < epsilon_cov.rows(); ++i)
    log_det += std::log(llt.matrixL()(i, i));
  return -0.5 * half.squaredNorm() - log_det -
         0.5 * double(eps.size()) * std::log(2.0 * std::numbers::pi);
}

namespace {

struct ChainWorkspace {
  StatVector theta;
  Rng rng;
  std::int64_t ads_accepted = 0;
  std::int64_t block_accepted = 0;
  ChainOutput output;
};

}  // namespace

PopulationResult run_population(const Graph& observed, const ModelSpec& spec,
                                const Prior& prior,
                                const PopulationConfig& cfg) {
  spec.validate();
  prior.validate();
  const int d = spec.dim();
  if (observed.directed() != spec.directed)
    throw std::invalid_argument("observed graph directedness mismatch");
  const int h_count = cfg.chains == 0 ? 2 * d : cfg.chains;
  if (h_count < 3)
    throw std::invalid_argument("population needs at least 3 chains");
  if (cfg.iterations_per_chain < 1)
    throw std::invalid_argument("iterations_per_chain must be >= 1");
  const std::int64_t warmup = cfg.warmup_iterations >= 0
                                  ? cfg.warmup_iterations
                                  : cfg.iterations_per_chain / 5;
  if (warmup >= cfg.iterations_per_chain)
    throw std::invalid_argument("warmup must be shorter than the run");
  Eigen::MatrixXd eps_cov = cfg.epsilon_cov.size() == 0
                                ? Eigen::MatrixXd(0.1 * Eigen::MatrixXd::Identity(d, d))
                                : cfg.epsilon_cov;
  if (eps_cov.rows() != d || eps_cov.cols() != d)
    throw std::invalid_argument("epsilon covariance shape mismatch");
  Eigen::LLT<Eigen::MatrixXd> eps_llt(eps_cov);
  if (eps_llt.info() != Eigen::Success)
    throw std::invalid_argument("epsilon covariance not positive definite");
  const Eigen::MatrixXd eps_chol = eps_llt.matrixL();
  std::vector<double> block_sd = cfg.block_proposal_sd;
  if (block_sd.empty()) block_sd.assign(std::size_t(d), 0.5);
  if (static_cast<int>(block_sd.size()) != d)
    throw std::invalid_argument("need one block proposal scale per component");
  if (!cfg.init.empty() && static_cast<int>(cfg.init.size()) != 1 &&
      static_cast<int>(cfg.init.size()) != h_count)
    throw std::invalid_argument("init must give one vector or one per chain");

  const StatVector s_obs = global_stats(observed, spec);

  std::vector<ChainWorkspace> work;
  work.reserve(std::size_t(h_count));
  for (int c = 0; c < h_count; ++c) {
    ChainWorkspace w{StatVector::Zero(d),
                     Rng(Rng::derive(cfg.seed, 0x1000 + std::uint64_t(c))),
                     0,
                     0,
                     {}};
    if (cfg.init.empty()) {
      // overdispersed start
      for (int k = 0; k < d; ++k) w.theta[k] = w.rng.normal(0.0, 3.0);
    } else {
      w.theta = cfg.init.size() == 1 ? cfg.init[0] : cfg.init[std::size_t(c)];
    }
    w.output.seed = Rng::derive(cfg.seed, 0x1000 + std::uint64_t(c));
    w.output.draws.resize(cfg.iterations_per_chain, d);
    w.output.acceptance_per_component.assign(std::size_t(d), 0.0);
    work.push_back(std::move(w));
  }

  std::vector<StatVector> snapshot(static_cast<std::size_t>(h_count));

  // One chain update against the start-of-iteration snapshot.
  auto update_chain = [&](int c, std::int64_t iter) {
    ChainWorkspace& w = work[std::size_t(c)];
    StatVector proposal(d);
    if (iter < warmup) {
      proposal = w.theta;
      for (int k = 0; k < d; ++k)
        proposal[k] += w.rng.normal(0.0, block_sd[std::size_t(k)]);
    } else {
      StatVector eps(d);
      for (int k = 0; k < d; ++k) eps[k] = w.rng.normal();
      eps = eps_chol * eps;
      proposal = ads_propose(snapshot, c, cfg.gamma, eps, w.rng);
    }
    Rng aux_rng(Rng::derive(
        cfg.seed, 0x2000 + std::uint64_t(c) * 0x10000 + std::uint64_t(iter)));
    Graph aux = observed;
    const StatVector s_aux = mh_run(aux, proposal, spec, cfg.aux.proposal,
                                    cfg.aux.iterations, aux_rng, s_obs)
                                 .final_stats;
    const double log_alpha =
        exchange_log_alpha(w.theta, proposal, s_obs, s_aux, prior);
    const bool accept =
        log_alpha >= 0.0 || std::log(w.rng.uniform01()) < log_alpha;
    if (accept) {
      w.theta = proposal;
      if (iter < warmup)
        ++w.block_accepted;
      else
        ++w.ads_accepted;
    }
    if (cfg.record_aux_stats) w.output.aux_log.push_back({s_aux, accept});
    w.output.draws.row(iter) = w.theta;
  };

  int threads = cfg.threads;
  if (threads <= 0)
    threads = static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, std::min(threads, h_count));

  if (threads == 1) {
    for (std::int64_t iter = 0; iter < cfg.iterations_per_chain; ++iter) {
      for (int c = 0; c < h_count; ++c) snapshot[std::size_t(c)] = work[std::size_t(c)].theta;
      for (int c = 0; c < h_count; ++c) update_chain(c, iter);
    }
  } else {
    // Workers advance in lockstep; the barrier completion refreshes the
    // shared snapshot between iterations.
    auto refresh = [&]() noexcept {
      for (int c = 0; c < h_count; ++c)
        snapshot[std::size_t(c)] = work[std::size_t(c)].theta;
    };
    // prime the first snapshot
    for (int c = 0; c < h_count; ++c) snapshot[std::size_t(c)] = work[std::size_t(c)].theta;
    std::barrier sync(threads, refresh);
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (std::int64_t it = 0; it < cfg.iterations_per_chain; ++it) {
          for (int c = t; c < h_count; c += threads) update_chain(c, it);
          sync.arrive_and_wait();
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  PopulationResult result;
  result.warmup_iterations = warmup;
  const std::int64_t ads_iters = cfg.iterations_per_chain - warmup;
  for (auto& w : work) {
    w.output.acceptance_overall =
        ads_iters > 0 ? double(w.ads_accepted) / double(ads_iters) : 0.0;
    result.chains.push_back(std::move(w.output));
  }
  result.pooled = summarize(
      result.chains, double(warmup) / double(cfg.iterations_per_chain));
  return result;
}

}  // namespace ergm
