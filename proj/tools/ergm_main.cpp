#include <CLI11.hpp>

#include <iostream>

#include "ergm/datasets.hpp"
#include "ergm/io.hpp"

namespace {

// Shared flag wiring: every RunConfig field has a flag twin; a --config file
// is loaded first and flags override it.
struct CommonArgs {
  std::string config_path;

  void attach_global(CLI::App& app, ergm::RunConfig& cfg) {
    app.add_option("--config", config_path, "key = value configuration file");
    app.add_option("--seed", cfg.seed, "master RNG seed");
    app.add_option("--out", cfg.out, "output directory");
  }
};

void attach_model(CLI::App& app, ergm::RunConfig& cfg) {
  app.add_option("--dataset", cfg.dataset, "edge-list file");
  app.add_option("--model", cfg.model,
                 "comma-separated terms, e.g. 'edges,kstar2'");
}

void attach_sampler(CLI::App& app, ergm::RunConfig& cfg) {
  app.add_option("--aux-iterations", cfg.aux_iterations,
                 "auxiliary sampler steps per draw");
  app.add_option("--aux-proposal", cfg.aux_proposal, "tnt or uniform");
}

void attach_prior(CLI::App& app, ergm::RunConfig& cfg) {
  app.add_option("--prior-variance", cfg.prior_variance,
                 "isotropic prior variance");
  app.add_option("--prior-mean", cfg.prior_mean, "prior mean components")
      ->delimiter(',');
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exponential random graph models: simulation, classical and "
               "Bayesian estimation, goodness of fit"};
  app.require_subcommand(1);

  ergm::RunConfig cfg;
  CommonArgs common;
  std::string fetch_dir = "data";

  auto* simulate = app.add_subcommand("simulate",
                                      "sample graphs and record a statistics trace");
  auto* mple = app.add_subcommand("mple", "maximum pseudolikelihood fit");
  auto* mcmle = app.add_subcommand("mcmle", "Monte Carlo maximum likelihood fit");
  auto* exchange = app.add_subcommand("exchange",
                                      "single-site exchange posterior sampling");
  auto* pop = app.add_subcommand("pop-exchange",
                                 "population exchange with parallel ADS moves");
  auto* gof = app.add_subcommand("gof", "Bayesian goodness of fit");
  auto* fetch = app.add_subcommand("fetch-data",
                                   "materialize/verify the benchmark datasets");
  auto* summ = app.add_subcommand("summarize",
                                  "posterior summary and ACF from a draws file");

  for (CLI::App* sub : {simulate, mple, mcmle, exchange, pop, gof, summ}) {
    common.attach_global(*sub, cfg);
    sub->add_option("--threads", cfg.threads, "worker threads (0 = auto)");
  }
  for (CLI::App* sub : {simulate, mple, mcmle, exchange, pop, gof})
    attach_model(*sub, cfg);
  for (CLI::App* sub : {mcmle, exchange, pop, gof}) attach_sampler(*sub, cfg);
  for (CLI::App* sub : {exchange, pop}) {
    attach_prior(*sub, cfg);
    sub->add_option("--main-iterations", cfg.main_iterations,
                    "posterior iterations (sweeps / per-chain)");
    sub->add_option("--proposal-sd", cfg.proposal_sd,
                    "random-walk scales, one per component")
        ->delimiter(',');
    sub->add_option("--burn-in", cfg.burn_in, "summary burn-in fraction");
    sub->add_option("--init", cfg.init, "starting parameter vector")
        ->delimiter(',');
    sub->add_flag("--record-aux-stats", cfg.record_aux_stats,
                  "log auxiliary statistics per proposal");
  }

  simulate->add_option("--theta", cfg.theta, "parameter vector")
      ->delimiter(',');
  simulate->add_option("--iterations", cfg.main_iterations, "sampler steps");
  simulate->add_option("--record-every", cfg.record_every, "trace thinning");
  simulate->add_option("--aux-proposal", cfg.aux_proposal, "tnt or uniform");

  mcmle->add_option("--samples", cfg.mcmle_samples, "reference sample size");
  mcmle->add_option("--theta0", cfg.theta0,
                    "reference parameters (default: the MPLE)")
      ->delimiter(',');

  pop->add_option("--chains", cfg.chains, "population size H (0 = 2d)");
  pop->add_option("--gamma", cfg.gamma, "ADS direction factor");
  pop->add_option("--epsilon-variance", cfg.epsilon_variance,
                  "ADS noise variance (isotropic)");
  pop->add_option("--warmup-fraction", cfg.warmup_fraction,
                  "block-update phase length");

  gof->add_option("--draws", cfg.draws_file, "posterior draws CSV");
  gof->add_option("--count", cfg.gof_count, "simulated graphs");

  summ->add_option("--draws", cfg.draws_file, "draws CSV to summarize");
  summ->add_option("--burn-in", cfg.burn_in, "burn-in fraction");
  summ->add_option("--max-lag", cfg.max_lag, "ACF depth");

  fetch->add_option("--dir", fetch_dir, "data directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (fetch->parsed()) {
      const auto statuses = ergm::fetch_datasets(fetch_dir);
      for (const auto& s : statuses)
        std::cout << s.name << ": " << s.state << "\n";
      return 0;
    }
    // figure out which subcommand ran and merge config file under the flags
    CLI::App* active = app.get_subcommands().front();
    if (!common.config_path.empty()) {
      ergm::RunConfig from_file =
          ergm::parse_config_file(common.config_path);
      // flags win: re-apply every option the user actually passed
      ergm::RunConfig merged = from_file;
      merged.algorithm = active->get_name();
      auto take_if = [&](const std::string& flag, auto member) {
        if (active->count(flag) > 0) merged.*member = cfg.*member;
      };
      take_if("--seed", &ergm::RunConfig::seed);
      take_if("--out", &ergm::RunConfig::out);
      take_if("--dataset", &ergm::RunConfig::dataset);
      take_if("--model", &ergm::RunConfig::model);
      take_if("--aux-iterations", &ergm::RunConfig::aux_iterations);
      take_if("--aux-proposal", &ergm::RunConfig::aux_proposal);
      take_if("--prior-variance", &ergm::RunConfig::prior_variance);
      take_if("--prior-mean", &ergm::RunConfig::prior_mean);
      take_if("--main-iterations", &ergm::RunConfig::main_iterations);
      take_if("--iterations", &ergm::RunConfig::main_iterations);
      take_if("--proposal-sd", &ergm::RunConfig::proposal_sd);
      take_if("--burn-in", &ergm::RunConfig::burn_in);
      take_if("--init", &ergm::RunConfig::init);
      take_if("--theta", &ergm::RunConfig::theta);
      take_if("--theta0", &ergm::RunConfig::theta0);
      take_if("--samples", &ergm::RunConfig::mcmle_samples);
      take_if("--chains", &ergm::RunConfig::chains);
      take_if("--gamma", &ergm::RunConfig::gamma);
      take_if("--epsilon-variance", &ergm::RunConfig::epsilon_variance);
      take_if("--warmup-fraction", &ergm::RunConfig::warmup_fraction);
      take_if("--record-every", &ergm::RunConfig::record_every);
      take_if("--draws", &ergm::RunConfig::draws_file);
      take_if("--count", &ergm::RunConfig::gof_count);
      take_if("--threads", &ergm::RunConfig::threads);
      take_if("--max-lag", &ergm::RunConfig::max_lag);
      if (active->count("--record-aux-stats") > 0)
        merged.record_aux_stats = cfg.record_aux_stats;
      return ergm::run(merged);
    }
    cfg.algorithm = active->get_name();
    return ergm::run(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
