#include "ergm/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "ergm/classical.hpp"
#include "ergm/datasets.hpp"
#include "ergm/population.hpp"

namespace ergm {
namespace {

using nlohmann::json;

[[noreturn]] void fail_line(const std::filesystem::path& path, int line,
                            const std::string& what) {
  throw std::runtime_error(path.string() + ":" + std::to_string(line) + ": " +
                           what);
}

std::string strip_comment(const std::string& line) {
  const auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::string piece;
  std::istringstream stream(text);
  while (std::getline(stream, piece, ',')) {
    if (piece.find_first_not_of(" \t") == std::string::npos) continue;
    out.push_back(std::stod(piece));
  }
  return out;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);  // '\n' endings everywhere
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

}  // namespace

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

Graph load_graph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  int line_no = 0;
  // header
  int n = 0;
  bool directed = false;
  for (;;) {
    if (!std::getline(in, line)) fail_line(path, line_no, "missing header");
    ++line_no;
    std::istringstream header(strip_comment(line));
    std::string flag;
    if (!(header >> n)) continue;  // blank or comment-only line
    if (!(header >> flag) || (flag != "directed" && flag != "undirected"))
      fail_line(path, line_no, "header must be '<n> directed|undirected'");
    std::string extra;
    if (header >> extra) fail_line(path, line_no, "trailing header tokens");
    if (n < 1) fail_line(path, line_no, "node count must be positive");
    directed = flag == "directed";
    break;
  }
  Graph g(n, directed);
  std::set<std::pair<int, int>> seen;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream body(strip_comment(line));
    int i, j;
    if (!(body >> i)) continue;
    if (!(body >> j)) fail_line(path, line_no, "expected two indices");
    std::string extra;
    if (body >> extra) fail_line(path, line_no, "trailing tokens");
    if (i < 0 || j < 0 || i >= n || j >= n)
      fail_line(path, line_no, "node index out of range");
    if (i == j) fail_line(path, line_no, "self-loop not allowed");
    const std::pair<int, int> key =
        directed ? std::pair{i, j} : std::pair{std::min(i, j), std::max(i, j)};
    if (!seen.insert(key).second) fail_line(path, line_no, "duplicate edge");
    g.toggle({i, j});
  }
  return g;
}

void save_graph(const Graph& g, const std::filesystem::path& path) {
  auto out = open_output(path);
  out << g.node_count() << (g.directed() ? " directed" : " undirected") << "\n";
  const int n = g.node_count();
  for (int i = 0; i < n; ++i)
    for (int j = g.directed() ? 0 : i + 1; j < n; ++j)
      if (i != j && g.has_edge(i, j)) out << i << " " << j << "\n";
}

Graph load_adjacency_csv(const std::filesystem::path& path, bool directed) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<std::vector<int>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string body = strip_comment(line);
    if (body.find_first_not_of(" \t\r,") == std::string::npos) continue;
    std::vector<int> row;
    std::istringstream stream(body);
    std::string cell;
    while (std::getline(stream, cell, ',')) {
      const auto start = cell.find_first_not_of(" \t\r");
      if (start == std::string::npos) fail_line(path, line_no, "empty cell");
      const int v = std::stoi(cell.substr(start));
      if (v != 0 && v != 1) fail_line(path, line_no, "cells must be 0 or 1");
      row.push_back(v);
    }
    rows.push_back(std::move(row));
  }
  const int n = static_cast<int>(rows.size());
  if (n == 0) throw std::runtime_error(path.string() + ": empty matrix");
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n)
      throw std::runtime_error(path.string() + ": matrix is not square");
    if (rows[i][i] != 0)
      throw std::runtime_error(path.string() + ": nonzero diagonal");
  }
  Graph g(n, directed);
  for (int i = 0; i < n; ++i)
    for (int j = directed ? 0 : i + 1; j < n; ++j) {
      if (i == j) continue;
      if (!directed && rows[i][j] != rows[j][i])
        throw std::runtime_error(path.string() +
                                 ": asymmetric entries for undirected graph");
      if (rows[i][j]) g.toggle({i, j});
    }
  return g;
}

RunConfig parse_config_text(const std::string& text) {
  RunConfig cfg;
  std::istringstream stream(text);
  std::string line;
  int line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    const std::string body = strip_comment(line);
    if (body.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config line " + std::to_string(line_no) +
                               ": expected key = value");
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (key.empty() || value.empty())
      throw std::runtime_error("config line " + std::to_string(line_no) +
                               ": empty key or value");
    try {
      if (key == "algorithm") cfg.algorithm = value;
      else if (key == "dataset") cfg.dataset = value;
      else if (key == "model") cfg.model = value;
      else if (key == "prior_variance") cfg.prior_variance = std::stod(value);
      else if (key == "prior_mean") cfg.prior_mean = parse_double_list(value);
      else if (key == "proposal_sd") cfg.proposal_sd = parse_double_list(value);
      else if (key == "main_iterations") cfg.main_iterations = std::stoll(value);
      else if (key == "aux_iterations") cfg.aux_iterations = std::stoll(value);
      else if (key == "aux_proposal") cfg.aux_proposal = value;
      else if (key == "burn_in") cfg.burn_in = std::stod(value);
      else if (key == "seed") cfg.seed = std::stoull(value);
      else if (key == "out") cfg.out = value;
      else if (key == "chains") cfg.chains = std::stoi(value);
      else if (key == "gamma") cfg.gamma = std::stod(value);
      else if (key == "epsilon_variance") cfg.epsilon_variance = std::stod(value);
      else if (key == "warmup_fraction") cfg.warmup_fraction = std::stod(value);
      else if (key == "mcmle_samples") cfg.mcmle_samples = std::stoi(value);
      else if (key == "theta0") cfg.theta0 = parse_double_list(value);
      else if (key == "theta") cfg.theta = parse_double_list(value);
      else if (key == "init") cfg.init = parse_double_list(value);
      else if (key == "record_every") cfg.record_every = std::stoll(value);
      else if (key == "draws") cfg.draws_file = value;
      else if (key == "gof_count") cfg.gof_count = std::stoi(value);
      else if (key == "record_aux_stats")
        cfg.record_aux_stats = value == "true" || value == "1";
      else if (key == "threads") cfg.threads = std::stoi(value);
      else if (key == "max_lag") cfg.max_lag = std::stoi(value);
      else
        throw std::runtime_error("unknown key '" + key + "'");
    } catch (const std::invalid_argument&) {
      throw std::runtime_error("config line " + std::to_string(line_no) +
                               ": bad value for '" + key + "'");
    }
  }
  return cfg;
}

RunConfig parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config_text(text.str());
}

namespace {

const std::set<std::string> kAlgorithms = {
    "simulate", "mple",     "mcmle",    "exchange",
    "pop-exchange", "gof",  "summarize"};

bool needs_dataset(const std::string& algorithm) {
  return algorithm != "summarize";
}

}  // namespace

void validate_config(const RunConfig& cfg) {
  if (!kAlgorithms.contains(cfg.algorithm))
    throw std::runtime_error("unknown algorithm '" + cfg.algorithm + "'");
  if (needs_dataset(cfg.algorithm)) {
    if (cfg.dataset.empty()) throw std::runtime_error("dataset is required");
    if (cfg.model.empty()) throw std::runtime_error("model is required");
  }
  if (cfg.aux_proposal != "tnt" && cfg.aux_proposal != "uniform")
    throw std::runtime_error("aux_proposal must be tnt or uniform");
  if (cfg.burn_in < 0.0 || cfg.burn_in >= 1.0)
    throw std::runtime_error("burn_in must be in [0,1)");
  if (cfg.main_iterations < 1 || cfg.aux_iterations < 1)
    throw std::runtime_error("iteration counts must be positive");
  if (cfg.prior_variance <= 0.0)
    throw std::runtime_error("prior_variance must be positive");
  for (double sd : cfg.proposal_sd)
    if (sd <= 0.0) throw std::runtime_error("proposal scales must be positive");
  if (cfg.algorithm == "pop-exchange") {
    if (cfg.chains != 0 && cfg.chains < 3)
      throw std::runtime_error("pop-exchange needs at least 3 chains");
    if (cfg.epsilon_variance <= 0.0)
      throw std::runtime_error("epsilon_variance must be positive");
    if (cfg.warmup_fraction < 0.0 || cfg.warmup_fraction >= 1.0)
      throw std::runtime_error("warmup_fraction must be in [0,1)");
  }
  if (cfg.algorithm == "mcmle" && cfg.mcmle_samples < 2)
    throw std::runtime_error("mcmle needs at least 2 samples");
  if (cfg.algorithm == "simulate" && cfg.theta.empty())
    throw std::runtime_error("simulate needs theta");
  if (cfg.algorithm == "gof" || cfg.algorithm == "summarize") {
    if (cfg.draws_file.empty())
      throw std::runtime_error(cfg.algorithm + " needs a draws file");
  }
  if (cfg.algorithm == "gof" && cfg.gof_count < 1)
    throw std::runtime_error("gof_count must be positive");
}

void write_draws_csv(const std::filesystem::path& path,
                     const std::vector<ChainOutput>& chains) {
  auto out = open_output(path);
  const int d = chains.empty() ? 0 : int(chains.front().draws.cols());
  out << "chain,iteration";
  for (int k = 1; k <= d; ++k) out << ",theta_" << k;
  out << "\n";
  for (std::size_t c = 0; c < chains.size(); ++c) {
    const auto& draws = chains[c].draws;
    for (Eigen::Index t = 0; t < draws.rows(); ++t) {
      out << (c + 1) << "," << (t + 1);
      for (int k = 0; k < d; ++k) out << "," << format_double(draws(t, k));
      out << "\n";
    }
  }
}

Eigen::MatrixXd read_draws_csv(const std::filesystem::path& path,
                               std::vector<Eigen::MatrixXd>* per_chain) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error(path.string() + ": empty file");
  std::vector<std::vector<double>> rows;
  std::vector<int> chain_of;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream stream(line);
    std::string cell;
    std::vector<double> row;
    int col = 0, chain = 0;
    while (std::getline(stream, cell, ',')) {
      if (col == 0) chain = std::stoi(cell);
      else if (col >= 2) row.push_back(std::stod(cell));
      ++col;
    }
    rows.push_back(std::move(row));
    chain_of.push_back(chain);
  }
  if (rows.empty()) throw std::runtime_error(path.string() + ": no draws");
  const int d = static_cast<int>(rows.front().size());
  Eigen::MatrixXd pooled(rows.size(), d);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (static_cast<int>(rows[r].size()) != d)
      throw std::runtime_error(path.string() + ": ragged rows");
    for (int k = 0; k < d; ++k) pooled(Eigen::Index(r), k) = rows[r][k];
  }
  if (per_chain) {
    per_chain->clear();
    const int max_chain = *std::max_element(chain_of.begin(), chain_of.end());
    for (int c = 1; c <= max_chain; ++c) {
      std::vector<std::size_t> idx;
      for (std::size_t r = 0; r < rows.size(); ++r)
        if (chain_of[r] == c) idx.push_back(r);
      Eigen::MatrixXd m(idx.size(), d);
      for (std::size_t r = 0; r < idx.size(); ++r)
        m.row(Eigen::Index(r)) = pooled.row(Eigen::Index(idx[r]));
      per_chain->push_back(std::move(m));
    }
  }
  return pooled;
}

void write_gof_csv(const std::filesystem::path& path,
                   const GofReport& report) {
  auto out = open_output(path);
  out << "family,bin,observed,p5,p50,p95\n";
  for (const auto& band : report.families)
    for (std::size_t b = 0; b < band.observed.size(); ++b)
      out << band.family << "," << band.bin_labels[b] << ","
          << format_double(band.observed[b]) << ","
          << format_double(band.p5[b]) << "," << format_double(band.p50[b])
          << "," << format_double(band.p95[b]) << "\n";
}

namespace {

void write_aux_csv(const std::filesystem::path& path,
                   const std::vector<ChainOutput>& chains, int d) {
  auto out = open_output(path);
  out << "chain,index";
  for (int k = 1; k <= d; ++k) out << ",s_" << k;
  out << ",accepted\n";
  for (std::size_t c = 0; c < chains.size(); ++c) {
    const auto& log = chains[c].aux_log;
    for (std::size_t i = 0; i < log.size(); ++i) {
      out << (c + 1) << "," << (i + 1);
      for (int k = 0; k < d; ++k) out << "," << format_double(log[i].stats[k]);
      out << "," << (log[i].accepted ? 1 : 0) << "\n";
    }
  }
}

json summary_to_json(const PosteriorSummary& s,
                     const std::vector<std::string>& term_names) {
  json j;
  j["parameters"] = term_names;
  j["pooled"]["mean"] = std::vector<double>(
      s.pooled_mean.data(), s.pooled_mean.data() + s.pooled_mean.size());
  j["pooled"]["sd"] = std::vector<double>(
      s.pooled_sd.data(), s.pooled_sd.data() + s.pooled_sd.size());
  j["ess"] = s.ess;
  j["draws_per_chain_used"] = s.draws_per_chain_used;
  for (Eigen::Index c = 0; c < s.chain_means.rows(); ++c) {
    json chain;
    chain["mean"] = std::vector<double>(s.chain_means.row(c).begin(),
                                        s.chain_means.row(c).end());
    chain["sd"] = std::vector<double>(s.chain_sds.row(c).begin(),
                                      s.chain_sds.row(c).end());
    chain["acceptance"] = s.acceptance_per_chain[std::size_t(c)];
    j["chains"].push_back(chain);
  }
  return j;
}

json fit_to_json(const FitResult& fit,
                 const std::vector<std::string>& term_names) {
  json j;
  j["parameters"] = term_names;
  j["estimate"] = std::vector<double>(
      fit.estimate.data(), fit.estimate.data() + fit.estimate.size());
  if (fit.std_errors_available)
    j["std_errors"] = std::vector<double>(
        fit.std_errors.data(), fit.std_errors.data() + fit.std_errors.size());
  else
    j["std_errors"] = nullptr;  // reported as unavailable
  j["converged"] = fit.converged;
  j["diagnostics"] = fit.diagnostics;
  if (!fit.message.empty()) j["message"] = fit.message;
  return j;
}

void write_json(const std::filesystem::path& path, const json& j) {
  auto out = open_output(path);
  out << j.dump(2) << "\n";
}

void echo_config(const std::filesystem::path& path, const RunConfig& cfg,
                 const std::vector<std::uint64_t>& derived_seeds) {
  auto out = open_output(path);
  auto list = [](const std::vector<double>& v) {
    std::string s;
    for (double x : v) {
      if (!s.empty()) s += ",";
      s += format_double(x);
    }
    return s;
  };
  out << "algorithm = " << cfg.algorithm << "\n";
  if (!cfg.dataset.empty()) out << "dataset = " << cfg.dataset.string() << "\n";
  if (!cfg.model.empty()) out << "model = " << cfg.model << "\n";
  out << "prior_variance = " << format_double(cfg.prior_variance) << "\n";
  if (!cfg.prior_mean.empty()) out << "prior_mean = " << list(cfg.prior_mean) << "\n";
  if (!cfg.proposal_sd.empty())
    out << "proposal_sd = " << list(cfg.proposal_sd) << "\n";
  out << "main_iterations = " << cfg.main_iterations << "\n";
  out << "aux_iterations = " << cfg.aux_iterations << "\n";
  out << "aux_proposal = " << cfg.aux_proposal << "\n";
  out << "burn_in = " << format_double(cfg.burn_in) << "\n";
  out << "seed = " << cfg.seed << "\n";
  out << "out = " << cfg.out.string() << "\n";
  if (cfg.algorithm == "pop-exchange") {
    out << "chains = " << cfg.chains << "\n";
    out << "gamma = " << format_double(cfg.gamma) << "\n";
    out << "epsilon_variance = " << format_double(cfg.epsilon_variance) << "\n";
    out << "warmup_fraction = " << format_double(cfg.warmup_fraction) << "\n";
  }
  if (cfg.algorithm == "mcmle") {
    out << "mcmle_samples = " << cfg.mcmle_samples << "\n";
    if (!cfg.theta0.empty()) out << "theta0 = " << list(cfg.theta0) << "\n";
  }
  if (!cfg.theta.empty()) out << "theta = " << list(cfg.theta) << "\n";
  if (!cfg.init.empty()) out << "init = " << list(cfg.init) << "\n";
  if (cfg.algorithm == "simulate")
    out << "record_every = " << cfg.record_every << "\n";
  if (!cfg.draws_file.empty())
    out << "draws = " << cfg.draws_file.string() << "\n";
  if (cfg.algorithm == "gof") out << "gof_count = " << cfg.gof_count << "\n";
  out << "record_aux_stats = " << (cfg.record_aux_stats ? "true" : "false")
      << "\n";
  out << "threads = " << cfg.threads << "\n";
  if (!derived_seeds.empty()) {
    out << "# derived per-chain/per-task seed heads\n";
    out << "derived_seeds =";
    for (std::size_t i = 0; i < derived_seeds.size(); ++i)
      out << (i ? "," : " ") << derived_seeds[i];
    out << "\n";
  }
}

std::vector<std::string> term_names(const ModelSpec& spec) {
  std::vector<std::string> names;
  for (const auto& t : spec.terms) names.push_back(t.name());
  return names;
}

StatVector to_vec(const std::vector<double>& v) {
  StatVector out(Eigen::Index(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out[Eigen::Index(i)] = v[i];
  return out;
}

}  // namespace

int run(const RunConfig& cfg) {
  validate_config(cfg);
  std::filesystem::create_directories(cfg.out);
  const auto t_start = std::chrono::steady_clock::now();

  Graph observed(1, false);
  ModelSpec spec;
  if (needs_dataset(cfg.algorithm)) {
    observed = load_graph(cfg.dataset);
    spec = ModelSpec::parse(cfg.model, observed.directed());
    // directedness and dimension checks happen here, before any compute
    if (!cfg.prior_mean.empty() &&
        static_cast<int>(cfg.prior_mean.size()) != spec.dim())
      throw std::runtime_error("prior_mean dimension mismatch");
    if (!cfg.proposal_sd.empty() &&
        static_cast<int>(cfg.proposal_sd.size()) != spec.dim())
      throw std::runtime_error("proposal_sd dimension mismatch");
  }
  const ProposalKind proposal = cfg.aux_proposal == "tnt"
                                    ? ProposalKind::TNT
                                    : ProposalKind::UniformDyad;
  auto prior_for = [&](int d) {
    Prior prior = Prior::isotropic(d, cfg.prior_variance);
    if (!cfg.prior_mean.empty()) prior.mean = to_vec(cfg.prior_mean);
    return prior;
  };
  auto sds_for = [&](int d) {
    return cfg.proposal_sd.empty() ? std::vector<double>(std::size_t(d), 0.5)
                                   : cfg.proposal_sd;
  };
  std::vector<std::uint64_t> derived_seeds;
  json summary;
  summary["algorithm"] = cfg.algorithm;
  summary["seed"] = cfg.seed;

  if (cfg.algorithm == "simulate") {
    if (static_cast<int>(cfg.theta.size()) != spec.dim())
      throw std::runtime_error("theta dimension mismatch");
    Graph g = observed;
    Rng rng(cfg.seed);
    std::vector<StatVector> trace;
    mh_run(g, to_vec(cfg.theta), spec, proposal, cfg.main_iterations, rng,
           global_stats(g, spec), cfg.record_every, &trace);
    auto out = open_output(cfg.out / "trace.csv");
    out << "iteration";
    for (const auto& name : term_names(spec)) out << "," << name;
    out << "\n";
    for (std::size_t i = 0; i < trace.size(); ++i) {
      out << (std::int64_t(i + 1) * cfg.record_every);
      for (int k = 0; k < spec.dim(); ++k)
        out << "," << format_double(trace[i][k]);
      out << "\n";
    }
    save_graph(g, cfg.out / "graph.edges");
    summary["trace_length"] = trace.size();
  } else if (cfg.algorithm == "mple" || cfg.algorithm == "mcmle") {
    FitResult fit;
    if (cfg.algorithm == "mple") {
      fit = mple(observed, spec);
    } else {
      StatVector theta0;
      if (cfg.theta0.empty()) {
        const FitResult start = mple(observed, spec);
        theta0 = start.estimate;
      } else if (static_cast<int>(cfg.theta0.size()) == spec.dim()) {
        theta0 = to_vec(cfg.theta0);
      } else {
        throw std::runtime_error("theta0 dimension mismatch");
      }
      McmleOptions options;
      options.threads = cfg.threads;
      fit = mcmle(observed, spec, theta0, cfg.mcmle_samples,
                  {proposal, cfg.aux_iterations, cfg.seed, 0}, options);
    }
    summary["fit"] = fit_to_json(fit, term_names(spec));
  } else if (cfg.algorithm == "exchange") {
    ExchangeConfig ex;
    ex.main_iterations = cfg.main_iterations;
    ex.aux = {proposal, cfg.aux_iterations, cfg.seed, 0};
    ex.proposal_sd = sds_for(spec.dim());
    if (!cfg.init.empty()) {
      if (static_cast<int>(cfg.init.size()) != spec.dim())
        throw std::runtime_error("init dimension mismatch");
      ex.init = to_vec(cfg.init);
    }
    ex.seed = cfg.seed;
    ex.record_aux_stats = cfg.record_aux_stats;
    const auto chain = run_exchange(observed, spec, prior_for(spec.dim()), ex);
    derived_seeds = {chain.seed};
    std::vector<ChainOutput> chains;
    chains.push_back(chain);
    write_draws_csv(cfg.out / "draws.csv", chains);
    if (cfg.record_aux_stats)
      write_aux_csv(cfg.out / "aux_stats.csv", chains, spec.dim());
    const auto post = summarize(chains, cfg.burn_in);
    summary["summary"] = summary_to_json(post, term_names(spec));
    summary["acceptance_overall"] = chain.acceptance_overall;
    summary["acceptance_per_component"] = chain.acceptance_per_component;
    summary["burn_in"] = cfg.burn_in;
  } else if (cfg.algorithm == "pop-exchange") {
    PopulationConfig pop;
    pop.chains = cfg.chains;
    pop.gamma = cfg.gamma;
    pop.epsilon_cov =
        cfg.epsilon_variance *
        Eigen::MatrixXd::Identity(spec.dim(), spec.dim());
    pop.iterations_per_chain = cfg.main_iterations;
    pop.warmup_iterations =
        std::int64_t(cfg.warmup_fraction * double(cfg.main_iterations));
    pop.aux = {proposal, cfg.aux_iterations, cfg.seed, 0};
    pop.block_proposal_sd = sds_for(spec.dim());
    if (!cfg.init.empty()) {
      if (static_cast<int>(cfg.init.size()) != spec.dim())
        throw std::runtime_error("init dimension mismatch");
      pop.init = {to_vec(cfg.init)};
    }
    pop.seed = cfg.seed;
    pop.record_aux_stats = cfg.record_aux_stats;
    pop.threads = cfg.threads;
    const auto result = run_population(observed, spec, prior_for(spec.dim()), pop);
    for (const auto& c : result.chains) derived_seeds.push_back(c.seed);
    write_draws_csv(cfg.out / "draws.csv", result.chains);
    if (cfg.record_aux_stats)
      write_aux_csv(cfg.out / "aux_stats.csv", result.chains, spec.dim());
    summary["summary"] = summary_to_json(result.pooled, term_names(spec));
    summary["warmup_iterations"] = result.warmup_iterations;
    json acc = json::array();
    for (const auto& c : result.chains) acc.push_back(c.acceptance_overall);
    summary["acceptance_per_chain"] = acc;
  } else if (cfg.algorithm == "gof") {
    const Eigen::MatrixXd draws = read_draws_csv(cfg.draws_file);
    const auto report =
        bayesian_gof(observed, spec, draws, cfg.gof_count,
                     {proposal, cfg.aux_iterations, cfg.seed, 0}, cfg.seed,
                     cfg.threads);
    write_gof_csv(cfg.out / "gof.csv", report);
    summary["gof_coverage"] = gof_coverage(report);
    summary["gof_count"] = cfg.gof_count;
  } else if (cfg.algorithm == "summarize") {
    std::vector<Eigen::MatrixXd> per_chain;
    read_draws_csv(cfg.draws_file, &per_chain);
    std::vector<ChainOutput> chains;
    for (auto& m : per_chain) {
      ChainOutput c;
      c.draws = std::move(m);
      c.acceptance_per_component.assign(std::size_t(c.draws.cols()), 0.0);
      chains.push_back(std::move(c));
    }
    const auto post = summarize(chains, cfg.burn_in);
    std::vector<std::string> names;
    for (int k = 1; k <= int(chains.front().draws.cols()); ++k)
      names.push_back("theta_" + std::to_string(k));
    summary["summary"] = summary_to_json(post, names);
    summary["burn_in"] = cfg.burn_in;
    // ACF series for external plotting
    auto out = open_output(cfg.out / "acf.csv");
    out << "chain,parameter,lag,acf\n";
    for (std::size_t c = 0; c < chains.size(); ++c) {
      const auto& draws = chains[c].draws;
      const int max_lag = std::min<int>(cfg.max_lag, int(draws.rows()) - 1);
      for (int k = 0; k < int(draws.cols()); ++k) {
        std::vector<double> series(draws.rows());
        for (Eigen::Index t = 0; t < draws.rows(); ++t)
          series[std::size_t(t)] = draws(t, k);
        const auto acf = autocorrelation(series, max_lag);
        for (int lag = 0; lag <= max_lag; ++lag)
          out << (c + 1) << "," << (k + 1) << "," << lag << ","
              << format_double(acf[std::size_t(lag)]) << "\n";
      }
    }
  }

  const auto t_end = std::chrono::steady_clock::now();
  summary["wall_clock_seconds"] =
      std::chrono::duration<double>(t_end - t_start).count();
  write_json(cfg.out / "summary.json", summary);
  echo_config(cfg.out / "config_echo.txt", cfg, derived_seeds);
  return 0;
}

}  // namespace ergm
