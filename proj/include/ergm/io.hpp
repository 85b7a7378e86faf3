#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "ergm/diagnostics.hpp"
#include "ergm/exchange.hpp"
#include "ergm/gof.hpp"
#include "ergm/graph.hpp"

namespace ergm {

/// Edge-list reader. Format: a header line "<n> directed|undirected"
/// followed by one dyad per line as 0-based indices. '#' starts a comment.
/// Node counts larger than the highest index are fine (isolated nodes).
/// Malformed input reports the offending line number.
Graph load_graph(const std::filesystem::path& path);
void save_graph(const Graph& g, const std::filesystem::path& path);

/// Convenience converter: dense 0/1 adjacency matrix, comma separated.
Graph load_adjacency_csv(const std::filesystem::path& path, bool directed);

/// Flat key=value run configuration; every field has a CLI flag twin.
struct RunConfig {
  std::string algorithm;  // simulate|mple|mcmle|exchange|pop-exchange|gof|summarize
  std::filesystem::path dataset;
  std::string model;
  double prior_variance = 30.0;
  std::vector<double> prior_mean;    // empty: zeros
  std::vector<double> proposal_sd;   // empty: 0.5 per component
  std::int64_t main_iterations = 1000;
  std::int64_t aux_iterations = 1000;
  std::string aux_proposal = "tnt";  // or "uniform"
  double burn_in = 0.1;
  std::uint64_t seed = 0;
  std::filesystem::path out = "out";
  int chains = 0;                    // pop-exchange; 0 = 2d
  double gamma = 0.5;
  double epsilon_variance = 0.1;
  double warmup_fraction = 0.2;
  int mcmle_samples = 1000;
  std::vector<double> theta0;        // mcmle reference; empty: use MPLE
  std::vector<double> theta;         // simulate
  std::vector<double> init;          // chain start
  std::int64_t record_every = 100;   // simulate trace thinning
  std::filesystem::path draws_file;  // gof / summarize input
  int gof_count = 100;
  bool record_aux_stats = false;
  int threads = 0;
  int max_lag = 200;                 // summarize ACF depth
};

RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::filesystem::path& path);

/// Validate a configuration against its chosen algorithm; throws with a
/// description of the first problem found. Called by run() before any
/// compute.
void validate_config(const RunConfig& cfg);

/// Execute a configured workflow and persist its artifacts (draws CSV,
/// summary JSON, optional aux-stats/GOF/trace CSVs, plus an echo of the
/// resolved configuration). Returns the process exit status.
int run(const RunConfig& cfg);

// artifact writers, reused by run() and the tests
void write_draws_csv(const std::filesystem::path& path,
                     const std::vector<ChainOutput>& chains);
Eigen::MatrixXd read_draws_csv(const std::filesystem::path& path,
                               std::vector<Eigen::MatrixXd>* per_chain = nullptr);
void write_gof_csv(const std::filesystem::path& path, const GofReport& report);
std::string format_double(double value);  // 17 significant digits

}  // namespace ergm
