#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace ergm {

struct DatasetInfo {
  std::string name;       // file stem under the data directory
  int nodes = 0;
  bool directed = false;
  bool bundled = false;   // body shipped with the library
  std::uint64_t checksum = 0;  // FNV-1a of the bundled body, 0 otherwise
};

/// The four benchmark networks. Only the Florentine business graph ships
/// with the library; the others are validated when the user drops canonical
/// copies into the data directory (see fetch_datasets).
const std::vector<DatasetInfo>& benchmark_datasets();

std::uint64_t fnv1a(const std::string& bytes);

/// Bundled file body for a dataset, if we carry one.
std::optional<std::string> bundled_body(const std::string& name);

struct FetchStatus {
  std::string name;
  std::string state;  // "written", "verified", "present", "missing"
};

/// Materialize bundled datasets into `dir` (no-op over existing valid
/// copies; checksum mismatch on a bundled dataset throws) and validate any
/// user-provided copies of the rest against their node count and
/// directedness.
std::vector<FetchStatus> fetch_datasets(const std::filesystem::path& dir);

std::filesystem::path dataset_path(const std::filesystem::path& dir,
                                   const std::string& name);

}  // namespace ergm
