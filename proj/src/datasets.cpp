#include "ergm/datasets.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "ergm/io.hpp"

namespace ergm {
namespace {

// Padgett & Ansell's Florentine family business network (15 undirected
// ties among 16 families), as distributed with the statnet/ergm data sets.
// Nodes in alphabetical family order:
//   0 Acciaiuoli  1 Albizzi   2 Barbadori   3 Bischeri   4 Castellani
//   5 Ginori      6 Guadagni  7 Lamberteschi 8 Medici    9 Pazzi
//  10 Peruzzi    11 Pucci    12 Ridolfi    13 Salviati  14 Strozzi
//  15 Tornabuoni
constexpr const char* kFlorentineBody =
    "# Florentine family business ties (Padgett & Ansell 1993),\n"
    "# node order and edge set as in the statnet ergm distribution.\n"
    "16 undirected\n"
    "2 4\n"
    "2 5\n"
    "2 8\n"
    "2 10\n"
    "3 6\n"
    "3 7\n"
    "3 10\n"
    "4 7\n"
    "4 10\n"
    "5 8\n"
    "6 7\n"
    "7 10\n"
    "8 9\n"
    "8 13\n"
    "8 15\n";

}  // namespace

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

const std::vector<DatasetInfo>& benchmark_datasets() {
  static const std::vector<DatasetInfo> datasets = [] {
    std::vector<DatasetInfo> v;
    v.push_back({"florentine_business", 16, false, true,
                 fnv1a(kFlorentineBody)});
    v.push_back({"molecule", 20, false, false, 0});
    v.push_back({"dolphins", 62, false, false, 0});
    v.push_back({"monks", 18, true, false, 0});
    return v;
  }();
  return datasets;
}

std::optional<std::string> bundled_body(const std::string& name) {
  if (name == "florentine_business") return std::string(kFlorentineBody);
  return std::nullopt;
}

std::filesystem::path dataset_path(const std::filesystem::path& dir,
                                   const std::string& name) {
  return dir / (name + ".edges");
}

std::vector<FetchStatus> fetch_datasets(const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<FetchStatus> out;
  for (const auto& info : benchmark_datasets()) {
    const auto path = dataset_path(dir, info.name);
    FetchStatus status{info.name, "missing"};
    if (info.bundled) {
      const std::string body = *bundled_body(info.name);
      if (std::filesystem::exists(path)) {
        std::ifstream in(path, std::ios::binary);
        std::ostringstream existing;
        existing << in.rdbuf();
        if (fnv1a(existing.str()) != info.checksum)
          throw std::runtime_error("checksum mismatch on vendored dataset '" +
                                   info.name + "' at " + path.string());
        status.state = "verified";
      } else {
        std::ofstream outfile(path, std::ios::binary);
        if (!outfile) throw std::runtime_error("cannot write " + path.string());
        outfile << body;
        status.state = "written";
      }
    } else if (std::filesystem::exists(path)) {
      const Graph g = load_graph(path);
      if (g.node_count() != info.nodes || g.directed() != info.directed)
        throw std::runtime_error(
            "dataset '" + info.name + "' has unexpected shape: want " +
            std::to_string(info.nodes) + " nodes, " +
            (info.directed ? "directed" : "undirected"));
      status.state = "present";
    }
    out.push_back(status);
  }
  return out;
}

}  // namespace ergm
