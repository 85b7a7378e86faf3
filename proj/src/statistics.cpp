#include "ergm/statistics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ergm {
namespace {

double choose2(double k) { return k * (k - 1) / 2.0; }
double choose3(double k) { return k * (k - 1) * (k - 2) / 6.0; }

// Geometric weight base 1 - e^{-phi}; gw change statistics telescope to
// powers of this base.
double gw_base(double phi) { return 1.0 - std::exp(-phi); }

double gw_global(const std::vector<std::int64_t>& hist, double phi,
                 int max_index) {
  const double b = gw_base(phi);
  double sum = 0.0;
  for (int k = 1; k <= max_index && k < static_cast<int>(hist.size()); ++k) {
    if (hist[k] == 0) continue;
    sum += (1.0 - std::pow(b, k)) * static_cast<double>(hist[k]);
  }
  return std::exp(phi) * sum;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

}  // namespace

std::string StatisticTerm::name() const {
  std::ostringstream os;
  switch (kind) {
    case TermKind::Edges: return "edges";
    case TermKind::TwoStars: return "kstar2";
    case TermKind::ThreeStars: return "kstar3";
    case TermKind::Triangles: return "triangle";
    case TermKind::Mutual: return "mutual";
    case TermKind::CyclicTriples: return "ctriple";
    case TermKind::GWDegree: os << "gwdegree(" << decay << ")"; return os.str();
    case TermKind::GWESP: os << "gwesp(" << decay << ")"; return os.str();
  }
  return "?";
}

StatisticTerm StatisticTerm::parse(std::string_view text) {
  const std::string t = lower(trim(text));
  if (t == "edges") return {TermKind::Edges};
  if (t == "kstar2") return {TermKind::TwoStars};
  if (t == "kstar3") return {TermKind::ThreeStars};
  if (t == "triangle") return {TermKind::Triangles};
  if (t == "mutual") return {TermKind::Mutual};
  if (t == "ctriple") return {TermKind::CyclicTriples};
  for (auto [prefix, kind] :
       {std::pair{std::string("gwdegree("), TermKind::GWDegree},
        std::pair{std::string("gwesp("), TermKind::GWESP}}) {
    if (t.rfind(prefix, 0) == 0 && t.back() == ')') {
      const std::string inner = t.substr(prefix.size(),
                                         t.size() - prefix.size() - 1);
      std::size_t used = 0;
      double phi = 0.0;
      try {
        phi = std::stod(inner, &used);
      } catch (const std::exception&) {
        throw std::invalid_argument("bad decay parameter in term '" +
                                    std::string(text) + "'");
      }
      if (used != inner.size() || !(phi >= 0.0))
        throw std::invalid_argument("bad decay parameter in term '" +
                                    std::string(text) + "'");
      return {kind, phi};
    }
  }
  throw std::invalid_argument("unknown statistic term '" + std::string(text) +
                              "'");
}

void ModelSpec::validate() const {
  if (terms.empty()) throw std::invalid_argument("model needs at least one term");
  for (const auto& term : terms) {
    if (directed && term.requires_undirected())
      throw std::invalid_argument("term '" + term.name() +
                                  "' requires an undirected graph");
    if (!directed && term.requires_directed())
      throw std::invalid_argument("term '" + term.name() +
                                  "' requires a directed graph");
  }
}

ModelSpec ModelSpec::parse(std::string_view term_list, bool directed) {
  ModelSpec spec;
  spec.directed = directed;
  std::size_t start = 0;
  const std::string text(term_list);
  while (start <= text.size()) {
    // commas inside gw(...) parentheses do not occur; split is flat
    std::size_t comma = text.find(',', start);
    if (comma == std::string::npos) comma = text.size();
    const std::string_view piece = trim(std::string_view(text).substr(
        start, comma - start));
    if (!piece.empty()) spec.terms.push_back(StatisticTerm::parse(piece));
    start = comma + 1;
  }
  spec.validate();
  return spec;
}

std::string ModelSpec::describe() const {
  std::string out;
  for (const auto& t : terms) {
    if (!out.empty()) out += ",";
    out += t.name();
  }
  return out;
}

StatVector global_stats(const Graph& g, const ModelSpec& spec) {
  spec.validate();
  if (g.directed() != spec.directed)
    throw std::invalid_argument("graph directedness does not match model");
  const int n = g.node_count();
  StatVector s(spec.dim());
  for (int t = 0; t < spec.dim(); ++t) {
    const auto& term = spec.terms[t];
    double value = 0.0;
    switch (term.kind) {
      case TermKind::Edges:
        value = static_cast<double>(g.edge_count());
        break;
      case TermKind::TwoStars:
        for (int v = 0; v < n; ++v) value += choose2(g.degree(v));
        break;
      case TermKind::ThreeStars:
        for (int v = 0; v < n; ++v) value += choose3(g.degree(v));
        break;
      case TermKind::Triangles: {
        std::int64_t tri = 0;
        for (std::int64_t e = 0; e < g.edge_count(); ++e)
          tri += g.shared_partner_count(g.edge_at(e));
        value = static_cast<double>(tri) / 3.0;  // each triangle seen by 3 edges
        break;
      }
      case TermKind::Mutual: {
        std::int64_t m = 0;
        for (std::int64_t e = 0; e < g.edge_count(); ++e) {
          const Dyad d = g.edge_at(e);
          if (d.i < d.j && g.has_edge(d.j, d.i)) ++m;
        }
        value = static_cast<double>(m);
        break;
      }
      case TermKind::CyclicTriples: {
        // ordered-triple count; every directed 3-cycle appears three times
        std::int64_t c = 0;
        for (std::int64_t e = 0; e < g.edge_count(); ++e) {
          const Dyad d = g.edge_at(e);
          const auto rj = g.row(d.j);
          for (int k = 0; k < n; ++k)
            if (rj[k] && g.has_edge(k, d.i)) ++c;
        }
        value = static_cast<double>(c) / 3.0;
        break;
      }
      case TermKind::GWDegree:
        value = gw_global(g.degree_histogram(), term.decay, n - 1);
        break;
      case TermKind::GWESP:
        value = gw_global(g.esp_histogram(), term.decay, n - 2);
        break;
    }
    s[t] = value;
  }
  return s;
}

void change_stats(const Graph& g, Dyad d, const ModelSpec& spec, double* out) {
  if (g.directed() != spec.directed)
    throw std::invalid_argument("graph directedness does not match model");
  d = g.canonical(d);
  const int n = g.node_count();
  const bool present = g.has_edge(d);

  // Degrees and shared-partner counts as they stand with the dyad absent.
  const int deg_i = g.directed() ? 0 : g.degree(d.i) - (present ? 1 : 0);
  const int deg_j = g.directed() ? 0 : g.degree(d.j) - (present ? 1 : 0);

  for (int t = 0; t < spec.dim(); ++t) {
    const auto& term = spec.terms[t];
    double delta = 0.0;
    switch (term.kind) {
      case TermKind::Edges:
        delta = 1.0;
        break;
      case TermKind::TwoStars:
        delta = static_cast<double>(deg_i + deg_j);
        break;
      case TermKind::ThreeStars:
        delta = choose2(deg_i) + choose2(deg_j);
        break;
      case TermKind::Triangles:
        delta = static_cast<double>(g.shared_partner_count(d));
        break;
      case TermKind::Mutual:
        delta = g.has_edge(d.j, d.i) ? 1.0 : 0.0;
        break;
      case TermKind::CyclicTriples: {
        // cycles closed through the arc i -> j: paths j -> k -> i
        const auto rj = g.row(d.j);
        int c = 0;
        for (int k = 0; k < n; ++k)
          if (rj[k] && g.has_edge(k, d.i)) ++c;
        delta = static_cast<double>(c);
        break;
      }
      case TermKind::GWDegree: {
        const double b = gw_base(term.decay);
        delta = std::pow(b, deg_i) + std::pow(b, deg_j);
        break;
      }
      case TermKind::GWESP: {
        const double b = gw_base(term.decay);
        const auto ri = g.row(d.i);
        const auto rj = g.row(d.j);
        int cn = 0;
        double neighbour_sum = 0.0;
        for (int k = 0; k < n; ++k) {
          if (!(ri[k] & rj[k])) continue;
          ++cn;
          // shared partners of edges (i,k) and (j,k), dyad (i,j) held out
          const int p_ik =
              g.shared_partner_count({d.i, k}) - (present ? 1 : 0);
          const int p_jk =
              g.shared_partner_count({d.j, k}) - (present ? 1 : 0);
          neighbour_sum += std::pow(b, p_ik) + std::pow(b, p_jk);
        }
        delta = std::exp(term.decay) * (1.0 - std::pow(b, cn)) + neighbour_sum;
        break;
      }
    }
    out[t] = delta;
  }
}

StatVector change_stats(const Graph& g, Dyad d, const ModelSpec& spec) {
  StatVector delta(spec.dim());
  change_stats(g, d, spec, delta.data());
  return delta;
}

double conditional_edge_probability(const StatVector& theta,
                                    const StatVector& delta) {
  if (theta.size() != delta.size())
    throw std::invalid_argument("dimension mismatch");
  const double x = theta.dot(delta);
  // stable logistic
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace ergm
