#include "dartdiff/oracle.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "dartdiff/linalg.hpp"
#include "dartdiff/spectral.hpp"

namespace dartdiff {

MatchingGraph MatchingGraph::from_torus(const TorusGraph& g) {
  MatchingGraph mg;
  mg.n_vertices = g.num_vertices();
  mg.edges.reserve(g.num_bonds());
  for (const auto& b : g.bonds()) {
    mg.edges.push_back({b.va, b.vb, b.weight_label});
  }
  return mg;
}

namespace {

struct Backtracker {
  const MatchingGraph& graph;
  std::vector<double> edge_weight;
  std::vector<std::vector<int>> incident;  // vertex -> edge ids
  std::vector<char> matched;
  std::vector<int> chosen;  // edge ids of the current partial matching
  bool with_pairs;

  double Z = 0.0;
  long long count = 0;
  std::vector<double> marginal;
  std::vector<double> pair;

  explicit Backtracker(const MatchingGraph& g, const Activities& z, bool pairs)
      : graph(g), with_pairs(pairs) {
    edge_weight.reserve(g.edges.size());
    for (const auto& e : g.edges) edge_weight.push_back(weight_value(e.label, z));
    incident.resize(g.n_vertices);
    for (size_t i = 0; i < g.edges.size(); ++i) {
      incident[g.edges[i].u].push_back(static_cast<int>(i));
      incident[g.edges[i].v].push_back(static_cast<int>(i));
    }
    matched.assign(g.n_vertices, 0);
    marginal.assign(g.edges.size(), 0.0);
    if (with_pairs) pair.assign(g.edges.size() * g.edges.size(), 0.0);
  }

  void record(double weight) {
    Z += weight;
    ++count;
    for (int e : chosen) marginal[e] += weight;
    if (with_pairs) {
      const size_t ne = graph.edges.size();
      for (size_t i = 0; i < chosen.size(); ++i) {
        for (size_t j = 0; j < chosen.size(); ++j) {
          pair[static_cast<size_t>(chosen[i]) * ne + chosen[j]] += weight;
        }
      }
    }
  }

  void recurse(int from, double weight) {
    int u = from;
    while (u < graph.n_vertices && matched[u]) ++u;
    if (u == graph.n_vertices) {
      record(weight);
      return;
    }
    matched[u] = 1;
    for (int e : incident[u]) {
      const auto& ed = graph.edges[e];
      const int v = ed.u == u ? ed.v : ed.u;
      if (matched[v]) continue;
      matched[v] = 1;
      chosen.push_back(e);
      recurse(u + 1, weight * edge_weight[e]);
      chosen.pop_back();
      matched[v] = 0;
    }
    matched[u] = 0;
  }
};

}  // namespace

EnumerationResult enumerate_matchings(const MatchingGraph& graph, const Activities& z,
                                      bool with_pairs) {
  z.validate();
  if (graph.n_vertices > 60) {
    throw std::invalid_argument("enumerate_matchings: more than 60 vertices");
  }
  Backtracker bt(graph, z, with_pairs);
  if (graph.n_vertices % 2 == 0) {
    bt.recurse(0, 1.0);
  }
  EnumerationResult res;
  res.Z = bt.Z;
  res.count = bt.count;
  res.n_edges = static_cast<int>(graph.edges.size());
  res.bond_marginals = std::move(bt.marginal);
  res.pair_marginals = std::move(bt.pair);
  if (res.Z > 0.0) {
    for (auto& v : res.bond_marginals) v /= res.Z;
    for (auto& v : res.pair_marginals) v /= res.Z;
  }
  return res;
}

std::vector<double> twisted_adjacency(const TorusGraph& g, const Activities& z, int sector) {
  const int n = g.num_vertices();
  std::vector<double> a(static_cast<size_t>(n) * n, 0.0);
  const double tx = (sector & 2) ? -1.0 : 1.0;
  const double ty = (sector & 1) ? -1.0 : 1.0;
  for (const auto& b : g.bonds()) {
    double w = b.sign * weight_value(b.weight_label, z);
    if (b.wraps_x) w *= tx;
    if (b.wraps_y) w *= ty;
    a[static_cast<size_t>(b.va) * n + b.vb] += w;
    a[static_cast<size_t>(b.vb) * n + b.va] -= w;
  }
  return a;
}

namespace {

// log |Pf A^sector| via the momentum-space factorization
// det A = prod_{j1, j2} det lambda((2 pi j1 + theta1)/m, (2 pi j2 + theta2)/n).
double log_abs_pfaffian(int m, int n, const Activities& z, int sector) {
  const DetCoefficients co = DetCoefficients::from(z);
  const double t1 = (sector & 2) ? std::numbers::pi : 0.0;
  const double t2 = (sector & 1) ? std::numbers::pi : 0.0;
  double logdet = 0.0;
  for (int j1 = 0; j1 < m; ++j1) {
    const double p1 = (2.0 * std::numbers::pi * j1 + t1) / m;
    for (int j2 = 0; j2 < n; ++j2) {
      const double p2 = (2.0 * std::numbers::pi * j2 + t2) / n;
      const double det = co.eval(p1, p2);
      if (det < -1e-9 * co.a) {
        throw std::runtime_error("finite_torus_Z: negative det lambda in a twist sector");
      }
      if (det <= 0.0) return -std::numeric_limits<double>::infinity();  // sector Pfaffian vanishes
      logdet += std::log(det);
    }
  }
  return 0.5 * logdet;
}

// Sector signs of the Pfaffian combination Z = 1/2 sum_s c_s |Pf A^s|,
// determined once against enumeration on the 2x2 torus and frozen (the
// intrinsic Pfaffian signs are folded into the coefficients, so all four
// principal square roots enter positively for this orientation).
constexpr double kSectorSign[4] = {+1.0, +1.0, +1.0, +1.0};

}  // namespace

double finite_torus_Z(int m, int n, const Activities& z) {
  z.validate();
  if (m < 2 || n < 2) throw std::invalid_argument("finite_torus_Z: need m, n >= 2");
  double acc = 0.0;
  for (int s = 0; s < 4; ++s) {
    const double lp = log_abs_pfaffian(m, n, z, s);
    if (lp > 700.0) throw std::runtime_error("finite_torus_Z: overflow, use finite_torus_log_Z");
    acc += kSectorSign[s] * std::exp(lp);
  }
  return 0.5 * acc;
}

double finite_torus_log_Z(int m, int n, const Activities& z) {
  z.validate();
  if (m < 2 || n < 2) throw std::invalid_argument("finite_torus_log_Z: need m, n >= 2");
  // Factor out the largest sector to stay in range.
  double lmax = -std::numeric_limits<double>::infinity();
  double lp[4];
  for (int s = 0; s < 4; ++s) {
    lp[s] = log_abs_pfaffian(m, n, z, s);
    lmax = std::max(lmax, lp[s]);
  }
  double acc = 0.0;
  for (int s = 0; s < 4; ++s) acc += kSectorSign[s] * std::exp(lp[s] - lmax);
  if (!(acc > 0.0)) throw std::runtime_error("finite_torus_log_Z: non-positive sector combination");
  return lmax + std::log(0.5 * acc);
}

}  // namespace dartdiff
