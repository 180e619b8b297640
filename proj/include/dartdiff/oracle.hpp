#ifndef DARTDIFF_ORACLE_HPP
#define DARTDIFF_ORACLE_HPP

#include <vector>

#include "dartdiff/lattice.hpp"

namespace dartdiff {

// Minimal weighted-graph view for the enumeration backtracker. Tests build
// small ad-hoc graphs directly; tori convert via from_torus().
struct MatchingGraph {
  struct Edge {
    int u;
    int v;
    WeightLabel label;
  };

  int n_vertices = 0;
  std::vector<Edge> edges;

  static MatchingGraph from_torus(const TorusGraph& g);
};

struct EnumerationResult {
  double Z = 0.0;
  long long count = 0;
  std::vector<double> bond_marginals;        // per edge
  std::vector<double> pair_marginals;        // n_edges x n_edges, row-major
  int n_edges = 0;

  double pair(int e1, int e2) const { return pair_marginals[static_cast<size_t>(e1) * n_edges + e2]; }
};

// Exact weighted enumeration of all perfect matchings by recursive
// vertex-elimination backtracking. Bounded to 60 vertices.
EnumerationResult enumerate_matchings(const MatchingGraph& graph, const Activities& z,
                                      bool with_pairs = true);

// Partition function of the m x n torus as the standard four-Pfaffian
// combination; each |Pf| is the square root of the determinant of one
// sign-twisted adjacency matrix, evaluated through the momentum-space
// factorization det A = prod_j det lambda(phi_j). The combination signs are
// frozen from a one-time comparison against enumeration on the 2 x 2 torus.
double finite_torus_Z(int m, int n, const Activities& z);
double finite_torus_log_Z(int m, int n, const Activities& z);

// Dense real Kasteleyn matrix of the torus with boundary twists
// (theta1, theta2) in {0, pi}; sector in {0..3} = 2*(theta1/pi) + theta2/pi.
// Exposed for the factorization cross-check.
std::vector<double> twisted_adjacency(const TorusGraph& g, const Activities& z, int sector);

}  // namespace dartdiff

#endif
