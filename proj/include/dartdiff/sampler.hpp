#ifndef DARTDIFF_SAMPLER_HPP
#define DARTDIFF_SAMPLER_HPP

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <utility>
#include <vector>

#include "dartdiff/correlations.hpp"
#include "dartdiff/lattice.hpp"
#include "dartdiff/rng.hpp"

namespace dartdiff {

// A perfect matching on a torus graph: every vertex carries exactly one
// occupied bond.
struct DimerConfiguration {
  int m = 0;
  int n = 0;
  std::vector<int> partner;       // vertex -> matched vertex
  std::vector<int> matched_bond;  // vertex -> occupied bond id

  int num_dimers() const { return static_cast<int>(partner.size()) / 2; }
  bool valid(const TorusGraph& g) const;
  void dump(std::ostream& os, const TorusGraph& g) const;

  // Parity of occupied bonds crossing the two boundary seams; a winding
  // sector invariant under contractible updates.
  std::pair<int, int> winding_parity(const TorusGraph& g) const;
};

struct Tiling {
  int m = 0;
  int n = 0;
  std::vector<std::pair<TileKind, CellCoord>> tiles;

  void dump(std::ostream& os) const;
};

Tiling to_tiling(const DimerConfiguration& config, const TorusGraph& g);

TileDensities empirical_densities(const Tiling& t);

struct SamplerConfig {
  long steps = 100;         // measurement sweeps after burn-in
  uint64_t seed = 1;
  long burn_in = 100;       // sweeps
  long max_worm_steps = 0;  // per excursion; 0 = automatic budget
};

/**
 * Worm (defect-pair) sampler for the fully packed dimer model at activities
 * z, on the m x n torus.
 *
 * One excursion: pick a uniform random vertex t, detach its dimer to create
 * the defect pair (t, h); repeatedly pick one of the three bonds at the head
 * h with heat-bath probability z_{hk} / S_h. The bond to t closes the pair;
 * any other bond (h,k) pivots the dimer at k, moving the head to k's old
 * partner. With extended weights W(D) S_h for defect states this kernel is
 * reversible, and the matchings seen at closures follow the Gibbs weights
 * (verified exactly on the 2x2 torus in the test suite).
 *
 * One sweep = 6 m n worm closures.
 */
class WormSampler {
 public:
  WormSampler(const Activities& z, int m, int n, const SamplerConfig& cfg);

  void excursion();
  void sweep();
  void run(long sweeps);

  const DimerConfiguration& configuration() const;
  const TorusGraph& graph() const { return graph_; }
  long long total_worm_steps() const { return total_steps_; }
  long long closures() const { return closures_; }

  // Occupied-bond counts per cell-bond class 0..8 (for frequency tests).
  std::array<long long, 9> class_counts() const;

 private:
  // One cache line per vertex; the head performs a few dependent random
  // accesses per step, so locality dominates the run time on large tori.
  struct alignas(64) VertexState {
    int nbr[3];
    int bond[3];
    double cum[3];
    int partner;
    int matched_bond;
  };

  TorusGraph graph_;
  Activities z_;
  SamplerConfig cfg_;
  Rng rng_;
  int m_, n_;
  std::vector<VertexState> state_;
  long max_steps_;
  long long total_steps_ = 0;
  long long closures_ = 0;
  mutable DimerConfiguration config_;  // materialized on demand
  mutable bool config_dirty_ = true;
};

// Burn in and run cfg.steps sweeps; returns the final configuration.
DimerConfiguration sample(const Activities& z, int m, int n, const SamplerConfig& cfg);

}  // namespace dartdiff

#endif
