#ifndef DARTDIFF_CORRELATIONS_HPP
#define DARTDIFF_CORRELATIONS_HPP

#include <array>
#include <complex>

#include "dartdiff/spectral.hpp"

namespace dartdiff {

// Tile-number fractions; rho[i] <-> rho_{i+1}, sigma[j] <-> sigma_{j+1}.
struct TileDensities {
  std::array<double, 3> rho{};
  std::array<double, 6> sigma{};

  double of(TileKind k) const {
    int i = static_cast<int>(k);
    return i < 3 ? rho[i] : sigma[i - 3];
  }
  double sum() const;
};

// Complex scatterer strengths; opposite darts share a strength, so only
// three sigma slots exist. The opposite-dart pairs are {sigma1, sigma5},
// {sigma2, sigma6}, {sigma3, sigma4}, matching the density constraints.
struct ScattererWeights {
  std::array<std::complex<double>, 3> h_rho{1.0, 1.0, 1.0};
  std::array<std::complex<double>, 3> h_sigma{1.0, 1.0, 1.0};

  std::complex<double> of(TileKind k) const {
    static constexpr int slot[6] = {0, 1, 2, 2, 0, 1};  // sigma1..sigma6
    int i = static_cast<int>(k);
    return i < 3 ? h_rho[i] : h_sigma[slot[i - 3]];
  }
};

// Occupation probability of one bond, P = A_{kk'} A^{-1}_{k'k}.
double bond_probability(const CouplingGrid& grid, const BondSpec& bond);
double bond_probability(const Activities& z, const BondSpec& bond, int quad_order);

TileDensities tile_densities(const CouplingGrid& grid);
TileDensities tile_densities(const Activities& z, int quad_order);

struct PairProbability {
  BondSpec bond_a;
  BondSpec bond_b;
  CellCoord offset;  // cell of bond_b relative to bond_a
  double value;
  double product;  // P_A * P_B, for convenience in fluctuation sums
};

// Joint occupation probability of two bonds (bond_b displaced by `offset`
// cells). Identical bonds return P_A; vertex-sharing bonds cancel to zero
// exactly.
PairProbability pair_probability(const CouplingGrid& grid, const BondSpec& bond_a,
                                 const BondSpec& bond_b, CellCoord offset);
PairProbability pair_probability(const Activities& z, const BondSpec& bond_a,
                                 const BondSpec& bond_b, CellCoord offset, int quad_order);

// Autocorrelation coefficient nu(delta) of the decorated tiling: the density
// of scatterer pairs at exact separation delta (a Kagome-grid vector),
// weighted by conj(h) h, constant part included. `cutoff` bounds the cell
// offset beyond which the joint probability is replaced by its factorized
// limit (the couplings decay exponentially).
std::complex<double> autocorrelation_coefficient(const CouplingGrid& grid,
                                                 const ScattererWeights& h, GridVec delta,
                                                 int cutoff = 8);
std::complex<double> autocorrelation_coefficient(const Activities& z, const ScattererWeights& h,
                                                 GridVec delta, int quad_order, int cutoff = 8);

}  // namespace dartdiff

#endif
