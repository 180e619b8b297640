#include "dartdiff/correlations.hpp"

#include <cmath>
#include <stdexcept>

namespace dartdiff {

double TileDensities::sum() const {
  double s = 0.0;
  for (double v : rho) s += v;
  for (double v : sigma) s += v;
  return s;
}

namespace {

// A^{-1} element from lattice position (cell1, site1) to (cell2, site2).
double inv_element(const CouplingGrid& grid, CellCoord cell1, int site1, CellCoord cell2,
                   int site2) {
  return grid.coupling(cell2.x - cell1.x, cell2.y - cell1.y, site1, site2).value;
}

}  // namespace

double bond_probability(const CouplingGrid& grid, const BondSpec& bond) {
  const double w = bond.sign * weight_value(bond.weight_label, grid.activities());
  // P = A_{kk'} A^{-1}_{k'k} with k = (0, site1), k' = (delta, site2).
  const double inv = inv_element(grid, bond.delta, bond.site2, {0, 0}, bond.site1);
  return w * inv;
}

double bond_probability(const Activities& z, const BondSpec& bond, int quad_order) {
  return bond_probability(CouplingGrid(z, quad_order), bond);
}

TileDensities tile_densities(const CouplingGrid& grid) {
  TileDensities d;
  // Three dimers per cell spread over nine tile slots: tile fraction equals
  // bond probability / 3.
  for (const BondSpec& b : cell_bonds()) {
    const double frac = bond_probability(grid, b) / 3.0;
    const int i = static_cast<int>(b.tile);
    if (i < 3) {
      d.rho[i] = frac;
    } else {
      d.sigma[i - 3] = frac;
    }
  }
  return d;
}

TileDensities tile_densities(const Activities& z, int quad_order) {
  return tile_densities(CouplingGrid(z, quad_order));
}

PairProbability pair_probability(const CouplingGrid& grid, const BondSpec& bond_a,
                                 const BondSpec& bond_b, CellCoord offset) {
  const double pa = bond_probability(grid, bond_a);
  const double pb = bond_probability(grid, bond_b);

  PairProbability res;
  res.bond_a = bond_a;
  res.bond_b = bond_b;
  res.offset = offset;
  res.product = pa * pb;

  if (bond_a.index == bond_b.index && offset.x == 0 && offset.y == 0) {
    // An occupied bond coincides with itself.
    res.value = pa;
    res.product = pa * pa;
    return res;
  }

  const CellCoord ka_cell{0, 0};
  const CellCoord kpa_cell = bond_a.delta;
  const CellCoord kb_cell = offset;
  const CellCoord kpb_cell{offset.x + bond_b.delta.x, offset.y + bond_b.delta.y};

  const double aa = bond_a.sign * weight_value(bond_a.weight_label, grid.activities());
  const double ab = bond_b.sign * weight_value(bond_b.weight_label, grid.activities());

  const double i_ab = inv_element(grid, ka_cell, bond_a.site1, kb_cell, bond_b.site1);
  const double i_pab = inv_element(grid, kpa_cell, bond_a.site2, kpb_cell, bond_b.site2);
  const double i_apb = inv_element(grid, ka_cell, bond_a.site1, kpb_cell, bond_b.site2);
  const double i_pab2 = inv_element(grid, kpa_cell, bond_a.site2, kb_cell, bond_b.site1);

  res.value = pa * pb - aa * ab * (i_ab * i_pab - i_apb * i_pab2);
  return res;
}

PairProbability pair_probability(const Activities& z, const BondSpec& bond_a,
                                 const BondSpec& bond_b, CellCoord offset, int quad_order) {
  return pair_probability(CouplingGrid(z, quad_order), bond_a, bond_b, offset);
}

std::complex<double> autocorrelation_coefficient(const CouplingGrid& grid,
                                                 const ScattererWeights& h, GridVec delta,
                                                 int cutoff) {
  std::complex<double> acc = 0.0;
  bool decomposed = false;
  for (int to = 0; to < kNumTileKinds; ++to) {
    const TileKind tau = static_cast<TileKind>(to);
    for (int from = 0; from < kNumTileKinds; ++from) {
      const TileKind tau_from = static_cast<TileKind>(from);
      // Need delta = p_tau - p_from + r with r = x e1 + y e2 integer.
      const GridVec r = delta - (tile_info(tau).position - tile_info(tau_from).position);
      if (!on_lattice(r)) continue;
      const int x = (r.u + 2 * r.v) / 6;
      const int y = (r.u - r.v) / 6;
      decomposed = true;

      const BondSpec& ba = bond_of_tile(tau_from);
      const BondSpec& bb = bond_of_tile(tau);
      double joint;
      if (std::abs(x) <= cutoff && std::abs(y) <= cutoff) {
        joint = pair_probability(grid, ba, bb, {x, y}).value;
      } else {
        joint = bond_probability(grid, ba) * bond_probability(grid, bb);
      }
      acc += std::conj(h.of(tau_from)) * h.of(tau) * joint;
    }
  }
  if (!decomposed) {
    throw std::invalid_argument("autocorrelation_coefficient: delta is not a Kagome difference vector");
  }
  return acc / cell_area();
}

std::complex<double> autocorrelation_coefficient(const Activities& z, const ScattererWeights& h,
                                                 GridVec delta, int quad_order, int cutoff) {
  return autocorrelation_coefficient(CouplingGrid(z, quad_order), h, delta, cutoff);
}

}  // namespace dartdiff
