#include "dartdiff/lattice.hpp"

#include <cmath>
#include <ostream>

namespace dartdiff {

void Activities::validate() const {
  if (!(z1 > 0.0) || !(z2 > 0.0) || !(z3 > 0.0) || !std::isfinite(z1) ||
      !std::isfinite(z2) || !std::isfinite(z3)) {
    throw std::invalid_argument("activities z1, z2, z3 must be positive and finite");
  }
}

const char* tile_name(TileKind k) {
  static const char* names[kNumTileKinds] = {
      "rho1", "rho2", "rho3", "sigma1", "sigma2", "sigma3", "sigma4", "sigma5", "sigma6"};
  return names[static_cast<int>(k)];
}

TileKind tile_from_name(const std::string& name) {
  for (int i = 0; i < kNumTileKinds; ++i) {
    if (name == tile_name(static_cast<TileKind>(i))) return static_cast<TileKind>(i);
  }
  throw std::invalid_argument("unknown tile kind: " + name);
}

const char* weight_name(WeightLabel w) {
  switch (w) {
    case WeightLabel::Z1: return "z1";
    case WeightLabel::Z2: return "z2";
    case WeightLabel::Z3: return "z3";
    case WeightLabel::Unit: return "unit";
  }
  return "?";
}

double weight_value(WeightLabel w, const Activities& z) {
  switch (w) {
    case WeightLabel::Z1: return z.z1;
    case WeightLabel::Z2: return z.z2;
    case WeightLabel::Z3: return z.z3;
    case WeightLabel::Unit: return 1.0;
  }
  return 1.0;
}

// The nine bonds of the elementary cell, with connectivity, weights and
// orientation signs read off the momentum-space matrix: the seven intra-cell
// entries are +weight above the diagonal, and the two wrapping bonds carry
// -exp(-i phi) between sites (1,5) across -e1 and (2,6) across -e2.
//
// The bond -> tile assignment pairs each z_i doublet with the dart pair
// {sigma_i, sigma_{i+4 mod 6}} and each unit bond with the rhombus whose
// darts it accompanies: saturating z_i freezes the two z_i bonds plus one
// unit bond per cell, and that crystal must have matching tile labels
// (rho_i with sigma_i) for the density constraints to close.
const std::array<BondSpec, 9>& cell_bonds() {
  static const std::array<BondSpec, 9> bonds = {{
      {0, 1, 2, {0, 0}, WeightLabel::Z1, +1, TileKind::Sigma1},
      {1, 1, 3, {0, 0}, WeightLabel::Z3, +1, TileKind::Sigma3},
      {2, 2, 3, {0, 0}, WeightLabel::Z2, +1, TileKind::Sigma2},
      {3, 3, 4, {0, 0}, WeightLabel::Unit, +1, TileKind::Rho1},
      {4, 4, 5, {0, 0}, WeightLabel::Z3, +1, TileKind::Sigma4},
      {5, 4, 6, {0, 0}, WeightLabel::Z2, +1, TileKind::Sigma6},
      {6, 5, 6, {0, 0}, WeightLabel::Z1, +1, TileKind::Sigma5},
      {7, 1, 5, {-1, 0}, WeightLabel::Unit, -1, TileKind::Rho2},
      {8, 2, 6, {0, -1}, WeightLabel::Unit, -1, TileKind::Rho3},
  }};
  return bonds;
}

const BondSpec& cell_bond(int index) { return cell_bonds()[index]; }

TileKind tile_of_bond(const BondSpec& bond) { return bond.tile; }

const BondSpec& bond_of_tile(TileKind tile) {
  for (const BondSpec& b : cell_bonds()) {
    if (b.tile == tile) return b;
  }
  throw std::logic_error("bond_of_tile: unmapped tile");
}

// Scatterer positions within the cell, as integer multiples of the
// quarter-cell offsets: rho1 = 3a, rho2 = 2a-b, rho3 = a+b, sigma1 = a,
// sigma2 = 2a+b, sigma3 = 3a-b, sigma4 = 3a+b, sigma5 = 5a, sigma6 = 4a-b.
const TileType& tile_info(TileKind kind) {
  static const double area = 0.5 * std::sqrt(3.0);
  static const std::array<TileType, kNumTileKinds> info = {{
      {TileKind::Rho1, {3, 0}, area},
      {TileKind::Rho2, {2, -1}, area},
      {TileKind::Rho3, {1, 1}, area},
      {TileKind::Sigma1, {1, 0}, area},
      {TileKind::Sigma2, {2, 1}, area},
      {TileKind::Sigma3, {3, -1}, area},
      {TileKind::Sigma4, {3, 1}, area},
      {TileKind::Sigma5, {5, 0}, area},
      {TileKind::Sigma6, {4, -1}, area},
  }};
  return info[static_cast<int>(kind)];
}

GridVec scatterer_grid_position(TileKind kind, CellCoord cell) {
  return tile_info(kind).position + cell_grid_vec(cell.x, cell.y);
}

Vec2 scatterer_position(TileKind kind, CellCoord cell) {
  return scatterer_grid_position(kind, cell).cart();
}

TorusGraph::TorusGraph(int m, int n) : m_(m), n_(n) {
  if (m < 2 || n < 2) {
    throw std::invalid_argument("build_torus: need m >= 2 and n >= 2 (smaller tori create parallel bonds)");
  }
  bonds_.reserve(9 * m * n);
  incident_.assign(6 * m * n, {-1, -1, -1});
  std::vector<int> fill(6 * m * n, 0);

  for (int y = 0; y < n; ++y) {
    for (int x = 0; x < m; ++x) {
      CellCoord cell{x, y};
      for (const BondSpec& spec : cell_bonds()) {
        CellCoord other = wrap({x + spec.delta.x, y + spec.delta.y});
        Bond b;
        b.a = {cell, spec.site1};
        b.b = {other, spec.site2};
        b.va = vertex_index(cell, spec.site1);
        b.vb = vertex_index(other, spec.site2);
        b.spec_index = spec.index;
        b.weight_label = spec.weight_label;
        b.sign = spec.sign;
        b.tile = spec.tile;
        b.wraps_x = spec.delta.x != 0 && x + spec.delta.x < 0;
        b.wraps_y = spec.delta.y != 0 && y + spec.delta.y < 0;
        int id = static_cast<int>(bonds_.size());
        bonds_.push_back(b);
        incident_[b.va][fill[b.va]++] = id;
        incident_[b.vb][fill[b.vb]++] = id;
      }
    }
  }
  for (int v = 0; v < 6 * m * n; ++v) {
    if (fill[v] != 3) throw std::logic_error("torus vertex degree != 3");
  }
}

int TorusGraph::vertex_index(CellCoord cell, int site) const {
  CellCoord c = wrap(cell);
  return (c.y * m_ + c.x) * 6 + (site - 1);
}

VertexId TorusGraph::vertex_id(int index) const {
  int site = index % 6 + 1;
  int cell = index / 6;
  return {{cell % m_, cell / m_}, site};
}

CellCoord TorusGraph::wrap(CellCoord cell) const {
  int x = cell.x % m_;
  int y = cell.y % n_;
  if (x < 0) x += m_;
  if (y < 0) y += n_;
  return {x, y};
}

void TorusGraph::dump(std::ostream& os) const {
  for (const Bond& b : bonds_) {
    const BondSpec& spec = cell_bond(b.spec_index);
    os << b.a.cell.x << ' ' << b.a.cell.y << ' ' << b.a.site << ' ' << b.b.site
       << ' ' << spec.delta.x << ' ' << spec.delta.y << ' '
       << weight_name(b.weight_label) << ' ' << b.sign << ' '
       << tile_name(b.tile) << '\n';
  }
}

TorusGraph build_torus(int m, int n) { return TorusGraph(m, n); }

}  // namespace dartdiff
