#ifndef DARTDIFF_LATTICE_HPP
#define DARTDIFF_LATTICE_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "dartdiff/geometry.hpp"

namespace dartdiff {

// Free bond weights of the dimer model; all remaining activities are 1.
struct Activities {
  double z1 = 1.0;
  double z2 = 1.0;
  double z3 = 1.0;

  void validate() const;
};

enum class TileKind : int {
  Rho1 = 0,
  Rho2,
  Rho3,
  Sigma1,
  Sigma2,
  Sigma3,
  Sigma4,
  Sigma5,
  Sigma6,
};

constexpr int kNumTileKinds = 9;

const char* tile_name(TileKind k);
TileKind tile_from_name(const std::string& name);
inline bool is_rhombus(TileKind k) { return static_cast<int>(k) < 3; }

enum class WeightLabel : int { Z1 = 0, Z2, Z3, Unit };

const char* weight_name(WeightLabel w);
double weight_value(WeightLabel w, const Activities& z);

struct CellCoord {
  int x = 0;
  int y = 0;

  bool operator==(const CellCoord& o) const { return x == o.x && y == o.y; }
};

struct VertexId {
  CellCoord cell;
  int site = 1;  // 1..6
};

// One of the nine bonds of the elementary cell. `delta` is the cell offset
// from the site1 cell to the site2 cell; `sign` is the Kasteleyn orientation
// in the site1 -> site2 direction, read off the momentum-space matrix.
struct BondSpec {
  int index;  // 0..8
  int site1;
  int site2;
  CellCoord delta;
  WeightLabel weight_label;
  int sign;
  TileKind tile;
};

const std::array<BondSpec, 9>& cell_bonds();
const BondSpec& cell_bond(int index);

// Bond <-> tile bijection on the nine per-cell bonds.
TileKind tile_of_bond(const BondSpec& bond);
const BondSpec& bond_of_tile(TileKind tile);

// Tile geometry: scatterer position within the elementary cell (exact grid
// coordinates) and the common tile area sqrt(3)/2.
struct TileType {
  TileKind kind;
  GridVec position;
  double area;
};

const TileType& tile_info(TileKind kind);
Vec2 scatterer_position(TileKind kind, CellCoord cell);
GridVec scatterer_grid_position(TileKind kind, CellCoord cell);

// Finite m x n torus of Fisher-lattice cells. Vertices are indexed
// ((y*m)+x)*6 + (site-1); bonds are materialized per cell in the order of
// cell_bonds(). Immutable after construction.
class TorusGraph {
 public:
  struct Bond {
    VertexId a;
    VertexId b;
    int va;          // flat vertex index of a
    int vb;          // flat vertex index of b
    int spec_index;  // 0..8
    WeightLabel weight_label;
    int sign;
    TileKind tile;
    bool wraps_x;  // crosses the x = 0 boundary seam
    bool wraps_y;
  };

  TorusGraph(int m, int n);

  int m() const { return m_; }
  int n() const { return n_; }
  int num_vertices() const { return 6 * m_ * n_; }
  int num_bonds() const { return static_cast<int>(bonds_.size()); }
  const std::vector<Bond>& bonds() const { return bonds_; }
  const Bond& bond(int i) const { return bonds_[i]; }

  int vertex_index(CellCoord cell, int site) const;
  VertexId vertex_id(int index) const;
  CellCoord wrap(CellCoord cell) const;

  // Exactly three incident bonds per vertex, ordered by spec index.
  const std::array<int, 3>& incident_bonds(int vertex) const {
    return incident_[vertex];
  }
  int degree(int) const { return 3; }

  void dump(std::ostream& os) const;

 private:
  int m_;
  int n_;
  std::vector<Bond> bonds_;
  std::vector<std::array<int, 3>> incident_;
};

TorusGraph build_torus(int m, int n);

}  // namespace dartdiff

#endif
