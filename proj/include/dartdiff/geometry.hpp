#ifndef DARTDIFF_GEOMETRY_HPP
#define DARTDIFF_GEOMETRY_HPP

#include <cmath>
#include <cstdlib>

namespace dartdiff {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  double dot(const Vec2& o) const { return x * o.x + y * o.y; }
  double cross(const Vec2& o) const { return x * o.y - y * o.x; }
  double norm() const { return std::hypot(x, y); }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

// Triangular lattice basis spanning the elementary cell, and its dual.
inline Vec2 basis_e1() { return {std::sqrt(3.0), 0.0}; }
inline Vec2 basis_e2() { return {0.5 * std::sqrt(3.0), 1.5}; }

struct ReciprocalBasis {
  Vec2 e1_star{1.0 / std::sqrt(3.0), -1.0 / 3.0};
  Vec2 e2_star{0.0, 2.0 / 3.0};
};

inline double cell_area() { return 1.5 * std::sqrt(3.0); }

// All scatterer positions are integer combinations u*ga + v*gb of the
// quarter-cell offsets ga = (sqrt3/4, 1/4), gb = (sqrt3/4, -1/4). Keeping
// the integer pair exact makes lattice-membership tests drift-free.
struct GridVec {
  int u = 0;
  int v = 0;

  GridVec operator+(const GridVec& o) const { return {u + o.u, v + o.v}; }
  GridVec operator-(const GridVec& o) const { return {u - o.u, v - o.v}; }
  bool operator==(const GridVec& o) const { return u == o.u && v == o.v; }

  Vec2 cart() const {
    return {(u + v) * (std::sqrt(3.0) / 4.0), (u - v) * 0.25};
  }
};

inline GridVec grid_e1() { return {2, 2}; }
inline GridVec grid_e2() { return {4, -2}; }

inline GridVec cell_grid_vec(int x, int y) {
  return {2 * x + 4 * y, 2 * x - 2 * y};
}

// Fractional cell coordinates of a grid point are ((u+2v)/6, (u-v)/6).
// g lies on the triangular lattice iff both are integers; the Kagome set
// is the 9 of the 12 residue classes that carry a scatterer.
inline bool on_lattice(const GridVec& g) {
  return (g.u + 2 * g.v) % 6 == 0 && (g.u - g.v) % 6 == 0;
}

inline bool on_kagome_grid(const GridVec& g) {
  auto mod6 = [](int k) { return ((k % 6) + 6) % 6; };
  int c1 = mod6(g.u + 2 * g.v);
  int c2 = mod6(g.u - g.v);
  if ((c1 - c2) % 3 != 0) return false;  // cannot happen for integer input
  bool hole = (c1 == c2) && (c1 == 0 || c1 == 2 || c1 == 4);
  return !hole;
}

}  // namespace dartdiff

#endif
