#ifndef DARTDIFF_SPECTRAL_HPP
#define DARTDIFF_SPECTRAL_HPP

#include <limits>
#include <vector>

#include "dartdiff/lattice.hpp"
#include "dartdiff/linalg.hpp"

namespace dartdiff {

// Momentum-space Kasteleyn matrix lambda(phi1, phi2) at the given activities.
Mat6 lambda_matrix(const Activities& z, double phi1, double phi2);

// Coefficients of det(lambda) = a + 2b cos(phi1) + 2c cos(phi2)
//                               + 2d cos(phi1 - phi2).
struct DetCoefficients {
  double a;
  double b;
  double c;
  double d;

  static DetCoefficients from(const Activities& z);
  double eval(double phi1, double phi2) const;
};

double det_lambda(const Activities& z, double phi1, double phi2);

enum class PhaseClass { Generic, OnsagerCritical, KasteleynCritical };

const char* phase_name(PhaseClass c);

// Distances to the two second-order transition manifolds,
//   onsager_gap   = 2 max{1, z1^2, z2^2, z3^2} - (1 + z1^2 + z2^2 + z3^2)
//   kasteleyn_gap = 2 max{z1^2, z2^2, z3^2} - (z1^2 + z2^2 + z3^2),
// plus the minimum of det(lambda) over a phi grid as a diagnostic.
struct PhaseReport {
  double onsager_gap;
  double kasteleyn_gap;
  PhaseClass classification;
  double min_det;
};

PhaseReport classify_phase(const Activities& z, double tol = 1e-8, int grid = 128);

// Free energy per elementary cell,
//   f = (1/2) (2 pi)^-2 \int\int ln det(lambda) dphi,
// by midpoint-shifted tensor trapezoidal quadrature (spectrally accurate for
// generic z). On a critical line the integrand has an integrable log
// singularity; the quadrature ladder is then Richardson-extrapolated.
// Throws std::runtime_error if the ladder does not converge.
double free_energy(const Activities& z, int quad_order);

// Inverse-Kasteleyn coupling [x,y]_{p1 p2}: the infinite-volume matrix
// element between site p1 in the origin cell and site p2 in the cell at
// x e1 + y e2. Real for a real antisymmetric operator; the imaginary
// quadrature residue is checked and discarded.
struct CouplingValue {
  int x;
  int y;
  int p1;  // 1..6
  int p2;
  double value;
};

// Shared evaluation grid: lambda^{-1} tabulated on the quad_order^2 shifted
// midpoint grid. Immutable after construction; safe for concurrent reads.
class CouplingGrid {
 public:
  CouplingGrid(const Activities& z, int quad_order);

  const Activities& activities() const { return z_; }
  int quad_order() const { return order_; }

  CouplingValue coupling(int x, int y, int p1, int p2) const;

  // All couplings with |x| <= xmax, |y| <= ymax in one sweep.
  // Index layout: ((x+xmax)*(2*ymax+1) + (y+ymax))*36 + 6*(p1-1) + (p2-1).
  std::vector<double> coupling_block(int xmax, int ymax) const;

  static constexpr double kImagTol = 1e-9;

 private:
  Activities z_;
  int order_;
  std::vector<Mat6> inv_;  // lambda^{-1} at each grid point, row-major in (j1, j2)
};

CouplingValue coupling(const Activities& z, int x, int y, int p1, int p2, int quad_order);

// Exponential decay rates of the coupling function, from the roots
//   v_pm(w) = (-alpha pm sqrt(alpha^2 - 4 beta)) / (2 (b w + d)),
// alpha = a w + c (w^2 + 1), beta = w (b w + d)(b + d w), scanned over the
// unit circle |w| = 1; t1 = -log max_w |v_+|, and t2 from the same
// construction with the two angles (b and c) exchanged. Infinite when the
// root set is empty or degenerate (finite-support couplings).
struct DecayRates {
  double t1;
  double t2;
  bool critical;  // a root reached the unit circle

  static constexpr double kInf = std::numeric_limits<double>::infinity();
};

DecayRates predict_decay_rates(const Activities& z, int samples = 720);

}  // namespace dartdiff

#endif
