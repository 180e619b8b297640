#ifndef DARTDIFF_LINALG_HPP
#define DARTDIFF_LINALG_HPP

#include <array>
#include <complex>
#include <vector>

namespace dartdiff {

using cplx = std::complex<double>;

// Fixed-size 6x6 complex matrix, row-major.
struct Mat6 {
  std::array<cplx, 36> m{};

  cplx& operator()(int i, int j) { return m[6 * i + j]; }
  const cplx& operator()(int i, int j) const { return m[6 * i + j]; }
};

// Determinant by LU with partial pivoting.
cplx det6(const Mat6& a);

// Determinant and inverse in one pass; throws on (numerically) singular input.
cplx invert6(const Mat6& a, Mat6& inv);

// log|det| and sign of a dense real matrix (LU, partial pivoting).
// Returns sign = 0 for singular input.
struct LogDet {
  double log_abs;
  int sign;
};
LogDet logdet_dense(std::vector<double> a, int n);

}  // namespace dartdiff

#endif
