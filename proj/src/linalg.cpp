#include "dartdiff/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace dartdiff {

cplx det6(const Mat6& a) {
  Mat6 lu = a;
  cplx det = 1.0;
  for (int k = 0; k < 6; ++k) {
    int piv = k;
    double best = std::abs(lu(k, k));
    for (int i = k + 1; i < 6; ++i) {
      double v = std::abs(lu(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best == 0.0) return 0.0;
    if (piv != k) {
      for (int j = 0; j < 6; ++j) std::swap(lu(k, j), lu(piv, j));
      det = -det;
    }
    det *= lu(k, k);
    for (int i = k + 1; i < 6; ++i) {
      cplx f = lu(i, k) / lu(k, k);
      lu(i, k) = f;
      for (int j = k + 1; j < 6; ++j) lu(i, j) -= f * lu(k, j);
    }
  }
  return det;
}

cplx invert6(const Mat6& a, Mat6& inv) {
  Mat6 lu = a;
  std::array<int, 6> perm{0, 1, 2, 3, 4, 5};
  cplx det = 1.0;
  for (int k = 0; k < 6; ++k) {
    int piv = k;
    double best = std::abs(lu(k, k));
    for (int i = k + 1; i < 6; ++i) {
      double v = std::abs(lu(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best == 0.0) throw std::runtime_error("invert6: singular matrix");
    if (piv != k) {
      for (int j = 0; j < 6; ++j) std::swap(lu(k, j), lu(piv, j));
      std::swap(perm[k], perm[piv]);
      det = -det;
    }
    det *= lu(k, k);
    for (int i = k + 1; i < 6; ++i) {
      cplx f = lu(i, k) / lu(k, k);
      lu(i, k) = f;
      for (int j = k + 1; j < 6; ++j) lu(i, j) -= f * lu(k, j);
    }
  }
  // Solve A x = e_p for each unit vector, permuted.
  for (int col = 0; col < 6; ++col) {
    std::array<cplx, 6> x{};
    for (int i = 0; i < 6; ++i) x[i] = (perm[i] == col) ? 1.0 : 0.0;
    for (int i = 1; i < 6; ++i) {
      for (int j = 0; j < i; ++j) x[i] -= lu(i, j) * x[j];
    }
    for (int i = 5; i >= 0; --i) {
      for (int j = i + 1; j < 6; ++j) x[i] -= lu(i, j) * x[j];
      x[i] /= lu(i, i);
    }
    for (int i = 0; i < 6; ++i) inv(i, col) = x[i];
  }
  return det;
}

LogDet logdet_dense(std::vector<double> a, int n) {
  double log_abs = 0.0;
  int sign = 1;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    double best = std::fabs(a[k * n + k]);
    for (int i = k + 1; i < n; ++i) {
      double v = std::fabs(a[i * n + k]);
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best == 0.0) return {0.0, 0};
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(a[k * n + j], a[piv * n + j]);
      sign = -sign;
    }
    double d = a[k * n + k];
    log_abs += std::log(std::fabs(d));
    if (d < 0.0) sign = -sign;
    for (int i = k + 1; i < n; ++i) {
      double f = a[i * n + k] / d;
      for (int j = k + 1; j < n; ++j) a[i * n + j] -= f * a[k * n + j];
    }
  }
  return {log_abs, sign};
}

}  // namespace dartdiff
