#ifndef DARTDIFF_SPECTRUM_HPP
#define DARTDIFF_SPECTRUM_HPP

#include <vector>

#include "dartdiff/correlations.hpp"

namespace dartdiff {

struct BraggPeak {
  int k;
  int l;
  Vec2 position;  // k e1* + l e2*
  double intensity;
};

// Pure-point (Bragg) intensity at k e1* + l e2*:
//   (4/3) |h_r1 rho1 + (-1)^k h_r2 rho2 + (-1)^l h_r3 rho3
//          + 2 cos(pi (k+l)/3) ((-1)^{k+l} h_s1 sigma1
//            + (-1)^l h_s2 sigma2 + (-1)^k h_s3 sigma3)|^2.
double bragg_intensity(int k, int l, const TileDensities& d, const ScattererWeights& h);

std::vector<BraggPeak> bragg_peaks(int kmax, int lmax, const TileDensities& d,
                                   const ScattererWeights& h);

struct DiffuseSample {
  Vec2 q;
  double intensity;
  int truncation_radius;
  double error_bound;
};

// Absolutely continuous part of the diffraction at wave vector q (plane-wave
// convention e^{-2 pi i q.x}): Fourier sum of the fluctuation correlations
// over cell offsets |x|,|y| <= cutoff, organized in offset shells with early
// termination. error_bound estimates the dropped tail from the predicted
// exponential decay.
DiffuseSample diffuse_intensity(const Activities& z, const ScattererWeights& h, Vec2 q,
                                int cutoff, int quad_order);

// Batch version sharing one coupling table over many q (used by the CLI and
// the image comparisons).
class DiffuseCalculator {
 public:
  DiffuseCalculator(const Activities& z, const ScattererWeights& h, int cutoff, int quad_order);

  DiffuseSample at(Vec2 q) const;
  int cutoff() const { return cutoff_; }

 private:
  struct Term {
    Vec2 separation;
    std::complex<double> weight;  // conj(h_from) h_to (P_joint - P_a P_b)
  };
  std::vector<Term> terms_;
  int cutoff_;
  double tail_bound_;
};

}  // namespace dartdiff

#endif
