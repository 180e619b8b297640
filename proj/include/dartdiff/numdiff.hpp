#ifndef DARTDIFF_NUMDIFF_HPP
#define DARTDIFF_NUMDIFF_HPP

#include <complex>
#include <vector>

#include "dartdiff/sampler.hpp"
#include "dartdiff/spectrum.hpp"

namespace dartdiff {

// Weighted point scatterers of one torus patch. Positions are kept on the
// exact quarter-offset integer grid (12 subdivisions per cell edge), so FFT
// binning is lossless.
struct ScattererSet {
  int m = 0;
  int n = 0;
  struct Point {
    int s1;  // position = (s1/12) e1 + (s2/12) e2, s1 in [0, 12m), s2 in [0, 12n)
    int s2;
    std::complex<double> weight;
  };
  std::vector<Point> points;

  Vec2 cart(const Point& p) const {
    return (p.s1 / 12.0) * basis_e1() + (p.s2 / 12.0) * basis_e2();
  }
  double patch_area() const { return m * n * cell_area(); }
};

ScattererSet scatter_points(const Tiling& t, const ScattererWeights& h);

// Discrete diffraction image, intensity = |w_hat(q)|^2 / patch_area on the
// grid q = (k1 / (m s)) e1* + (k2 / (n s)) e2*, k1 in [0, 12 m s), s the
// zero-padding (supercell) factor. Bragg pixels sit at k1 = 0 mod m s,
// k2 = 0 mod n s; their value times 1/patch_area is the Bragg peak mass.
struct DiffractionImage {
  int n1 = 0;
  int n2 = 0;
  int m = 0;
  int n = 0;
  int supercell = 1;
  double patch_area = 0.0;
  std::vector<double> intensity;  // row-major, intensity[k1 * n2 + k2]

  double at(int k1, int k2) const { return intensity[static_cast<size_t>(k1) * n2 + k2]; }
  bool is_bragg_pixel(int k1, int k2) const {
    return k1 % (m * supercell) == 0 && k2 % (n * supercell) == 0;
  }
  Vec2 q_of(int k1, int k2) const;
  // Mean pixel intensity; equals sum |w|^2 / patch_area by Parseval.
  double mean_intensity() const;
};

DiffractionImage fft_diffraction(const ScattererSet& s, int m, int n, int supercell = 1);

// Averages images pixel-wise and tracks the per-pixel variance of the mean.
struct ImageAccumulator {
  explicit ImageAccumulator(const DiffractionImage& shape);
  void add(const DiffractionImage& img);
  DiffractionImage mean() const;
  std::vector<double> stderr_of_mean() const;

  int count = 0;
  DiffractionImage shape;
  std::vector<double> sum;
  std::vector<double> sum_sq;
};

struct AutocorrCoefficient {
  GridVec difference;  // exact grid coordinates
  Vec2 difference_cart;
  std::complex<double> value;
};

// Periodic (torus) estimator of the autocorrelation coefficients:
// nu(z) = (1/area) sum_y conj(w(y)) w(y+z), for |z| <= max_radius.
std::vector<AutocorrCoefficient> empirical_autocorrelation(const ScattererSet& s,
                                                           double max_radius);

// Per-peak comparison of an image against the exact Bragg list.
struct BraggComparison {
  struct Row {
    int k;
    int l;
    double exact;
    double measured;
    double rel_error;
  };
  std::vector<Row> rows;
  double max_rel_error = 0.0;
  double background_mean = 0.0;
  double background_max = 0.0;
  bool degenerate = false;  // empty input image
  bool pass = false;
};

BraggComparison compare_bragg(const DiffractionImage& img, const std::vector<BraggPeak>& peaks,
                              double rel_tol = 0.05);

}  // namespace dartdiff

#endif
