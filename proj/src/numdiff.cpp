#include "dartdiff/numdiff.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <stdexcept>

namespace dartdiff {

ScattererSet scatter_points(const Tiling& t, const ScattererWeights& h) {
  ScattererSet s;
  s.m = t.m;
  s.n = t.n;
  s.points.reserve(t.tiles.size());
  for (const auto& [kind, cell] : t.tiles) {
    const GridVec g = tile_info(kind).position;
    // grid coords (u,v) -> twelfths of the cell edges: s1 = 2(u+2v), s2 = 2(u-v)
    int s1 = 2 * (g.u + 2 * g.v) + 12 * cell.x;
    int s2 = 2 * (g.u - g.v) + 12 * cell.y;
    s1 %= 12 * t.m;
    s2 %= 12 * t.n;
    if (s1 < 0) s1 += 12 * t.m;
    if (s2 < 0) s2 += 12 * t.n;
    s.points.push_back({s1, s2, h.of(kind)});
  }
  return s;
}

Vec2 DiffractionImage::q_of(int k1, int k2) const {
  const ReciprocalBasis rec;
  return (static_cast<double>(k1) / (m * supercell)) * rec.e1_star +
         (static_cast<double>(k2) / (n * supercell)) * rec.e2_star;
}

double DiffractionImage::mean_intensity() const {
  double acc = 0.0;
  for (double v : intensity) acc += v;
  return acc / static_cast<double>(intensity.size());
}

DiffractionImage fft_diffraction(const ScattererSet& s, int m, int n, int supercell) {
  if (s.m != m || s.n != n) throw std::invalid_argument("fft_diffraction: torus size mismatch");
  if (supercell < 1) throw std::invalid_argument("fft_diffraction: supercell must be >= 1");
  const int n1 = 12 * m * supercell;
  const int n2 = 12 * n * supercell;

  std::vector<std::complex<double>> grid(static_cast<size_t>(n1) * n2, {0.0, 0.0});
  for (const auto& p : s.points) {
    if (p.s1 < 0 || p.s1 >= 12 * m || p.s2 < 0 || p.s2 >= 12 * n) {
      throw std::invalid_argument("fft_diffraction: scatterer off the commensurate grid");
    }
    grid[static_cast<size_t>(p.s1) * n2 + p.s2] += p.weight;
  }

  // Forward transform, FFTW sign convention e^{-2 pi i k s / N}.
  fftw_plan plan = fftw_plan_dft_2d(n1, n2, reinterpret_cast<fftw_complex*>(grid.data()),
                                    reinterpret_cast<fftw_complex*>(grid.data()), FFTW_FORWARD,
                                    FFTW_ESTIMATE);
  fftw_execute(plan);
  fftw_destroy_plan(plan);

  DiffractionImage img;
  img.n1 = n1;
  img.n2 = n2;
  img.m = m;
  img.n = n;
  img.supercell = supercell;
  img.patch_area = s.patch_area();
  img.intensity.resize(grid.size());
  const double norm = 1.0 / img.patch_area;
  for (size_t i = 0; i < grid.size(); ++i) img.intensity[i] = std::norm(grid[i]) * norm;
  return img;
}

ImageAccumulator::ImageAccumulator(const DiffractionImage& first) : shape(first) {
  sum.assign(first.intensity.size(), 0.0);
  sum_sq.assign(first.intensity.size(), 0.0);
  add(first);
}

void ImageAccumulator::add(const DiffractionImage& img) {
  if (img.intensity.size() != sum.size()) {
    throw std::invalid_argument("ImageAccumulator: image size mismatch");
  }
  for (size_t i = 0; i < sum.size(); ++i) {
    sum[i] += img.intensity[i];
    sum_sq[i] += img.intensity[i] * img.intensity[i];
  }
  ++count;
}

DiffractionImage ImageAccumulator::mean() const {
  DiffractionImage img = shape;
  for (size_t i = 0; i < sum.size(); ++i) img.intensity[i] = sum[i] / count;
  return img;
}

std::vector<double> ImageAccumulator::stderr_of_mean() const {
  std::vector<double> err(sum.size(), 0.0);
  if (count < 2) return err;
  for (size_t i = 0; i < sum.size(); ++i) {
    const double mean = sum[i] / count;
    const double var = (sum_sq[i] - count * mean * mean) / (count - 1);
    err[i] = std::sqrt(std::max(var, 0.0) / count);
  }
  return err;
}

std::vector<AutocorrCoefficient> empirical_autocorrelation(const ScattererSet& s,
                                                           double max_radius) {
  const int n1 = 12 * s.m;
  const int n2 = 12 * s.n;
  const Vec2 half_diag = 0.5 * (s.m * basis_e1() + s.n * basis_e2());
  if (max_radius > half_diag.norm()) {
    throw std::invalid_argument("empirical_autocorrelation: max_radius exceeds half the patch diameter");
  }

  std::map<std::pair<int, int>, std::complex<double>> acc;
  for (const auto& py : s.points) {
    for (const auto& px : s.points) {
      int d1 = px.s1 - py.s1;
      int d2 = px.s2 - py.s2;
      // minimal periodic representative
      d1 = ((d1 % n1) + n1) % n1;
      d2 = ((d2 % n2) + n2) % n2;
      if (d1 > n1 / 2) d1 -= n1;
      if (d2 > n2 / 2) d2 -= n2;
      const Vec2 r = (d1 / 12.0) * basis_e1() + (d2 / 12.0) * basis_e2();
      if (r.norm() > max_radius) continue;
      acc[{d1, d2}] += std::conj(py.weight) * px.weight;
    }
  }

  std::vector<AutocorrCoefficient> out;
  out.reserve(acc.size());
  const double inv_area = 1.0 / s.patch_area();
  for (const auto& [key, val] : acc) {
    AutocorrCoefficient c;
    const int d1 = key.first;
    const int d2 = key.second;
    // twelfth coords back to grid coords: u = (d1 + 2 d2)/6, v = (d1 - d2)/6
    c.difference = {(d1 + 2 * d2) / 6, (d1 - d2) / 6};
    c.difference_cart = (d1 / 12.0) * basis_e1() + (d2 / 12.0) * basis_e2();
    c.value = val * inv_area;
    out.push_back(c);
  }
  return out;
}

BraggComparison compare_bragg(const DiffractionImage& img, const std::vector<BraggPeak>& peaks,
                              double rel_tol) {
  BraggComparison cmp;
  double total = 0.0;
  for (double v : img.intensity) total += v;
  if (total == 0.0) {
    cmp.degenerate = true;
    return cmp;
  }

  const int pm = img.m * img.supercell;
  const int pn = img.n * img.supercell;
  double peak_scale = 0.0;
  for (const auto& peak : peaks) peak_scale = std::max(peak_scale, std::fabs(peak.intensity));
  for (const auto& peak : peaks) {
    const int k1 = ((peak.k * pm) % img.n1 + img.n1) % img.n1;
    const int k2 = ((peak.l * pn) % img.n2 + img.n2) % img.n2;
    // peak mass = pixel value / patch area
    const double measured = img.at(k1, k2) / img.patch_area;
    BraggComparison::Row row{peak.k, peak.l, peak.intensity, measured, 0.0};
    // exact zeros (fully cancelled peaks) are judged against the peak scale
    const double scale = std::max(std::fabs(peak.intensity), 1e-9 * peak_scale);
    row.rel_error = scale > 0.0 ? std::fabs(measured - peak.intensity) / scale : 0.0;
    cmp.max_rel_error = std::max(cmp.max_rel_error, row.rel_error);
    cmp.rows.push_back(row);
  }

  double bg_sum = 0.0;
  long long bg_count = 0;
  for (int k1 = 0; k1 < img.n1; ++k1) {
    for (int k2 = 0; k2 < img.n2; ++k2) {
      if (img.is_bragg_pixel(k1, k2)) continue;
      const double v = img.at(k1, k2);
      bg_sum += v;
      cmp.background_max = std::max(cmp.background_max, v);
      ++bg_count;
    }
  }
  cmp.background_mean = bg_count > 0 ? bg_sum / bg_count : 0.0;
  cmp.pass = cmp.max_rel_error <= rel_tol;
  return cmp;
}

}  // namespace dartdiff
