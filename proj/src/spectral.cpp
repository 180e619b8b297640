#include "dartdiff/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dartdiff {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

Mat6 lambda_matrix(const Activities& z, double phi1, double phi2) {
  Mat6 lam;
  const cplx em1 = std::polar(1.0, -phi1);
  const cplx em2 = std::polar(1.0, -phi2);
  // Upper triangle as printed; lower triangle follows from
  // lambda(phi)^T = -lambda(-phi).
  lam(0, 1) = z.z1;
  lam(0, 2) = z.z3;
  lam(0, 4) = -em1;
  lam(1, 2) = z.z2;
  lam(1, 5) = -em2;
  lam(2, 3) = 1.0;
  lam(3, 4) = z.z3;
  lam(3, 5) = z.z2;
  lam(4, 5) = z.z1;
  lam(1, 0) = -z.z1;
  lam(2, 0) = -z.z3;
  lam(4, 0) = std::conj(em1);  // +e^{i phi1}
  lam(2, 1) = -z.z2;
  lam(5, 1) = std::conj(em2);  // +e^{i phi2}
  lam(3, 2) = -1.0;
  lam(4, 3) = -z.z3;
  lam(5, 3) = -z.z2;
  lam(5, 4) = -z.z1;
  return lam;
}

DetCoefficients DetCoefficients::from(const Activities& z) {
  const double s1 = z.z1 * z.z1;
  const double s2 = z.z2 * z.z2;
  const double s3 = z.z3 * z.z3;
  return {s1 * s1 + s2 * s2 + s3 * s3 + 1.0, s1 * s2 - s3, s1 * s3 - s2, s2 * s3 - s1};
}

double DetCoefficients::eval(double phi1, double phi2) const {
  return a + 2.0 * b * std::cos(phi1) + 2.0 * c * std::cos(phi2) +
         2.0 * d * std::cos(phi1 - phi2);
}

double det_lambda(const Activities& z, double phi1, double phi2) {
  return DetCoefficients::from(z).eval(phi1, phi2);
}

const char* phase_name(PhaseClass c) {
  switch (c) {
    case PhaseClass::Generic: return "Generic";
    case PhaseClass::OnsagerCritical: return "OnsagerCritical";
    case PhaseClass::KasteleynCritical: return "KasteleynCritical";
  }
  return "?";
}

PhaseReport classify_phase(const Activities& z, double tol, int grid) {
  z.validate();
  if (!(tol > 0.0)) throw std::invalid_argument("classify_phase: tol must be positive");
  const double s1 = z.z1 * z.z1;
  const double s2 = z.z2 * z.z2;
  const double s3 = z.z3 * z.z3;
  const double onsager = 2.0 * std::max({1.0, s1, s2, s3}) - (1.0 + s1 + s2 + s3);
  const double kasteleyn = 2.0 * std::max({s1, s2, s3}) - (s1 + s2 + s3);

  PhaseClass cls = PhaseClass::Generic;
  if (std::fabs(onsager) <= tol) {
    cls = PhaseClass::OnsagerCritical;
  } else if (std::fabs(kasteleyn) <= tol) {
    cls = PhaseClass::KasteleynCritical;
  }

  const DetCoefficients co = DetCoefficients::from(z);
  double min_det = std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid; ++i) {
    const double p1 = kTwoPi * i / grid;
    for (int j = 0; j < grid; ++j) {
      min_det = std::min(min_det, co.eval(p1, kTwoPi * j / grid));
    }
  }
  return {onsager, kasteleyn, cls, min_det};
}

namespace {

// Midpoint tensor rule for (2 pi)^-2 \int\int (1/2) ln det.
double free_energy_raw(const DetCoefficients& co, int order) {
  double sum = 0.0;
  for (int i = 0; i < order; ++i) {
    const double p1 = kTwoPi * (i + 0.5) / order;
    const double c1 = std::cos(p1);
    for (int j = 0; j < order; ++j) {
      const double p2 = kTwoPi * (j + 0.5) / order;
      const double det = co.a + 2.0 * co.b * c1 + 2.0 * co.c * std::cos(p2) +
                         2.0 * co.d * std::cos(p1 - p2);
      sum += std::log(det);
    }
  }
  return 0.5 * sum / (static_cast<double>(order) * order);
}

}  // namespace

double free_energy(const Activities& z, int quad_order) {
  z.validate();
  if (quad_order < 4) throw std::invalid_argument("free_energy: quad_order must be >= 4");

  const DetCoefficients co = DetCoefficients::from(z);
  const double tol = 1e-9;

  double prev = free_energy_raw(co, quad_order);
  double cur = free_energy_raw(co, 2 * quad_order);
  if (std::fabs(cur - prev) <= tol * (1.0 + std::fabs(cur))) return cur;

  // Slow convergence: the log singularity on a transition line. Midpoint
  // error there is ~ N^-2 log N; a two-level Richardson ladder removes it.
  const int max_order = 2048;
  std::vector<double> f;
  int order = std::max(quad_order, 64);
  for (; order <= max_order; order *= 2) f.push_back(free_energy_raw(co, order));
  std::vector<double> r1(f);
  for (size_t i = 0; i + 1 < f.size(); ++i) r1[i] = (4.0 * f[i + 1] - f[i]) / 3.0;
  r1.pop_back();
  double best = r1.back();
  if (r1.size() >= 2) {
    std::vector<double> r2(r1);
    for (size_t i = 0; i + 1 < r1.size(); ++i) r2[i] = (4.0 * r1[i + 1] - r1[i]) / 3.0;
    r2.pop_back();
    if (std::fabs(r2.back() - best) > 1e-6 * (1.0 + std::fabs(best))) {
      throw std::runtime_error("free_energy: quadrature did not converge (z on/near a critical line)");
    }
    best = r2.back();
  }
  return best;
}

CouplingGrid::CouplingGrid(const Activities& z, int quad_order) : z_(z), order_(quad_order) {
  z.validate();
  if (quad_order < 4) throw std::invalid_argument("CouplingGrid: quad_order must be >= 4");
  PhaseReport rep = classify_phase(z);
  if (rep.classification != PhaseClass::Generic) {
    throw std::domain_error(std::string("coupling quadrature requires generic activities; z is ") +
                            phase_name(rep.classification));
  }
  inv_.resize(static_cast<size_t>(order_) * order_);
  Mat6 inv;
  for (int i = 0; i < order_; ++i) {
    const double p1 = kTwoPi * (i + 0.5) / order_;
    for (int j = 0; j < order_; ++j) {
      const double p2 = kTwoPi * (j + 0.5) / order_;
      invert6(lambda_matrix(z_, p1, p2), inv);
      inv_[static_cast<size_t>(i) * order_ + j] = inv;
    }
  }
}

CouplingValue CouplingGrid::coupling(int x, int y, int p1, int p2) const {
  if (p1 < 1 || p1 > 6 || p2 < 1 || p2 > 6) {
    throw std::invalid_argument("coupling: site indices must be in 1..6");
  }
  // lambda(phi) collects bond terms as e^{+i phi . delta}, so the inverse
  // transform of lambda^{-1} back to the cell offset r carries e^{-i phi . r}.
  cplx acc = 0.0;
  for (int i = 0; i < order_; ++i) {
    const double ph1 = -kTwoPi * (i + 0.5) / order_ * x;
    for (int j = 0; j < order_; ++j) {
      const double ph2 = -kTwoPi * (j + 0.5) / order_ * y;
      acc += inv_[static_cast<size_t>(i) * order_ + j](p1 - 1, p2 - 1) *
             std::polar(1.0, ph1 + ph2);
    }
  }
  acc /= static_cast<double>(order_) * order_;
  if (std::fabs(acc.imag()) > kImagTol) {
    throw std::runtime_error("coupling: imaginary quadrature residue above tolerance");
  }
  return {x, y, p1, p2, acc.real()};
}

std::vector<double> CouplingGrid::coupling_block(int xmax, int ymax) const {
  const int nx = 2 * xmax + 1;
  const int ny = 2 * ymax + 1;
  std::vector<cplx> acc(static_cast<size_t>(nx) * ny * 36, cplx{0.0, 0.0});
  std::vector<cplx> phase1(nx), phase2(ny);
  for (int i = 0; i < order_; ++i) {
    const double p1 = kTwoPi * (i + 0.5) / order_;
    for (int x = -xmax; x <= xmax; ++x) phase1[x + xmax] = std::polar(1.0, -p1 * x);
    for (int j = 0; j < order_; ++j) {
      const double p2 = kTwoPi * (j + 0.5) / order_;
      for (int y = -ymax; y <= ymax; ++y) phase2[y + ymax] = std::polar(1.0, -p2 * y);
      const Mat6& inv = inv_[static_cast<size_t>(i) * order_ + j];
      for (int x = 0; x < nx; ++x) {
        for (int y = 0; y < ny; ++y) {
          const cplx ph = phase1[x] * phase2[y];
          cplx* out = &acc[(static_cast<size_t>(x) * ny + y) * 36];
          for (int e = 0; e < 36; ++e) out[e] += inv.m[e] * ph;
        }
      }
    }
  }
  const double norm = 1.0 / (static_cast<double>(order_) * order_);
  std::vector<double> result(acc.size());
  for (size_t k = 0; k < acc.size(); ++k) {
    const cplx v = acc[k] * norm;
    if (std::fabs(v.imag()) > kImagTol) {
      throw std::runtime_error("coupling_block: imaginary quadrature residue above tolerance");
    }
    result[k] = v.real();
  }
  return result;
}

CouplingValue coupling(const Activities& z, int x, int y, int p1, int p2, int quad_order) {
  return CouplingGrid(z, quad_order).coupling(x, y, p1, p2);
}

namespace {

// Max over the circle |w| = radius of the modulus of the inner root of
// A v^2 + alpha v + C, with A = bw + d, alpha = aw + c(w^2+1), C = w(b + dw).
// On the unit circle the two root moduli multiply to 1, so the inner branch
// is the one of smaller modulus; off the circle we keep the same selection
// and mark the slice invalid once a root family touches |v| = 1.
// Returns -1 for an invalid slice, 0 when no finite roots exist.
double max_inner_root(double a, double b, double c, double d, double radius, int samples) {
  double max_mod = 0.0;
  bool any_root = false;
  // endpoint grid: w = +radius and (for even counts) w = -radius are sampled
  // exactly, which is where critical roots touch the unit circle
  for (int k = 0; k < samples; ++k) {
    const cplx w = std::polar(radius, kTwoPi * k / samples);
    const cplx A = b * w + d;
    const cplx C = w * (b + d * w);
    const cplx alpha = a * w + c * (w * w + 1.0);
    const double scale = std::fabs(a) + std::fabs(b) + std::fabs(c) + std::fabs(d);
    if (std::abs(A) < 1e-13 * scale) {
      // Quadratic degenerates: at most one finite root alpha v + C = 0.
      if (std::abs(alpha) > 1e-13 * scale) {
        const double r = std::abs(-C / alpha);
        if (r > 1e-14) {
          if (r >= 1.0) return -1.0;
          any_root = true;
          max_mod = std::max(max_mod, r);
        }
      }
      continue;
    }
    const cplx disc = std::sqrt(alpha * alpha - 4.0 * A * C);
    const double m1 = std::abs((-alpha + disc) / (2.0 * A));
    const double m2 = std::abs((-alpha - disc) / (2.0 * A));
    const double inner = std::min(m1, m2);
    const double outer = std::max(m1, m2);
    if (inner >= 1.0 || outer <= 1.0) return -1.0;  // root family crossed |v| = 1
    any_root = true;
    max_mod = std::max(max_mod, inner);
  }
  return any_root ? max_mod : 0.0;
}

// The unit-circle scan only bounds the decay from below: the w contour may
// be deformed to |w| = e^sigma as long as the root families stay separated
// by |v| = 1, and the tightest radius gives the actual asymptotic rate
// (verified against least-squares fits of the coupling decay).
double optimized_rate(double a, double b, double c, double d, int samples, bool& critical) {
  const double crit_tol = 1e-6;  // sqrt-amplified roundoff near a double root
  const double base = max_inner_root(a, b, c, d, 1.0, samples);
  if (base < 0.0) {
    critical = true;  // cannot happen for det > 0 on the torus; be safe
    return 0.0;
  }
  if (base == 0.0) return DecayRates::kInf;
  if (base >= 1.0 - crit_tol) {
    critical = true;
    return 0.0;
  }

  double best = base;
  double best_sigma = 0.0;
  for (int pass = 0; pass < 3; ++pass) {
    const double span = pass == 0 ? 1.5 : 0.1 / pass;
    const int steps = 60;
    for (int i = -steps; i <= steps; ++i) {
      const double sigma = best_sigma + span * i / steps;
      const double m = max_inner_root(a, b, c, d, std::exp(sigma), samples);
      if (m > 0.0 && m < best) {
        best = m;
        best_sigma = sigma;
      }
    }
  }
  return -std::log(best);
}

}  // namespace

DecayRates predict_decay_rates(const Activities& z, int samples) {
  z.validate();
  if (samples < 8) throw std::invalid_argument("predict_decay_rates: samples must be >= 8");
  const DetCoefficients co = DetCoefficients::from(z);

  DecayRates rates{DecayRates::kInf, DecayRates::kInf, false};
  // t2 follows from exchanging the roles of the two angles, i.e. b <-> c.
  rates.t1 = optimized_rate(co.a, co.b, co.c, co.d, samples, rates.critical);
  rates.t2 = optimized_rate(co.a, co.c, co.b, co.d, samples, rates.critical);
  return rates;
}

}  // namespace dartdiff
