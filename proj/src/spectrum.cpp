#include "dartdiff/spectrum.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dartdiff {

namespace {

// cos(pi s / 3) for integer s, exact.
double cos_pi_thirds(int s) {
  static const double table[6] = {1.0, 0.5, -0.5, -1.0, -0.5, 0.5};
  return table[((s % 6) + 6) % 6];
}

int parity_sign(int k) { return (k % 2 == 0) ? 1 : -1; }

}  // namespace

double bragg_intensity(int k, int l, const TileDensities& d, const ScattererWeights& h) {
  // Opposite darts carry equal densities; use the pair averages so small
  // quadrature asymmetries cancel. Pairs: (s1,s5), (s2,s6), (s3,s4).
  const double s1 = 0.5 * (d.sigma[0] + d.sigma[4]);
  const double s2 = 0.5 * (d.sigma[1] + d.sigma[5]);
  const double s3 = 0.5 * (d.sigma[2] + d.sigma[3]);

  const double ck = parity_sign(k);
  const double cl = parity_sign(l);
  const double ckl = parity_sign(k + l);
  const double cos_term = 2.0 * cos_pi_thirds(k + l);

  const std::complex<double> amp =
      h.h_rho[0] * d.rho[0] + ck * h.h_rho[1] * d.rho[1] + cl * h.h_rho[2] * d.rho[2] +
      cos_term * (ckl * h.h_sigma[0] * s1 + cl * h.h_sigma[1] * s2 + ck * h.h_sigma[2] * s3);
  return (4.0 / 3.0) * std::norm(amp);
}

std::vector<BraggPeak> bragg_peaks(int kmax, int lmax, const TileDensities& d,
                                   const ScattererWeights& h) {
  if (kmax < 0 || lmax < 0) throw std::invalid_argument("bragg_peaks: kmax, lmax must be >= 0");
  const ReciprocalBasis rec;
  std::vector<BraggPeak> peaks;
  peaks.reserve(static_cast<size_t>(2 * kmax + 1) * (2 * lmax + 1));
  for (int k = -kmax; k <= kmax; ++k) {
    for (int l = -lmax; l <= lmax; ++l) {
      BraggPeak p;
      p.k = k;
      p.l = l;
      p.position = static_cast<double>(k) * rec.e1_star + static_cast<double>(l) * rec.e2_star;
      p.intensity = bragg_intensity(k, l, d, h);
      peaks.push_back(p);
    }
  }
  return peaks;
}

DiffuseCalculator::DiffuseCalculator(const Activities& z, const ScattererWeights& h, int cutoff,
                                     int quad_order)
    : cutoff_(cutoff), tail_bound_(0.0) {
  if (cutoff < 1) throw std::invalid_argument("diffuse_intensity: cutoff must be >= 1");
  PhaseReport rep = classify_phase(z);
  if (rep.classification != PhaseClass::Generic) {
    throw std::domain_error("diffuse_intensity: critical activities rejected (spectrum may diverge)");
  }

  const CouplingGrid grid(z, quad_order);

  std::array<double, 9> single{};
  for (const BondSpec& b : cell_bonds()) single[b.index] = bond_probability(grid, b);

  double last_shell = 0.0;
  int used = 0;
  for (int shell = 0; shell <= cutoff; ++shell) {
    double shell_sum = 0.0;
    for (int x = -shell; x <= shell; ++x) {
      for (int y = -shell; y <= shell; ++y) {
        if (std::max(std::abs(x), std::abs(y)) != shell) continue;
        for (int from = 0; from < kNumTileKinds; ++from) {
          const TileKind tf = static_cast<TileKind>(from);
          const BondSpec& bf = bond_of_tile(tf);
          for (int to = 0; to < kNumTileKinds; ++to) {
            const TileKind tt = static_cast<TileKind>(to);
            const BondSpec& bt = bond_of_tile(tt);
            const PairProbability pp = pair_probability(grid, bf, bt, {x, y});
            const double fluct = pp.value - single[bf.index] * single[bt.index];
            const std::complex<double> w = std::conj(h.of(tf)) * h.of(tt) * fluct;
            if (std::abs(w) < 1e-18) continue;
            const GridVec sep =
                tile_info(tt).position - tile_info(tf).position + cell_grid_vec(x, y);
            terms_.push_back({sep.cart(), w});
            shell_sum += std::abs(w);
          }
        }
      }
    }
    used = shell;
    last_shell = shell_sum;
    if (shell > 0 && shell_sum < 1e-15) break;  // finite support exhausted
  }
  cutoff_ = used;

  // Tail estimate from the predicted decay: remaining shells fall off at
  // least geometrically with ratio exp(-min(t1, t2)).
  const DecayRates rates = predict_decay_rates(z);
  const double t = std::min(rates.t1, rates.t2);
  if (std::isfinite(t) && last_shell > 0.0 && used > 0) {
    const double r = std::exp(-t);
    tail_bound_ = last_shell * (r / (1.0 - r)) * (1.0 + 1.0 / (used * (1.0 - r)));
  }
}

DiffuseSample DiffuseCalculator::at(Vec2 q) const {
  std::complex<double> acc = 0.0;
  for (const Term& t : terms_) {
    acc += t.weight * std::polar(1.0, -2.0 * std::numbers::pi * q.dot(t.separation));
  }
  acc /= cell_area();
  if (std::fabs(acc.imag()) > 1e-8 * (1.0 + std::fabs(acc.real()))) {
    throw std::runtime_error("diffuse_intensity: imaginary residue above tolerance");
  }
  return {q, acc.real(), cutoff_, tail_bound_ / cell_area()};
}

DiffuseSample diffuse_intensity(const Activities& z, const ScattererWeights& h, Vec2 q, int cutoff,
                                int quad_order) {
  return DiffuseCalculator(z, h, cutoff, quad_order).at(q);
}

}  // namespace dartdiff
