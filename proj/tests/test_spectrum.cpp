#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dartdiff/spectrum.hpp"

using namespace dartdiff;

namespace {

// Valid density vectors: sigma triple with sum <= 1/3, opposite darts equal,
// common rhombus surplus fixed by normalization.
TileDensities random_valid_densities(std::mt19937& gen) {
  std::uniform_real_distribution<double> ud(0.0, 1.0);
  for (;;) {
    const double s1 = ud(gen) / 3.0, s2 = ud(gen) / 3.0, s3 = ud(gen) / 3.0;
    if (s1 + s2 + s3 > 1.0 / 3.0) continue;
    const double c = (1.0 - 3.0 * (s1 + s2 + s3)) / 3.0;
    TileDensities d;
    d.sigma = {s1, s2, s3, s3, s1, s2};
    d.rho = {s1 + c, s2 + c, s3 + c};
    return d;
  }
}

// Independent route: (4/3) |sum_tau h_tau rho_tau e^{-2 pi i q p_tau}|^2
// over all nine tiles at their actual positions.
double bragg_by_positions(int k, int l, const TileDensities& d, const ScattererWeights& h) {
  const ReciprocalBasis rec;
  const Vec2 q = static_cast<double>(k) * rec.e1_star + static_cast<double>(l) * rec.e2_star;
  std::complex<double> amp = 0.0;
  for (int t = 0; t < kNumTileKinds; ++t) {
    const TileKind kind = static_cast<TileKind>(t);
    const Vec2 p = scatterer_position(kind, {0, 0});
    amp += h.of(kind) * d.of(kind) *
           std::polar(1.0, -2.0 * std::numbers::pi * q.dot(p));
  }
  return (4.0 / 3.0) * std::norm(amp);
}

}  // namespace

TEST_CASE("central Bragg peak is 4/3 for unit strengths at any valid densities") {
  std::mt19937 gen(41);
  const ScattererWeights h;
  for (int trial = 0; trial < 200; ++trial) {
    const TileDensities d = random_valid_densities(gen);
    CHECK(bragg_intensity(0, 0, d, h) == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
  }
}

TEST_CASE("Bragg intensity at (1,1) for maximum-entropy densities is 1/108") {
  TileDensities d;
  d.rho = {1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0};
  d.sigma.fill(1.0 / 12.0);
  const ScattererWeights h;
  CHECK(bragg_intensity(1, 1, d, h) == doctest::Approx(1.0 / 108.0).epsilon(1e-12));
}

TEST_CASE("zero strengths give a dark spectrum") {
  std::mt19937 gen(43);
  const TileDensities d = random_valid_densities(gen);
  ScattererWeights h;
  h.h_rho = {0.0, 0.0, 0.0};
  h.h_sigma = {0.0, 0.0, 0.0};
  for (int k = -3; k <= 3; ++k) {
    for (int l = -3; l <= 3; ++l) {
      CHECK(bragg_intensity(k, l, d, h) == 0.0);
    }
  }
}

TEST_CASE("printed Bragg formula equals the nine-position sum") {
  std::mt19937 gen(47);
  std::uniform_real_distribution<double> hr(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const TileDensities d = random_valid_densities(gen);
    ScattererWeights h;
    for (int i = 0; i < 3; ++i) {
      h.h_rho[i] = {hr(gen), hr(gen)};
      h.h_sigma[i] = {hr(gen), hr(gen)};
    }
    std::uniform_int_distribution<int> kd(-7, 7);
    const int k = kd(gen), l = kd(gen);
    CHECK(bragg_intensity(k, l, d, h) ==
          doctest::Approx(bragg_by_positions(k, l, d, h)).epsilon(1e-10));
  }
}

TEST_CASE("peak list positions and periodicity") {
  TileDensities d;
  d.rho = {0.18, 0.17, 0.16};
  d.sigma = {0.09, 0.08, 0.075, 0.075, 0.09, 0.08};
  const ScattererWeights h;
  const auto peaks = bragg_peaks(8, 8, d, h);
  CHECK(peaks.size() == 17u * 17u);

  for (const auto& p : peaks) {
    CHECK(p.intensity >= 0.0);
    if (p.k == 0 && p.l == 0) {
      CHECK(p.position.norm() == doctest::Approx(0.0));
    }
    if (p.k == 1 && p.l == 0) {
      CHECK(p.position.x == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
      CHECK(p.position.y == doctest::Approx(-1.0 / 3.0).epsilon(1e-14));
    }
  }

  // coefficient periodicity: (k, l) and (k+6, l+6) carry equal intensity
  for (int k = -2; k <= 2; ++k) {
    for (int l = -2; l <= 2; ++l) {
      CHECK(bragg_intensity(k, l, d, h) ==
            doctest::Approx(bragg_intensity(k + 6, l + 6, d, h)).epsilon(1e-12));
    }
  }

  CHECK_THROWS_AS(bragg_peaks(-1, 0, d, h), std::invalid_argument);
}

TEST_CASE("diffuse intensity at the symmetric point is cutoff-independent") {
  const Activities z{1.0, 1.0, 1.0};
  const ScattererWeights h;
  const DiffuseCalculator c1(z, h, 1, 32);
  const DiffuseCalculator c3(z, h, 3, 32);
  std::mt19937 gen(53);
  std::uniform_real_distribution<double> qd(-1.5, 1.5);
  for (int trial = 0; trial < 20; ++trial) {
    const Vec2 q{qd(gen), qd(gen)};
    CHECK(c1.at(q).intensity == doctest::Approx(c3.at(q).intensity).epsilon(1e-10));
  }
  // finite support: the error bound collapses to zero
  CHECK(c3.at({0.1, 0.2}).error_bound == doctest::Approx(0.0));
}

TEST_CASE("diffuse intensity is even in q for real strengths") {
  const DiffuseCalculator calc({1.2, 0.9, 1.0}, ScattererWeights{}, 4, 48);
  std::mt19937 gen(59);
  std::uniform_real_distribution<double> qd(-2.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    const Vec2 q{qd(gen), qd(gen)};
    CHECK(calc.at(q).intensity == doctest::Approx(calc.at({-q.x, -q.y}).intensity).epsilon(1e-10));
  }
}

TEST_CASE("diffuse q=0 value at the symmetric point (independent summation oracle)") {
  const Activities z{1.0, 1.0, 1.0};
  const ScattererWeights h;
  const CouplingGrid grid(z, 32);

  // brute-force lattice sum over all fluctuation terms within the finite
  // support (couplings vanish beyond cell offset 1)
  double oracle = 0.0;
  for (int x = -3; x <= 3; ++x) {
    for (int y = -3; y <= 3; ++y) {
      for (int a = 0; a < kNumTileKinds; ++a) {
        for (int b = 0; b < kNumTileKinds; ++b) {
          const BondSpec& ba = bond_of_tile(static_cast<TileKind>(a));
          const BondSpec& bb = bond_of_tile(static_cast<TileKind>(b));
          const PairProbability pp = pair_probability(grid, ba, bb, {x, y});
          oracle += pp.value - bond_probability(grid, ba) * bond_probability(grid, bb);
        }
      }
    }
  }
  oracle /= cell_area();

  const DiffuseSample s = diffuse_intensity(z, h, {0.0, 0.0}, 2, 32);
  CHECK(std::fabs(s.intensity - oracle) < 1e-9);
  // the total dimer count per cell is fixed, so covariances sum to zero
  CHECK(std::fabs(s.intensity) < 1e-9);
  // frozen regression value at a generic wave vector
  const DiffuseSample s2 = diffuse_intensity(z, h, {0.37, -0.21}, 2, 32);
  CHECK(s2.intensity == doctest::Approx(0.2146630418296023).epsilon(1e-9));
}

TEST_CASE("diffuse positivity and cutoff stability away from the symmetric point") {
  const Activities z{1.2, 1.0, 1.0};
  const ScattererWeights h;
  const DiffuseCalculator c6(z, h, 6, 48);
  const DiffuseCalculator c12(z, h, 12, 48);
  std::mt19937 gen(61);
  std::uniform_real_distribution<double> qd(-2.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    const Vec2 q{qd(gen), qd(gen)};
    const DiffuseSample a = c6.at(q);
    const DiffuseSample b = c12.at(q);
    CHECK(a.intensity >= -a.error_bound - 1e-12);
    CHECK(std::fabs(a.intensity - b.intensity) <= a.error_bound + 1e-12);
  }
}

TEST_CASE("diffuse rejects critical activities") {
  CHECK_THROWS_AS(DiffuseCalculator({std::sqrt(2.0), 1.0, 1.0}, ScattererWeights{}, 2, 32),
                  std::domain_error);
}

TEST_CASE("diffuse continuity proxy: finite differences stay bounded under grid refinement") {
  const DiffuseCalculator calc({1.25, 0.9, 1.0}, ScattererWeights{}, 6, 48);
  // sample a q line at two resolutions; the difference quotient must not
  // spike as the grid is refined (the transform is a uniformly convergent
  // trigonometric sum, hence Lipschitz)
  auto max_quotient = [&calc](int samples) {
    double max_dq = 0.0;
    double prev = calc.at({-1.5, 0.37}).intensity;
    for (int i = 1; i <= samples; ++i) {
      const double x = -1.5 + 3.0 * i / samples;
      const double cur = calc.at({x, 0.37}).intensity;
      max_dq = std::max(max_dq, std::fabs(cur - prev) / (3.0 / samples));
      prev = cur;
    }
    return max_dq;
  };
  const double coarse = max_quotient(200);
  const double fine = max_quotient(400);
  CHECK(fine < 1.5 * coarse + 1e-9);
  CHECK(std::isfinite(fine));
}
