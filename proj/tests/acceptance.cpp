// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// criterion fails. Tolerances are pinned in code next to each check.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <numbers>
#include <random>
#include <vector>

#include "dartdiff/numdiff.hpp"
#include "dartdiff/oracle.hpp"

using namespace dartdiff;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& what, const std::string& detail) {
  std::printf("%s criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", criterion, what.c_str(),
              detail.c_str());
  if (!pass) ++failures;
}

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

Activities random_generic(std::mt19937& gen, double lo = 0.4, double hi = 2.0) {
  std::uniform_real_distribution<double> zd(lo, hi);
  for (;;) {
    const Activities z{zd(gen), zd(gen), zd(gen)};
    if (classify_phase(z, 1e-3, 2).classification == PhaseClass::Generic) return z;
  }
}

// 1. Determinant identity over 1000 random draws.
void criterion_1() {
  std::mt19937 gen(101);
  std::uniform_real_distribution<double> zd(0.2, 3.0), pd(0.0, 2.0 * std::numbers::pi);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Activities z{zd(gen), zd(gen), zd(gen)};
    const double p1 = pd(gen), p2 = pd(gen);
    const cplx direct = det6(lambda_matrix(z, p1, p2));
    const double formula = det_lambda(z, p1, p2);
    worst = std::max(worst, std::abs(direct - formula) / (1.0 + std::fabs(formula)));
  }
  report(1, worst <= 1e-10, "determinant identity on 1000 random (z, phi)",
         fmt("max scaled deviation %.3e <= 1e-10", worst));
}

// 2. Maximum-entropy densities and the density constraints.
void criterion_2() {
  const TileDensities d = tile_densities({1.0, 1.0, 1.0}, 48);
  double dev = 0.0;
  for (double r : d.rho) dev = std::max(dev, std::fabs(r - 1.0 / 6.0));
  for (double s : d.sigma) dev = std::max(dev, std::fabs(s - 1.0 / 12.0));

  std::mt19937 gen(202);
  double cdev = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const TileDensities t = tile_densities(random_generic(gen), 48);
    cdev = std::max(cdev, std::fabs(t.sigma[0] - t.sigma[4]));
    cdev = std::max(cdev, std::fabs(t.sigma[1] - t.sigma[5]));
    cdev = std::max(cdev, std::fabs(t.sigma[2] - t.sigma[3]));
    const double c1 = t.rho[0] - t.sigma[0];
    const double c2 = t.rho[1] - t.sigma[1];
    const double c3 = t.rho[2] - t.sigma[2];
    cdev = std::max({cdev, std::fabs(c1 - c2), std::fabs(c2 - c3)});
    cdev = std::max(cdev, std::fabs(t.sum() - 1.0));
  }
  report(2, dev <= 1e-8 && cdev <= 1e-8, "maximum-entropy densities and constraints",
         fmt("max |rho-1/6|,|sigma-1/12| = %.3e; constraint deviation %.3e (tol 1e-8)", dev, cdev));
}

// 3. Free energy at the symmetric point.
void criterion_3() {
  const double f = free_energy({1.0, 1.0, 1.0}, 16);
  const double dev = std::fabs(f - std::log(2.0));
  report(3, dev <= 1e-12, "free energy ln 2 at the symmetric point",
         fmt("|f - ln 2| = %.3e <= 1e-12", dev));
}

// 4. Hard-core exactness for vertex-sharing bonds.
void criterion_4() {
  std::mt19937 gen(404);
  double worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const CouplingGrid grid(random_generic(gen), 48);
    // all per-cell bond pairs within one cell-offset that share a vertex
    for (int a = 0; a < 9; ++a) {
      for (int b = 0; b < 9; ++b) {
        for (int ox = -1; ox <= 1; ++ox) {
          for (int oy = -1; oy <= 1; ++oy) {
            if (a == b && ox == 0 && oy == 0) continue;
            const BondSpec& ba = cell_bond(a);
            const BondSpec& bb = cell_bond(b);
            // endpoints on the infinite lattice
            const std::array<std::pair<CellCoord, int>, 2> ea = {
                std::pair{CellCoord{0, 0}, ba.site1}, std::pair{ba.delta, ba.site2}};
            const std::array<std::pair<CellCoord, int>, 2> eb = {
                std::pair{CellCoord{ox, oy}, bb.site1},
                std::pair{CellCoord{ox + bb.delta.x, oy + bb.delta.y}, bb.site2}};
            bool share = false;
            for (const auto& [ca, sa] : ea) {
              for (const auto& [cb, sb] : eb) {
                if (ca == cb && sa == sb) share = true;
              }
            }
            if (!share) continue;
            worst = std::max(worst, std::fabs(pair_probability(grid, ba, bb, {ox, oy}).value));
          }
        }
      }
    }
  }
  report(4, worst <= 1e-12, "hard-core joint probability of vertex-sharing bonds",
         fmt("max |P| = %.3e <= 1e-12 over 10 random generic z", worst));
}

// 5. Oracle triangle on the 3x3 torus at z = (1.3, 0.8, 1.0).
void criterion_5() {
  const Activities z{1.3, 0.8, 1.0};
  const TorusGraph g(3, 3);
  const EnumerationResult res = enumerate_matchings(MatchingGraph::from_torus(g), z, false);

  const double zp = finite_torus_Z(3, 3, z);
  const double z_rel = std::fabs(zp - res.Z) / res.Z;
  const bool pass_i = z_rel <= 1e-9;

  std::array<double, 9> exact{};
  for (int e = 0; e < res.n_edges; ++e) exact[g.bond(e).spec_index] += res.bond_marginals[e] / 9.0;

  // (ii) 1e6 sweeps of the worm sampler, batch-means error bars
  SamplerConfig cfg;
  cfg.seed = 20260808;
  WormSampler sampler(z, 3, 3, cfg);
  sampler.run(1000);  // burn-in
  const int batches = 20;
  const long sweeps_per_batch = 50000;
  std::array<std::vector<double>, 9> batch_freq;
  for (int b = 0; b < batches; ++b) {
    std::array<long long, 9> counts{};
    for (long s = 0; s < sweeps_per_batch; ++s) {
      sampler.sweep();
      const auto c = sampler.class_counts();
      for (int i = 0; i < 9; ++i) counts[i] += c[i];
    }
    for (int i = 0; i < 9; ++i) {
      batch_freq[i].push_back(static_cast<double>(counts[i]) / (9.0 * sweeps_per_batch));
    }
  }
  bool pass_ii = true;
  double worst_pull = 0.0;
  for (int i = 0; i < 9; ++i) {
    double mean = 0.0;
    for (double v : batch_freq[i]) mean += v;
    mean /= batches;
    double var = 0.0;
    for (double v : batch_freq[i]) var += (v - mean) * (v - mean);
    var /= (batches - 1);
    const double sigma = std::sqrt(var / batches);
    const double pull = std::fabs(mean - exact[i]) / (sigma > 0 ? sigma : 1e-300);
    worst_pull = std::max(worst_pull, pull);
    if (std::fabs(mean - exact[i]) > 3.0 * sigma) pass_ii = false;
  }

  // (iii) quadrature marginals within 0.01 absolute
  const CouplingGrid grid(z, 64);
  double worst_gap = 0.0;
  for (const BondSpec& spec : cell_bonds()) {
    worst_gap = std::max(worst_gap, std::fabs(bond_probability(grid, spec) - exact[spec.index]));
  }
  const bool pass_iii = worst_gap <= 0.01;

  report(5, pass_i && pass_ii && pass_iii, "oracle triangle on the 3x3 torus",
         fmt("Z rel err %.2e <= 1e-9; MCMC worst pull %.2f sigma <= 3; quadrature gap %.4f <= 0.01",
             z_rel, worst_pull, worst_gap));
}

// 6. Bragg invariants.
void criterion_6() {
  std::mt19937 gen(606);
  std::uniform_real_distribution<double> ud(0.0, 1.0);
  const ScattererWeights h;
  double dev00 = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    double s1, s2, s3;
    do {
      s1 = ud(gen) / 3.0;
      s2 = ud(gen) / 3.0;
      s3 = ud(gen) / 3.0;
    } while (s1 + s2 + s3 > 1.0 / 3.0);
    const double c = (1.0 - 3.0 * (s1 + s2 + s3)) / 3.0;
    TileDensities d;
    d.sigma = {s1, s2, s3, s3, s1, s2};
    d.rho = {s1 + c, s2 + c, s3 + c};
    dev00 = std::max(dev00, std::fabs(bragg_intensity(0, 0, d, h) - 4.0 / 3.0));
  }

  TileDensities dmax;
  dmax.rho = {1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0};
  dmax.sigma.fill(1.0 / 12.0);
  const double dev11 = std::fabs(bragg_intensity(1, 1, dmax, h) - 1.0 / 108.0);

  report(6, dev00 <= 1e-12 && dev11 <= 1e-12, "Bragg invariants",
         fmt("|I(0,0)-4/3| <= %.2e over 500 random densities; |I(1,1)-1/108| = %.2e", dev00, dev11));
}

// 7. Decay-rate consistency.
void criterion_7() {
  auto fitted = [](const Activities& z) {
    const CouplingGrid grid(z, 96);
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int count = 0;
    for (int x = 3; x <= 10; ++x) {
      double best = 0.0;
      for (int p1 = 1; p1 <= 6; ++p1) {
        for (int p2 = 1; p2 <= 6; ++p2) {
          best = std::max(best, std::fabs(grid.coupling(x, 0, p1, p2).value));
        }
      }
      const double lx = std::log(best);
      sx += x;
      sy += lx;
      sxx += static_cast<double>(x) * x;
      sxy += x * lx;
      ++count;
    }
    return -(count * sxy - sx * sy) / (count * sxx - sx * sx);
  };

  bool pass = true;
  std::string detail;
  for (const Activities z : {Activities{1.2, 1.0, 1.0}, Activities{1.0, 1.0, 1.4}}) {
    const DecayRates rates = predict_decay_rates(z);
    const double fit = fitted(z);
    const double rel = std::fabs(fit - rates.t1) / std::max(fit, rates.t1);
    if (rel > 0.10) pass = false;
    detail += fmt("z=(%.1f,%.1f,%.1f): fit %.4f vs t1 %.4f (%.1f%%); ", z.z1, z.z2, z.z3, fit,
                  rates.t1, 100.0 * rel);
  }

  const CouplingGrid sym({1.0, 1.0, 1.0}, 48);
  double worst = 0.0;
  for (int p1 = 1; p1 <= 6; ++p1) {
    for (int p2 = 1; p2 <= 6; ++p2) {
      worst = std::max(worst, std::fabs(sym.coupling(2, 0, p1, p2).value));
      worst = std::max(worst, std::fabs(sym.coupling(0, -2, p1, p2).value));
      worst = std::max(worst, std::fabs(sym.coupling(-2, 2, p1, p2).value));
      worst = std::max(worst, std::fabs(sym.coupling(3, 1, p1, p2).value));
    }
  }
  if (worst > 1e-12) pass = false;
  detail += fmt("symmetric-point couplings beyond support %.2e <= 1e-12", worst);
  report(7, pass, "decay-rate consistency", detail);
}

// 8. Desk-scale reproduction of the numerical diffraction figure.
void criterion_8() {
  const Activities z{1.0, 1.0, 1.0};
  const ScattererWeights h;
  const TileDensities dens = tile_densities(z, 48);

  // --- 64x64, 20 seeds: every Bragg pixel within 5% ---
  const int m = 64;
  const TorusGraph graph(m, m);
  std::unique_ptr<ImageAccumulator> acc;
  double parseval_worst = 0.0;
  for (int seed = 0; seed < 20; ++seed) {
    SamplerConfig cfg;
    cfg.seed = 9000 + seed;
    cfg.burn_in = 1;  // one sweep is ~6 m n macroscopic loop updates
    cfg.steps = 0;
    const DimerConfiguration config = sample(z, m, m, cfg);
    const ScattererSet set = scatter_points(to_tiling(config, graph), h);
    const DiffractionImage img = fft_diffraction(set, m, m);
    double wsum = 0.0;
    for (const auto& p : set.points) wsum += std::norm(p.weight);
    parseval_worst = std::max(
        parseval_worst, std::fabs(img.mean_intensity() - wsum / set.patch_area()) /
                            (wsum / set.patch_area()));
    if (!acc) {
      acc = std::make_unique<ImageAccumulator>(img);
    } else {
      acc->add(img);
    }
  }
  const DiffractionImage mean64 = acc->mean();

  std::vector<BraggPeak> peaks;
  for (int k = 0; k < 12; ++k) {
    for (int l = 0; l < 12; ++l) {
      BraggPeak p;
      p.k = k;
      p.l = l;
      p.intensity = bragg_intensity(k, l, dens, h);
      peaks.push_back(p);
    }
  }
  const BraggComparison cmp = compare_bragg(mean64, peaks, 0.05);
  const bool pass_bragg = cmp.pass && !cmp.degenerate;

  // --- 32x32, 50 seeds: non-Bragg background against the exact diffuse ---
  const int ms = 32;
  const TorusGraph graph32(ms, ms);
  std::unique_ptr<ImageAccumulator> acc32;
  for (int seed = 0; seed < 50; ++seed) {
    SamplerConfig cfg;
    cfg.seed = 7000 + seed;
    cfg.burn_in = 1;
    cfg.steps = 0;
    const DimerConfiguration config = sample(z, ms, ms, cfg);
    const ScattererSet set = scatter_points(to_tiling(config, graph32), h);
    if (!acc32) {
      acc32 = std::make_unique<ImageAccumulator>(fft_diffraction(set, ms, ms));
    } else {
      acc32->add(fft_diffraction(set, ms, ms));
    }
  }
  const DiffractionImage mean32 = acc32->mean();
  const std::vector<double> err32 = acc32->stderr_of_mean();

  const DiffuseCalculator diffuse(z, h, 3, 48);
  long long checked = 0, outliers = 0;
  double chi2 = 0.0;
  double measured_total = 0.0, exact_total = 0.0;
  for (int k1 = 0; k1 < mean32.n1; ++k1) {
    for (int k2 = 0; k2 < mean32.n2; ++k2) {
      if (mean32.is_bragg_pixel(k1, k2)) continue;
      const size_t idx = static_cast<size_t>(k1) * mean32.n2 + k2;
      const double sigma = err32[idx];
      if (sigma <= 0.0) continue;
      const double exact = diffuse.at(mean32.q_of(k1, k2)).intensity;
      const double pull = (mean32.intensity[idx] - exact) / sigma;
      chi2 += pull * pull;
      measured_total += mean32.intensity[idx];
      exact_total += exact;
      if (std::fabs(pull) > 3.0) ++outliers;
      ++checked;
    }
  }
  const double outlier_frac = static_cast<double>(outliers) / checked;
  const double chi2_dof = chi2 / checked;
  const double integrated_dev = (measured_total - exact_total) / exact_total;
  // Null distribution of the studentized per-pixel pulls at 50 seeds with
  // exponential-tailed pixel intensities: E[pull^2] ~ (49/47)(1+6/50) = 1.17
  // plus the skew bias E[pull] ~ -0.14, with ~1.4% of |pulls| beyond 3. The
  // gates sit above that noise floor; a genuine systematic shows first in
  // the unweighted integrated deviation (noise ~0.1%, gate 1%).
  const bool pass_diffuse =
      outlier_frac <= 0.03 && chi2_dof < 1.35 && std::fabs(integrated_dev) <= 0.01;

  const bool pass_parseval = parseval_worst <= 1e-10;
  report(8, pass_bragg && pass_diffuse && pass_parseval, "FFT diffraction vs exact spectrum",
         fmt("Bragg max rel err %.4f <= 0.05; background outliers %.3f%% (chi2/dof %.3f, "
             "integrated dev %+.4f%%); Parseval %.2e <= 1e-10",
             cmp.max_rel_error, 100.0 * outlier_frac, chi2_dof, 100.0 * integrated_dev,
             parseval_worst));
}

// 9. The quoted example densities are reachable by an activity scan.
void criterion_9() {
  const double target[3] = {0.21, 0.19, 0.17};
  auto distance = [&target](const Activities& z, int order) {
    const TileDensities d = tile_densities(z, order);
    double dev = 0.0;
    for (int i = 0; i < 3; ++i) dev = std::max(dev, std::fabs(d.rho[i] - target[i]));
    return dev;
  };

  Activities best{1.0, 1.0, 1.0};
  double best_dev = 1e9;
  for (double z1 = 0.7; z1 <= 1.3001; z1 += 0.1) {
    for (double z2 = 0.7; z2 <= 1.3001; z2 += 0.1) {
      for (double z3 = 0.7; z3 <= 1.3001; z3 += 0.1) {
        const Activities zz{z1, z2, z3};
        if (classify_phase(zz, 1e-6, 2).classification != PhaseClass::Generic) continue;
        const double dev = distance(zz, 24);
        if (dev < best_dev) {
          best_dev = dev;
          best = zz;
        }
      }
    }
  }
  for (double step : {0.02, 0.004}) {
    Activities center = best;
    for (double z1 = center.z1 - 5 * step; z1 <= center.z1 + 5 * step; z1 += step) {
      for (double z2 = center.z2 - 5 * step; z2 <= center.z2 + 5 * step; z2 += step) {
        for (double z3 = center.z3 - 5 * step; z3 <= center.z3 + 5 * step; z3 += step) {
          const Activities zz{z1, z2, z3};
          if (classify_phase(zz, 1e-6, 2).classification != PhaseClass::Generic) continue;
          const double dev = distance(zz, 32);
          if (dev < best_dev) {
            best_dev = dev;
            best = zz;
          }
        }
      }
    }
  }
  report(9, best_dev <= 0.005, "example tiling densities are reachable",
         fmt("activity scan reaches max |rho - (0.21,0.19,0.17)| = %.4f <= 0.005 at "
             "z=(%.3f,%.3f,%.3f)",
             best_dev, best.z1, best.z2, best.z3));
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%s: %d/9 criteria passed in %.1f s\n", failures == 0 ? "SUCCESS" : "FAILURE",
              9 - failures, dt);
  return failures == 0 ? 0 : 1;
}
