#include "dartdiff/cli.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "dartdiff/numdiff.hpp"
#include "dartdiff/oracle.hpp"

namespace dartdiff {

namespace {

Activities activities_of(const RunConfig& cfg) { return {cfg.z1, cfg.z2, cfg.z3}; }

ScattererWeights weights_of(const RunConfig& cfg) {
  ScattererWeights h;
  h.h_rho = cfg.h_rho;
  h.h_sigma = cfg.h_sigma;
  return h;
}

std::filesystem::path out_path(const RunConfig& cfg, const std::string& name) {
  return std::filesystem::path(cfg.outdir) / name;
}

nlohmann::json phase_json(const PhaseReport& rep) {
  return {{"classification", phase_name(rep.classification)},
          {"onsager_gap", rep.onsager_gap},
          {"kasteleyn_gap", rep.kasteleyn_gap},
          {"min_det", rep.min_det}};
}

}  // namespace

int cmd_phase(const RunConfig& cfg, std::ostream& out) {
  cfg.validate();
  const PhaseReport rep = classify_phase(activities_of(cfg), cfg.tol);
  const nlohmann::json j = with_metadata(cfg, phase_json(rep));
  atomic_write(out_path(cfg, "phase.json"), j.dump(2) + "\n");
  out << j.dump(2) << '\n';
  return 0;
}

int cmd_free_energy(const RunConfig& cfg, std::ostream& out) {
  cfg.validate();
  const double f = free_energy(activities_of(cfg), cfg.quad_order);
  const nlohmann::json j = with_metadata(cfg, {{"free_energy_per_cell", f}});
  atomic_write(out_path(cfg, "free_energy.json"), j.dump(2) + "\n");
  out << j.dump(2) << '\n';
  return 0;
}

int cmd_densities(const RunConfig& cfg, std::ostream& out) {
  cfg.validate();
  const TileDensities d = tile_densities(activities_of(cfg), cfg.quad_order);
  nlohmann::json payload;
  payload["rho"] = d.rho;
  payload["sigma"] = d.sigma;
  payload["sum"] = d.sum();
  const nlohmann::json j = with_metadata(cfg, payload);
  atomic_write(out_path(cfg, "densities.json"), j.dump(2) + "\n");
  out << j.dump(2) << '\n';
  return 0;
}

int cmd_coupling(const RunConfig& cfg, int x, int y, int p1, int p2, std::ostream& out) {
  cfg.validate();
  const CouplingGrid grid(activities_of(cfg), cfg.quad_order);
  std::ostringstream csv;
  csv << metadata_header(cfg);
  csv << "z1,z2,z3,x,y,p1,p2,value\n";
  auto emit = [&](const CouplingValue& v) {
    csv << format_double(cfg.z1) << ',' << format_double(cfg.z2) << ',' << format_double(cfg.z3)
        << ',' << v.x << ',' << v.y << ',' << v.p1 << ',' << v.p2 << ','
        << format_double(v.value) << '\n';
  };
  if (p1 >= 1 && p2 >= 1) {
    emit(grid.coupling(x, y, p1, p2));
  } else {
    for (int a = 1; a <= 6; ++a) {
      for (int b = 1; b <= 6; ++b) emit(grid.coupling(x, y, a, b));
    }
  }
  atomic_write(out_path(cfg, "coupling.csv"), csv.str());
  out << csv.str();
  return 0;
}

int cmd_pair(const RunConfig& cfg, int bond_a, int bond_b, int off_x, int off_y,
             std::ostream& out) {
  cfg.validate();
  if (bond_a < 0 || bond_a > 8 || bond_b < 0 || bond_b > 8) {
    throw std::invalid_argument("pair: bond indices must be in 0..8");
  }
  const CouplingGrid grid(activities_of(cfg), cfg.quad_order);
  const PairProbability pp =
      pair_probability(grid, cell_bond(bond_a), cell_bond(bond_b), {off_x, off_y});
  std::ostringstream csv;
  csv << metadata_header(cfg);
  csv << "x,y,p1,p2,P_joint,P_product\n";
  csv << off_x << ',' << off_y << ',' << bond_a << ',' << bond_b << ','
      << format_double(pp.value) << ',' << format_double(pp.product) << '\n';
  atomic_write(out_path(cfg, "pair.csv"), csv.str());
  out << csv.str();
  return 0;
}

int cmd_bragg(const RunConfig& cfg, std::ostream& out) {
  cfg.validate();
  const TileDensities d = tile_densities(activities_of(cfg), cfg.quad_order);
  const auto peaks = bragg_peaks(cfg.kmax, cfg.lmax, d, weights_of(cfg));
  std::ostringstream csv;
  csv << metadata_header(cfg);
  csv << "k,l,qx,qy,intensity\n";
  for (const auto& p : peaks) {
    csv << p.k << ',' << p.l << ',' << format_double(p.position.x) << ','
        << format_double(p.position.y) << ',' << format_double(p.intensity) << '\n';
  }
  atomic_write(out_path(cfg, "bragg.csv"), csv.str());
  out << "wrote " << peaks.size() << " peaks to " << out_path(cfg, "bragg.csv").string() << '\n';
  return 0;
}

int cmd_diffuse(const RunConfig& cfg, std::ostream& out) {
  cfg.validate();
  const DiffuseCalculator calc(activities_of(cfg), weights_of(cfg), cfg.cutoff, cfg.quad_order);
  const ReciprocalBasis rec;
  std::ostringstream csv;
  csv << metadata_header(cfg);
  csv << "qx,qy,intensity,error_bound\n";
  for (int i = 0; i < cfg.qsamples; ++i) {
    const double u = -cfg.qmax + 2.0 * cfg.qmax * i / (cfg.qsamples - 1);
    for (int j = 0; j < cfg.qsamples; ++j) {
      const double v = -cfg.qmax + 2.0 * cfg.qmax * j / (cfg.qsamples - 1);
      const Vec2 q = u * rec.e1_star + v * rec.e2_star;
      const DiffuseSample s = calc.at(q);
      csv << format_double(q.x) << ',' << format_double(q.y) << ','
          << format_double(s.intensity) << ',' << format_double(s.error_bound) << '\n';
    }
  }
  atomic_write(out_path(cfg, "diffuse.csv"), csv.str());
  out << "wrote " << cfg.qsamples * cfg.qsamples << " samples to "
      << out_path(cfg, "diffuse.csv").string() << '\n';
  return 0;
}

int cmd_sample(const RunConfig& cfg, std::ostream& out) {
  cfg.validate();
  SamplerConfig scfg;
  scfg.steps = cfg.sweeps;
  scfg.burn_in = cfg.burn_in;
  scfg.seed = cfg.seed;
  WormSampler sampler(activities_of(cfg), cfg.m, cfg.n, scfg);
  sampler.run(cfg.burn_in + cfg.sweeps);
  const Tiling t = to_tiling(sampler.configuration(), sampler.graph());

  std::ostringstream tiling_txt;
  tiling_txt << metadata_header(cfg);
  t.dump(tiling_txt);
  atomic_write(out_path(cfg, "tiling.txt"), tiling_txt.str());

  std::ostringstream config_txt;
  config_txt << metadata_header(cfg);
  sampler.configuration().dump(config_txt, sampler.graph());
  atomic_write(out_path(cfg, "configuration.txt"), config_txt.str());

  const TileDensities d = empirical_densities(t);
  nlohmann::json payload;
  payload["rho"] = d.rho;
  payload["sigma"] = d.sigma;
  payload["tiles"] = t.tiles.size();
  out << with_metadata(cfg, payload).dump(2) << '\n';
  return 0;
}

int cmd_diffract(const RunConfig& cfg, std::ostream& out) {
  cfg.validate();
  const Activities z = activities_of(cfg);
  const ScattererWeights h = weights_of(cfg);

  std::unique_ptr<ImageAccumulator> acc;
  for (int s = 0; s < cfg.seeds; ++s) {
    SamplerConfig scfg;
    scfg.steps = cfg.sweeps;
    scfg.burn_in = cfg.burn_in;
    scfg.seed = cfg.seed + static_cast<uint64_t>(s);
    const DimerConfiguration config = sample(z, cfg.m, cfg.n, scfg);
    const TorusGraph graph(cfg.m, cfg.n);
    const ScattererSet set = scatter_points(to_tiling(config, graph), h);
    const DiffractionImage img = fft_diffraction(set, cfg.m, cfg.n, cfg.supercell);
    if (!acc) {
      acc = std::make_unique<ImageAccumulator>(img);
    } else {
      acc->add(img);
    }
  }
  const DiffractionImage mean = acc->mean();

  // Exact references for the comparison report.
  const TileDensities d = tile_densities(z, cfg.quad_order);
  const auto peaks = bragg_peaks(cfg.kmax, cfg.lmax, d, h);
  const BraggComparison cmp = compare_bragg(mean, peaks, 0.05);

  std::ostringstream csv;
  csv << metadata_header(cfg);
  csv << "qx,qy,intensity\n";
  for (int k1 = 0; k1 < mean.n1; ++k1) {
    for (int k2 = 0; k2 < mean.n2; ++k2) {
      const Vec2 q = mean.q_of(k1, k2);
      csv << format_double(q.x) << ',' << format_double(q.y) << ','
          << format_double(mean.at(k1, k2)) << '\n';
    }
  }
  atomic_write(out_path(cfg, "diffraction.csv"), csv.str());
  write_pgm_log(out_path(cfg, "diffraction.pgm"), mean.intensity, mean.n2, mean.n1);

  nlohmann::json report;
  report["seeds"] = cfg.seeds;
  report["max_bragg_rel_error"] = cmp.max_rel_error;
  report["background_mean"] = cmp.background_mean;
  report["background_max"] = cmp.background_max;
  report["pass"] = cmp.pass;
  const nlohmann::json j = with_metadata(cfg, report);
  atomic_write(out_path(cfg, "diffract_report.json"), j.dump(2) + "\n");
  out << j.dump(2) << '\n';
  return cmp.pass ? 0 : 3;
}

int cmd_oracle(const RunConfig& cfg, std::ostream& out) {
  cfg.validate();
  const Activities z = activities_of(cfg);
  const TorusGraph graph(cfg.m, cfg.n);
  if (graph.num_vertices() > 60) {
    throw std::invalid_argument("oracle: enumeration bounded to 60 vertices (m*n <= 10 cells)");
  }
  const EnumerationResult res = enumerate_matchings(MatchingGraph::from_torus(graph), z, false);
  const double pf = finite_torus_Z(cfg.m, cfg.n, z);

  nlohmann::json payload;
  payload["m"] = cfg.m;
  payload["n"] = cfg.n;
  payload["z"] = {cfg.z1, cfg.z2, cfg.z3};
  payload["Z"] = res.Z;
  payload["count"] = res.count;
  payload["Z_pfaffian"] = pf;
  payload["pfaffian_rel_error"] = std::fabs(pf - res.Z) / res.Z;
  payload["marginals"] = res.bond_marginals;
  const nlohmann::json j = with_metadata(cfg, payload);
  atomic_write(out_path(cfg, "oracle.json"), j.dump(2) + "\n");
  out << j.dump(2) << '\n';
  return 0;
}

}  // namespace dartdiff
