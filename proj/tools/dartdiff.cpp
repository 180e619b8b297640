// Command-line front end for the dart-rhombus tiling diffraction toolkit.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "dartdiff/cli.hpp"

namespace {

struct CommonOpts {
  std::vector<double> z{1.0, 1.0, 1.0};
  std::vector<int> torus{8, 8};
  std::vector<double> h;
  std::vector<int> offset{0, 0};
  std::string config_file;
  dartdiff::RunConfig cfg;

  int x = 0, y = 0, p1 = 0, p2 = 0;
  int bond_a = 3, bond_b = 3;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->set_help_flag("--help", "print help");  // frees -h for the strengths flag
  cmd->add_option("--config", o.config_file, "JSON config file (flags override it)");
  cmd->add_option("--z", o.z, "activities z1,z2,z3")->delimiter(',')->expected(3);
  cmd->add_option("--torus", o.torus, "torus size m,n")->delimiter(',')->expected(2);
  cmd->add_option("--sweeps", o.cfg.sweeps, "measurement sweeps");
  cmd->add_option("--burn-in", o.cfg.burn_in, "burn-in sweeps");
  cmd->add_option("--seed", o.cfg.seed, "RNG seed");
  cmd->add_option("--seeds", o.cfg.seeds, "chains averaged by diffract");
  cmd->add_option("--order", o.cfg.quad_order, "quadrature order");
  cmd->add_option("--cutoff", o.cfg.cutoff, "correlation cell-offset cutoff");
  cmd->add_option("--kmax", o.cfg.kmax, "max |k| Bragg index");
  cmd->add_option("--lmax", o.cfg.lmax, "max |l| Bragg index");
  cmd->add_option("--h", o.h, "scatterer strengths h_rho1..3,h_sigma1..3")->delimiter(',');
  cmd->add_option("--supercell", o.cfg.supercell, "zero-padding factor for diffract");
  cmd->add_option("--qmax", o.cfg.qmax, "diffuse grid half-extent (reciprocal cells)");
  cmd->add_option("--qsamples", o.cfg.qsamples, "diffuse grid samples per axis");
  cmd->add_option("--tol", o.cfg.tol, "criticality tolerance");
  cmd->add_option("--outdir", o.cfg.outdir, "output directory (default: $DARTDIFF_OUTDIR or .)");
}

dartdiff::RunConfig finalize(const CommonOpts& o, const CLI::App* cmd) {
  dartdiff::RunConfig cfg = o.cfg;
  if (!o.config_file.empty()) {
    std::ifstream is(o.config_file);
    if (!is) throw std::invalid_argument("cannot read config file " + o.config_file);
    nlohmann::json j;
    is >> j;
    cfg = dartdiff::RunConfig::from_json(j);
    // flags given on the command line win over the file
    auto seen = [cmd](const std::string& name) { return cmd->count(name) > 0; };
    if (seen("--sweeps")) cfg.sweeps = o.cfg.sweeps;
    if (seen("--burn-in")) cfg.burn_in = o.cfg.burn_in;
    if (seen("--seed")) cfg.seed = o.cfg.seed;
    if (seen("--seeds")) cfg.seeds = o.cfg.seeds;
    if (seen("--order")) cfg.quad_order = o.cfg.quad_order;
    if (seen("--cutoff")) cfg.cutoff = o.cfg.cutoff;
    if (seen("--kmax")) cfg.kmax = o.cfg.kmax;
    if (seen("--lmax")) cfg.lmax = o.cfg.lmax;
    if (seen("--supercell")) cfg.supercell = o.cfg.supercell;
    if (seen("--qmax")) cfg.qmax = o.cfg.qmax;
    if (seen("--qsamples")) cfg.qsamples = o.cfg.qsamples;
    if (seen("--tol")) cfg.tol = o.cfg.tol;
    if (seen("--outdir")) cfg.outdir = o.cfg.outdir;
  }
  if (cmd->count("--z") > 0 || o.config_file.empty()) {
    cfg.z1 = o.z.at(0);
    cfg.z2 = o.z.at(1);
    cfg.z3 = o.z.at(2);
  }
  if (cmd->count("--torus") > 0 || o.config_file.empty()) {
    cfg.m = o.torus.at(0);
    cfg.n = o.torus.at(1);
  }
  if (!o.h.empty()) {
    if (o.h.size() != 6 && o.h.size() != 12) {
      throw std::invalid_argument("--h expects 6 real or 12 re,im values");
    }
    for (int i = 0; i < 3; ++i) {
      if (o.h.size() == 6) {
        cfg.h_rho[i] = o.h[i];
        cfg.h_sigma[i] = o.h[3 + i];
      } else {
        cfg.h_rho[i] = {o.h[2 * i], o.h[2 * i + 1]};
        cfg.h_sigma[i] = {o.h[6 + 2 * i], o.h[6 + 2 * i + 1]};
      }
    }
  }
  if (cmd->count("--outdir") == 0 && o.config_file.empty()) {
    if (const char* env = std::getenv("DARTDIFF_OUTDIR")) cfg.outdir = env;
  }
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dartdiff: exact and sampled diffraction of the dart-rhombus random tiling"};
  app.set_help_flag("--help", "print help");
  app.require_subcommand(1);

  CommonOpts opts;

  auto* c_phase = app.add_subcommand("phase", "classify the activities against the transition lines");
  auto* c_free = app.add_subcommand("free-energy", "free energy per elementary cell");
  auto* c_dens = app.add_subcommand("densities", "tile densities from quadrature");
  auto* c_coup = app.add_subcommand("coupling", "inverse-Kasteleyn coupling values");
  auto* c_pair = app.add_subcommand("pair", "joint bond occupation probability");
  auto* c_bragg = app.add_subcommand("bragg", "exact Bragg peak table");
  auto* c_diff = app.add_subcommand("diffuse", "diffuse intensity on a q grid");
  auto* c_samp = app.add_subcommand("sample", "draw a random tiling (worm Monte Carlo)");
  auto* c_fft = app.add_subcommand("diffract", "seed-averaged FFT diffraction of sampled tilings");
  auto* c_orac = app.add_subcommand("oracle", "brute-force enumeration on a small torus");
  for (CLI::App* c : {c_phase, c_free, c_dens, c_coup, c_pair, c_bragg, c_diff, c_samp, c_fft, c_orac}) {
    add_common(c, opts);
  }
  c_coup->add_option("--x", opts.x, "cell offset x");
  c_coup->add_option("--y", opts.y, "cell offset y");
  c_coup->add_option("--p1", opts.p1, "site 1..6 (0 = all pairs)");
  c_coup->add_option("--p2", opts.p2, "site 1..6 (0 = all pairs)");
  c_pair->add_option("--bond-a", opts.bond_a, "cell bond index 0..8");
  c_pair->add_option("--bond-b", opts.bond_b, "cell bond index 0..8");
  c_pair->add_option("--offset", opts.offset, "cell offset x,y")->delimiter(',')->expected(2);

  CLI11_PARSE(app, argc, argv);

  CLI::App* active = app.get_subcommands().front();
  try {
    const dartdiff::RunConfig cfg = finalize(opts, active);
    if (active == c_phase) return dartdiff::cmd_phase(cfg, std::cout);
    if (active == c_free) return dartdiff::cmd_free_energy(cfg, std::cout);
    if (active == c_dens) return dartdiff::cmd_densities(cfg, std::cout);
    if (active == c_coup) return dartdiff::cmd_coupling(cfg, opts.x, opts.y, opts.p1, opts.p2, std::cout);
    if (active == c_pair) {
      return dartdiff::cmd_pair(cfg, opts.bond_a, opts.bond_b, opts.offset.at(0), opts.offset.at(1), std::cout);
    }
    if (active == c_bragg) return dartdiff::cmd_bragg(cfg, std::cout);
    if (active == c_diff) return dartdiff::cmd_diffuse(cfg, std::cout);
    if (active == c_samp) return dartdiff::cmd_sample(cfg, std::cout);
    if (active == c_fft) return dartdiff::cmd_diffract(cfg, std::cout);
    if (active == c_orac) return dartdiff::cmd_oracle(cfg, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "dartdiff " << active->get_name() << ": " << e.what() << '\n';
    return 1;
  }
  return 2;
}
