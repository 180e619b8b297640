#include "dartdiff/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace dartdiff {

namespace {

nlohmann::json complex_json(const std::complex<double>& c) {
  return nlohmann::json::array({c.real(), c.imag()});
}

std::complex<double> complex_from(const nlohmann::json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

}  // namespace

nlohmann::json RunConfig::semantic_json() const {
  nlohmann::json j;
  j["z"] = {z1, z2, z3};
  j["torus"] = {m, n};
  j["sweeps"] = sweeps;
  j["burn_in"] = burn_in;
  j["seed"] = seed;
  j["chains"] = chains;
  j["seeds"] = seeds;
  j["quad_order"] = quad_order;
  j["cutoff"] = cutoff;
  j["kmax"] = kmax;
  j["lmax"] = lmax;
  j["h_rho"] = {complex_json(h_rho[0]), complex_json(h_rho[1]), complex_json(h_rho[2])};
  j["h_sigma"] = {complex_json(h_sigma[0]), complex_json(h_sigma[1]), complex_json(h_sigma[2])};
  j["supercell"] = supercell;
  j["qmax"] = qmax;
  j["qsamples"] = qsamples;
  j["tol"] = tol;
  return j;
}

nlohmann::json RunConfig::to_json() const {
  nlohmann::json j = semantic_json();
  j["outdir"] = outdir;
  return j;
}

RunConfig RunConfig::from_json(const nlohmann::json& j) {
  RunConfig c;
  if (j.contains("z")) {
    c.z1 = j["z"].at(0);
    c.z2 = j["z"].at(1);
    c.z3 = j["z"].at(2);
  }
  if (j.contains("torus")) {
    c.m = j["torus"].at(0);
    c.n = j["torus"].at(1);
  }
  c.sweeps = j.value("sweeps", c.sweeps);
  c.burn_in = j.value("burn_in", c.burn_in);
  c.seed = j.value("seed", c.seed);
  c.chains = j.value("chains", c.chains);
  c.seeds = j.value("seeds", c.seeds);
  c.quad_order = j.value("quad_order", c.quad_order);
  c.cutoff = j.value("cutoff", c.cutoff);
  c.kmax = j.value("kmax", c.kmax);
  c.lmax = j.value("lmax", c.lmax);
  if (j.contains("h_rho")) {
    for (int i = 0; i < 3; ++i) c.h_rho[i] = complex_from(j["h_rho"].at(i));
  }
  if (j.contains("h_sigma")) {
    for (int i = 0; i < 3; ++i) c.h_sigma[i] = complex_from(j["h_sigma"].at(i));
  }
  c.supercell = j.value("supercell", c.supercell);
  c.qmax = j.value("qmax", c.qmax);
  c.qsamples = j.value("qsamples", c.qsamples);
  c.tol = j.value("tol", c.tol);
  c.outdir = j.value("outdir", c.outdir);
  return c;
}

uint64_t RunConfig::hash() const {
  const std::string dump = semantic_json().dump();
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : dump) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

void RunConfig::validate() const {
  auto fail = [](const std::string& msg) { throw std::invalid_argument(msg); };
  if (!(z1 > 0.0 && z2 > 0.0 && z3 > 0.0) || !std::isfinite(z1) || !std::isfinite(z2) ||
      !std::isfinite(z3)) {
    fail("config: activities z1, z2, z3 must be positive and finite");
  }
  if (m < 2 || n < 2) fail("config: torus dimensions require m >= 2 and n >= 2");
  if (sweeps < 0 || burn_in < 0) fail("config: sweeps and burn_in must be >= 0");
  if (chains < 1 || seeds < 1) fail("config: chains and seeds must be >= 1");
  if (quad_order < 4) fail("config: quad_order must be >= 4");
  if (cutoff < 1) fail("config: cutoff must be >= 1");
  if (kmax < 0 || lmax < 0) fail("config: kmax and lmax must be >= 0");
  if (supercell < 1) fail("config: supercell must be >= 1");
  if (qsamples < 2) fail("config: qsamples must be >= 2");
  if (!(tol > 0.0)) fail("config: tol must be positive");
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    os << content;
  }
  fs::rename(tmp, path);
}

std::string metadata_header(const RunConfig& cfg) {
  char hash_buf[32];
  std::snprintf(hash_buf, sizeof hash_buf, "%016llx",
                static_cast<unsigned long long>(cfg.hash()));
  std::string out;
  out += std::string("# ") + kArtifactName + " " + kArtifactVersion + "\n";
  out += "# config " + cfg.semantic_json().dump() + "\n";
  out += std::string("# config_hash ") + hash_buf + "\n";
  return out;
}

nlohmann::json with_metadata(const RunConfig& cfg, nlohmann::json payload) {
  char hash_buf[32];
  std::snprintf(hash_buf, sizeof hash_buf, "%016llx",
                static_cast<unsigned long long>(cfg.hash()));
  nlohmann::json j;
  j["artifact"] = {{"name", kArtifactName}, {"version", kArtifactVersion}, {"config_hash", hash_buf}};
  j["config"] = cfg.to_json();
  j["result"] = std::move(payload);
  return j;
}

void write_pgm_log(const std::filesystem::path& path, const std::vector<double>& intensity,
                   int width, int height, double ceiling, double floor) {
  if (static_cast<size_t>(width) * height != intensity.size()) {
    throw std::invalid_argument("write_pgm_log: size mismatch");
  }
  double ceil_val = ceiling;
  if (ceil_val <= 0.0) {
    ceil_val = 0.0;
    for (double v : intensity) ceil_val = std::max(ceil_val, v);
    if (ceil_val <= 0.0) ceil_val = 1.0;
  }
  double floor_val = floor > 0.0 ? floor : ceil_val * 1e-6;
  const double span = std::log(ceil_val / floor_val);

  std::string content = "P5\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
  content.reserve(content.size() + intensity.size());
  for (double v : intensity) {
    double t = v <= floor_val ? 0.0 : std::log(v / floor_val) / span;
    t = std::clamp(t, 0.0, 1.0);
    content.push_back(static_cast<char>(static_cast<unsigned char>(std::lround(255.0 * t))));
  }
  atomic_write(path, content);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace dartdiff
