#ifndef DARTDIFF_IO_HPP
#define DARTDIFF_IO_HPP

#include <complex>
#include <filesystem>
#include <string>

#include <json.hpp>

namespace dartdiff {

inline constexpr const char* kArtifactName = "dartdiff";
inline constexpr const char* kArtifactVersion = "0.1.0";

// Full run configuration for the CLI; every output embeds it, so runs are
// reproducible from their artifacts alone.
struct RunConfig {
  double z1 = 1.0, z2 = 1.0, z3 = 1.0;
  int m = 8, n = 8;
  long sweeps = 100;
  long burn_in = 100;
  uint64_t seed = 1;
  int chains = 1;
  int seeds = 1;  // independent chains averaged by `diffract`
  int quad_order = 64;
  int cutoff = 6;
  int kmax = 4, lmax = 4;
  std::array<std::complex<double>, 3> h_rho{1.0, 1.0, 1.0};
  std::array<std::complex<double>, 3> h_sigma{1.0, 1.0, 1.0};
  int supercell = 1;
  double qmax = 3.0;   // diffuse grid half-extent in units of e1*/e2*
  int qsamples = 121;  // diffuse grid samples per axis
  double tol = 1e-6;   // criticality tolerance; wide enough for ~8-digit flag input
  std::string outdir = ".";

  nlohmann::json to_json() const;           // all fields
  nlohmann::json semantic_json() const;     // fields that affect results
  static RunConfig from_json(const nlohmann::json& j);
  uint64_t hash() const;                    // FNV-1a over semantic_json dump

  // Throws std::invalid_argument naming the violated precondition.
  void validate() const;
};

// Writes via temp file + rename so readers never see partial output.
void atomic_write(const std::filesystem::path& path, const std::string& content);

// Comment header ("# ...") carrying artifact version, config and hash.
std::string metadata_header(const RunConfig& cfg);

// JSON wrapper with artifact/config metadata around a payload.
nlohmann::json with_metadata(const RunConfig& cfg, nlohmann::json payload);

// 8-bit binary PGM with log-scaled intensities: gray = 255 * log(I/floor) /
// log(ceil/floor), clamped; floor defaults to ceil * 1e-6.
void write_pgm_log(const std::filesystem::path& path, const std::vector<double>& intensity,
                   int width, int height, double ceiling = 0.0, double floor = 0.0);

std::string format_double(double v);  // 17 significant digits

}  // namespace dartdiff

#endif
