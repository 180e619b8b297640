#ifndef DARTDIFF_CLI_HPP
#define DARTDIFF_CLI_HPP

#include <iosfwd>

#include "dartdiff/io.hpp"

namespace dartdiff {

// Subcommand bodies; each validates the config, runs the computation,
// writes its output files under cfg.outdir and prints a summary to `out`.
// They throw on invalid configs or failed computations; main() turns that
// into a message naming the failing stage and a nonzero exit code.
int cmd_phase(const RunConfig& cfg, std::ostream& out);
int cmd_free_energy(const RunConfig& cfg, std::ostream& out);
int cmd_densities(const RunConfig& cfg, std::ostream& out);
int cmd_coupling(const RunConfig& cfg, int x, int y, int p1, int p2, std::ostream& out);
int cmd_pair(const RunConfig& cfg, int bond_a, int bond_b, int off_x, int off_y,
             std::ostream& out);
int cmd_bragg(const RunConfig& cfg, std::ostream& out);
int cmd_diffuse(const RunConfig& cfg, std::ostream& out);
int cmd_sample(const RunConfig& cfg, std::ostream& out);
int cmd_diffract(const RunConfig& cfg, std::ostream& out);
int cmd_oracle(const RunConfig& cfg, std::ostream& out);

}  // namespace dartdiff

#endif
