#include "dartdiff/sampler.hpp"

#include <ostream>
#include <sstream>
#include <stdexcept>

namespace dartdiff {

bool DimerConfiguration::valid(const TorusGraph& g) const {
  const int nv = g.num_vertices();
  if (static_cast<int>(partner.size()) != nv) return false;
  for (int v = 0; v < nv; ++v) {
    const int p = partner[v];
    if (p < 0 || p >= nv || p == v) return false;
    if (partner[p] != v) return false;
    const auto& b = g.bond(matched_bond[v]);
    if (matched_bond[p] != matched_bond[v]) return false;
    if (!((b.va == v && b.vb == p) || (b.va == p && b.vb == v))) return false;
  }
  return true;
}

std::pair<int, int> DimerConfiguration::winding_parity(const TorusGraph& g) const {
  int wx = 0;
  int wy = 0;
  for (int v = 0; v < static_cast<int>(partner.size()); ++v) {
    if (partner[v] < v) continue;  // each dimer once
    const auto& b = g.bond(matched_bond[v]);
    if (b.wraps_x) wx ^= 1;
    if (b.wraps_y) wy ^= 1;
  }
  return {wx, wy};
}

void DimerConfiguration::dump(std::ostream& os, const TorusGraph& g) const {
  for (int id = 0; id < g.num_bonds(); ++id) {
    const auto& b = g.bond(id);
    const int occ = (matched_bond[b.va] == id) ? 1 : 0;
    const BondSpec& spec = cell_bond(b.spec_index);
    os << b.a.cell.x << ' ' << b.a.cell.y << ' ' << b.a.site << ' ' << b.b.site << ' '
       << spec.delta.x << ' ' << spec.delta.y << ' ' << weight_name(b.weight_label) << ' '
       << b.sign << ' ' << tile_name(b.tile) << ' ' << occ << '\n';
  }
}

Tiling to_tiling(const DimerConfiguration& config, const TorusGraph& g) {
  Tiling t;
  t.m = config.m;
  t.n = config.n;
  t.tiles.reserve(config.num_dimers());
  for (int v = 0; v < static_cast<int>(config.partner.size()); ++v) {
    if (config.partner[v] < v) continue;
    const auto& b = g.bond(config.matched_bond[v]);
    t.tiles.emplace_back(b.tile, b.a.cell);
  }
  return t;
}

void Tiling::dump(std::ostream& os) const {
  for (const auto& [kind, cell] : tiles) {
    os << cell.x << ' ' << cell.y << ' ' << tile_name(kind) << '\n';
  }
}

TileDensities empirical_densities(const Tiling& t) {
  TileDensities d;
  if (t.tiles.empty()) return d;
  const double norm = 1.0 / static_cast<double>(t.tiles.size());
  for (const auto& [kind, cell] : t.tiles) {
    const int i = static_cast<int>(kind);
    if (i < 3) {
      d.rho[i] += norm;
    } else {
      d.sigma[i - 3] += norm;
    }
  }
  return d;
}

WormSampler::WormSampler(const Activities& z, int m, int n, const SamplerConfig& cfg)
    : graph_(m, n), z_(z), cfg_(cfg), rng_(cfg.seed), m_(m), n_(n) {
  z.validate();
  if (cfg.steps < 0 || cfg.burn_in < 0) {
    throw std::invalid_argument("sampler: steps and burn_in must be >= 0");
  }
  const int nv = graph_.num_vertices();
  max_steps_ = cfg.max_worm_steps > 0 ? cfg.max_worm_steps : 100000 + 1000L * nv;

  state_.resize(nv);
  for (int v = 0; v < nv; ++v) {
    VertexState& st = state_[v];
    double acc = 0.0;
    const auto& inc = graph_.incident_bonds(v);
    for (int k = 0; k < 3; ++k) {
      const auto& b = graph_.bond(inc[k]);
      st.nbr[k] = (b.va == v) ? b.vb : b.va;
      st.bond[k] = inc[k];
      acc += weight_value(b.weight_label, z_);
      st.cum[k] = acc;
    }
    st.partner = -1;
    st.matched_bond = -1;
  }

  // Start from the all-rhombus crystal: unit bonds (3,4), (1,5), (2,6)
  // occupied in every cell.
  for (int id = 0; id < graph_.num_bonds(); ++id) {
    const auto& b = graph_.bond(id);
    if (b.weight_label != WeightLabel::Unit) continue;
    state_[b.va].partner = b.vb;
    state_[b.vb].partner = b.va;
    state_[b.va].matched_bond = id;
    state_[b.vb].matched_bond = id;
  }
}

void WormSampler::excursion() {
  config_dirty_ = true;
  const int tail = static_cast<int>(rng_.next_below(state_.size()));
  int head = state_[tail].partner;

  long steps = 0;
  while (true) {
    if (++steps > max_steps_) {
      std::ostringstream msg;
      msg << "worm failed to close within " << max_steps_ << " steps on the " << m_ << "x" << n_
          << " torus (z1=" << z_.z1 << " z2=" << z_.z2 << " z3=" << z_.z3 << ")";
      throw std::runtime_error(msg.str());
    }
    VertexState& hs = state_[head];
    const double u = rng_.next_double() * hs.cum[2];
    const int pick = u < hs.cum[0] ? 0 : (u < hs.cum[1] ? 1 : 2);
    const int k = hs.nbr[pick];
    const int bid = hs.bond[pick];
    if (k == tail) {
      hs.partner = tail;
      hs.matched_bond = bid;
      state_[tail].partner = head;
      state_[tail].matched_bond = bid;
      break;
    }
    VertexState& ks = state_[k];
    const int next = ks.partner;
    hs.partner = k;
    hs.matched_bond = bid;
    ks.partner = head;
    ks.matched_bond = bid;
    head = next;
  }
  total_steps_ += steps;
  ++closures_;
}

void WormSampler::sweep() {
  const long per_sweep = 6L * m_ * n_;
  for (long i = 0; i < per_sweep; ++i) excursion();
}

void WormSampler::run(long sweeps) {
  for (long s = 0; s < sweeps; ++s) sweep();
}

const DimerConfiguration& WormSampler::configuration() const {
  if (config_dirty_) {
    config_.m = m_;
    config_.n = n_;
    config_.partner.resize(state_.size());
    config_.matched_bond.resize(state_.size());
    for (size_t v = 0; v < state_.size(); ++v) {
      config_.partner[v] = state_[v].partner;
      config_.matched_bond[v] = state_[v].matched_bond;
    }
    config_dirty_ = false;
  }
  return config_;
}

std::array<long long, 9> WormSampler::class_counts() const {
  std::array<long long, 9> counts{};
  for (int v = 0; v < static_cast<int>(state_.size()); ++v) {
    if (state_[v].partner < v) continue;
    counts[graph_.bond(state_[v].matched_bond).spec_index] += 1;
  }
  return counts;
}

DimerConfiguration sample(const Activities& z, int m, int n, const SamplerConfig& cfg) {
  WormSampler sampler(z, m, n, cfg);
  sampler.run(cfg.burn_in + cfg.steps);
  return sampler.configuration();
}

}  // namespace dartdiff
