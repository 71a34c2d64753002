#include "mddse/workload.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mddse {

double pair_count(const MdSystem& system, double cutoff_a) {
  if (system.n_particles < 0 || system.box_edge_a <= 0.0)
    throw std::invalid_argument("pair_count: system has non-positive size");
  if (cutoff_a < 0.0)
    throw std::invalid_argument("pair_count: negative cutoff");
  if (cutoff_a >= system.box_edge_a / 2.0)
    throw std::invalid_argument("pair_count: cutoff " + std::to_string(cutoff_a) +
                                " A violates the minimum-image bound box/2");
  const double n = static_cast<double>(system.n_particles);
  const double volume = std::pow(system.box_edge_a, 3.0);
  const double density = n / volume;
  return n * density * (2.0 / 3.0) * std::numbers::pi * std::pow(cutoff_a, 3.0);
}

PmeWork pme_work(int grid) {
  if (grid < 2) throw std::invalid_argument("pme_work: grid must be >= 2");
  PmeWork w;
  w.fft_length = grid;
  w.rows_per_pass = static_cast<long>(grid) * grid;
  w.grid_points = w.rows_per_pass * grid;
  return w;
}

double shell_fraction(double cutoff_a, double box_edge_a, int n_pp_cards) {
  if (n_pp_cards < 1) throw std::invalid_argument("shell_fraction: n_pp_cards must be >= 1");
  if (box_edge_a <= 0.0) throw std::invalid_argument("shell_fraction: box edge must be positive");
  const double slab = box_edge_a / n_pp_cards;
  return std::min(1.0, std::max(0.0, cutoff_a) / slab);
}

TransferVolumes transfer_volumes(const MdSystem& system, double cutoff_a, int n_pp_cards) {
  if (n_pp_cards < 1) throw std::invalid_argument("transfer_volumes: n_pp_cards must be >= 1");
  const double n = static_cast<double>(system.n_particles);
  TransferVolumes v;
  v.h2d_bytes_total = kH2dBytesPerParticle * n;
  v.d2h_bytes_total = kD2hBytesPerParticle * n;
  // Pessimistic bound: the shell slice scaled to the full particle set, not
  // just the neighbour slab. It rides the ring concurrently with compute, so
  // only extreme cutoffs would ever surface it.
  v.halo_bytes_per_card =
      kH2dBytesPerParticle * n * shell_fraction(cutoff_a, system.box_edge_a, n_pp_cards);
  return v;
}

TunedParams coupled_params(const MdSystem& system, double scale) {
  if (!(scale >= 0.5 && scale <= 2.0))
    throw std::invalid_argument("coupled_params: scale must lie in [0.5, 2.0]");
  if (system.base_grid < 2)
    throw std::invalid_argument("coupled_params: system base grid must be >= 2");
  TunedParams t;
  t.cutoff_a = system.base_cutoff_a * scale;
  const long even = 2 * std::lround(system.base_grid / scale / 2.0);
  t.grid = static_cast<int>(std::max(2L, even));
  return t;
}

}  // namespace mddse
