#include "mddse/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mddse/errors.hpp"

namespace mddse {

namespace {

void validate_node(const NodeConfig& node) {
  if (node.n_pp_cards < 1) throw infeasible_error("node needs at least one PP card");
  if (node.n_pme_cards != 1)
    throw infeasible_error("the grid is not split across cards; exactly one PME card");
  if (node.pp_pipelines_per_card < 1) throw infeasible_error("PP cards need >= 1 pipeline");
  if (node.interpolators_per_card < 1) throw infeasible_error("PME card needs >= 1 interpolator");
  if (node.fft_units_per_card < 1) throw infeasible_error("PME card needs >= 1 FFT unit");
  if (node.fmax_mhz <= 0) throw infeasible_error("fmax must be > 0");
  if (node.pp_utilization <= 0 || node.pp_utilization > 1)
    throw infeasible_error("pp_utilization must lie in (0, 1]");
  if (node.sw_overhead_s < 0) throw infeasible_error("sw overhead must be >= 0");
}

double cycle_s(const NodeConfig& node) { return 1.0 / (node.fmax_mhz * 1e6); }

long ceil_div(long a, long b) { return (a + b - 1) / b; }

}  // namespace

double link_time_s(double bytes, const LinkSpec& link) {
  if (bytes < 0) throw std::invalid_argument("link_time_s: bytes must be >= 0");
  if (link.raw_gbit <= 0 || link.efficiency <= 0 || link.efficiency > 1)
    throw std::invalid_argument("link_time_s: bad link parameters");
  return link.latency_s + bytes * 8.0 / (link.raw_gbit * 1e9 * link.efficiency);
}

PpTimeBreakdown pp_card_time(const MdSystem& system, const TunedParams& tuned,
                             const NodeConfig& node) {
  validate_node(node);
  const TransferVolumes volumes = transfer_volumes(system, tuned.cutoff_a, node.n_pp_cards);
  const double pairs = pair_count(system, tuned.cutoff_a);
  const double pairs_per_card = pairs / node.n_pp_cards;
  const double pair_rate_hz =
      node.pp_pipelines_per_card * node.pp_utilization * node.fmax_mhz * 1e6;

  PpTimeBreakdown t;
  t.h2d_s = link_time_s(volumes.h2d_bytes_total / node.n_pp_cards, node.pcie);
  t.compute_s = pairs_per_card / pair_rate_hz;
  t.halo_s = link_time_s(volumes.halo_bytes_per_card, node.ring);
  // The shell exchange streams while pairs are being evaluated; only the ring
  // latency of the last message survives past the compute.
  t.card_s = t.h2d_s + std::max(t.compute_s, t.halo_s) + node.ring.latency_s;
  return t;
}

PmeTimeBreakdown pme_card_time(const MdSystem& system, const TunedParams& tuned,
                               const NodeConfig& node) {
  validate_node(node);
  const PmeWork work = pme_work(tuned.grid);
  const double tick = cycle_s(node);
  const double n = static_cast<double>(system.n_particles);

  PmeTimeBreakdown t;
  // The PME card receives its own domain share from the host like any other
  // card, while the full position set streams in from the PP cards' rings.
  t.h2d_s = link_time_s(kH2dBytesPerParticle * n / node.n_pp_cards, node.pcie);
  t.positions_ring_s = link_time_s(kH2dBytesPerParticle * n, node.ring);
  t.spread_s =
      static_cast<double>(ceil_div(system.n_particles, node.interpolators_per_card)) * tick;
  t.inbound_s = std::max(t.h2d_s + t.spread_s, t.positions_ring_s);

  const long unit_batches = ceil_div(work.rows_per_pass, node.fft_units_per_card);
  const double fft_pass_s =
      static_cast<double>(work.passes_per_direction * unit_batches * work.fft_length) * tick;
  t.fwd_fft_s = fft_pass_s;
  t.inv_fft_s = fft_pass_s;
  t.solve_s = static_cast<double>(ceil_div(work.grid_points, node.fft_units_per_card)) * tick;
  t.gather_s =
      static_cast<double>(ceil_div(system.n_particles, node.interpolators_per_card)) * tick;
  t.forces_ring_s = link_time_s(kD2hBytesPerParticle * n, node.ring);
  t.card_s = t.inbound_s + t.fwd_fft_s + t.solve_s + t.inv_fft_s + t.gather_s + t.forces_ring_s;
  return t;
}

double d2h_time_s(const MdSystem& system, const NodeConfig& node) {
  validate_node(node);
  const double n = static_cast<double>(system.n_particles);
  return link_time_s(kD2hBytesPerParticle * n / node.n_pp_cards, node.pcie);
}

double ns_per_day_for(double timestep_fs, double step_seconds) {
  if (step_seconds <= 0) throw std::invalid_argument("step time must be > 0");
  return timestep_fs * 1e-6 * 86400.0 / step_seconds;
}

StepEstimate step_estimate(double pp_with_h2d_s, double pme_with_h2d_s, double d2h_s,
                           double sw_overhead_s, double timestep_fs) {
  if (pp_with_h2d_s < 0 || pme_with_h2d_s < 0 || d2h_s < 0 || sw_overhead_s < 0)
    throw std::invalid_argument("step_estimate: negative phase time");
  StepEstimate e;
  e.pp_with_h2d_s = pp_with_h2d_s;
  e.pme_with_h2d_s = pme_with_h2d_s;
  e.d2h_s = d2h_s;
  e.critical_with_d2h_s = std::max(pp_with_h2d_s, pme_with_h2d_s) + d2h_s;
  e.sw_overhead_s = sw_overhead_s;
  e.total_s = e.critical_with_d2h_s + e.sw_overhead_s;
  e.ns_per_day = ns_per_day_for(timestep_fs, e.total_s);
  return e;
}

StepEstimate estimate_step(const MdSystem& system, const TunedParams& tuned,
                           const NodeConfig& node) {
  const PpTimeBreakdown pp = pp_card_time(system, tuned, node);
  const PmeTimeBreakdown pme = pme_card_time(system, tuned, node);
  StepEstimate e = step_estimate(pp.card_s, pme.card_s, d2h_time_s(system, node),
                                 node.sw_overhead_s, system.timestep_fs);
  e.pp = pp;
  e.pme = pme;
  return e;
}

}  // namespace mddse
