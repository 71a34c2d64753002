#pragma once

#include "mddse/catalog.hpp"
#include "mddse/workload.hpp"

namespace mddse {

struct LinkSpec {
  double raw_gbit = 0.0;
  double efficiency = 1.0;
  double latency_s = 0.0;
};

// Transfer time for one message: latency plus payload over the effective rate.
double link_time_s(double bytes, const LinkSpec& link);

// One node: n_pp cards evaluate short-range pairs on their particle domains,
// one PME card owns the full charge grid. Every card hangs off its own PCIe
// lane and a card-to-card ring.
struct NodeConfig {
  int n_pp_cards = 7;
  int n_pme_cards = 1;  // the grid is not split; exactly one is supported
  int pp_pipelines_per_card = 0;
  int interpolators_per_card = 0;
  int fft_units_per_card = 0;
  double fmax_mhz = 0.0;
  LinkSpec pcie;
  LinkSpec ring;
  double sw_overhead_s = 0.0;
  double pp_utilization = 0.8;
};

struct PpTimeBreakdown {
  double h2d_s = 0.0;      // host positions for this card's domain
  double compute_s = 0.0;  // pair interactions, all pipelines busy
  double halo_s = 0.0;     // shell exchange on the ring, overlapped with compute
  double card_s = 0.0;     // h2d + max(compute, halo) + ring latency
};

struct PmeTimeBreakdown {
  double h2d_s = 0.0;            // host positions for the card's own domain share
  double positions_ring_s = 0.0; // full position set arriving from PP cards
  double spread_s = 0.0;         // charge spreading onto the grid
  double inbound_s = 0.0;        // max(h2d + spread, positions_ring)
  double fwd_fft_s = 0.0;
  double solve_s = 0.0;          // reciprocal-space scaling on the FFT units
  double inv_fft_s = 0.0;
  double gather_s = 0.0;         // force interpolation off the grid
  double forces_ring_s = 0.0;    // forces back to the PP cards
  double card_s = 0.0;
};

// The per-step bottom line. Three identities hold exactly:
//   critical_with_d2h = max(pp_with_h2d, pme_with_h2d) + d2h
//   total = sw_overhead + critical_with_d2h
//   ns_per_day = timestep[ns] * 86400 / total[s]
struct StepEstimate {
  PpTimeBreakdown pp;
  PmeTimeBreakdown pme;
  double pp_with_h2d_s = 0.0;   // = pp.card_s
  double pme_with_h2d_s = 0.0;  // = pme.card_s
  double d2h_s = 0.0;           // forces back to the host, per-card share
  double critical_with_d2h_s = 0.0;
  double sw_overhead_s = 0.0;
  double total_s = 0.0;
  double ns_per_day = 0.0;
};

PpTimeBreakdown pp_card_time(const MdSystem& system, const TunedParams& tuned,
                             const NodeConfig& node);
PmeTimeBreakdown pme_card_time(const MdSystem& system, const TunedParams& tuned,
                               const NodeConfig& node);
double d2h_time_s(const MdSystem& system, const NodeConfig& node);

// Pure combiner enforcing the three identities on given card/link times.
StepEstimate step_estimate(double pp_with_h2d_s, double pme_with_h2d_s, double d2h_s,
                           double sw_overhead_s, double timestep_fs);

// Full model: card breakdowns from the workload and node, then the combiner.
StepEstimate estimate_step(const MdSystem& system, const TunedParams& tuned,
                           const NodeConfig& node);

double ns_per_day_for(double timestep_fs, double step_seconds);

}  // namespace mddse
