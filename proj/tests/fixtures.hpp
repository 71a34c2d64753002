#pragma once

#include "mddse/schedule.hpp"
#include "mddse/workload.hpp"

// Shared inputs used across the test suites. Values are written out literally
// so a regression in the builtin catalog cannot silently re-baseline tests
// that are supposed to pin model behavior.
namespace fixtures {

inline mddse::MdSystem lem2() { return {"2LEM-91k", 91030, 99.0, 2.0, 12.0, 84}; }

inline mddse::NodeConfig node(int pipes, int interpolators, int fft_units, double fmax_mhz,
                              double ring_gbit, double sw_us = 280.0) {
  mddse::NodeConfig n;
  n.n_pp_cards = 7;
  n.n_pme_cards = 1;
  n.pp_pipelines_per_card = pipes;
  n.interpolators_per_card = interpolators;
  n.fft_units_per_card = fft_units;
  n.fmax_mhz = fmax_mhz;
  n.pcie = {63.0, 54.0 / 63.0, 10e-6};
  n.ring = {ring_gbit, 0.85, 0.5e-6};
  n.sw_overhead_s = sw_us * 1e-6;
  n.pp_utilization = 0.8;
  return n;
}

// The five reference single-node setups the suite exercises end to end.
struct ReferenceSetup {
  const char* board;
  int pipes;
  int interpolators;
  int fft_units;
  double fmax_mhz;
  double ring_gbit;
  double sw_us;
};

inline const ReferenceSetup* reference_setups() {
  static const ReferenceSetup setups[5] = {
      {"VCU1525", 66, 10, 64, 400.0, 200.0, 280.0},
      {"XUPP3R-VU9P", 66, 10, 64, 400.0, 400.0, 280.0},
      {"XUPP3R-VU13P", 108, 18, 96, 400.0, 400.0, 280.0},
      {"DE10-PRO", 42, 6, 64, 700.0, 400.0, 280.0},
      {"AWS-F1", 58, 9, 64, 400.0, 400.0, 175.0},
  };
  return setups;
}

}  // namespace fixtures
