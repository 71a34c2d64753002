#pragma once

#include <string>

#include "mddse/catalog.hpp"
#include "mddse/workload.hpp"

namespace mddse {

// A unit footprint translated to a target device: logic after cross-family
// derating, multipliers folded into DSP slices.
struct DeratedUnit {
  UnitKind kind;
  double logic_klut = 0.0;
  int dsp_slices = 0;
  double mem_mbit = 0.0;
};

// Per-card unit mix plus the resources it occupies on the device. A PP card
// carries only pipelines; a PME card carries interpolators plus a fixed FFT
// block.
struct UnitAllocation {
  int pp_pipelines_per_card = 0;
  int interpolators_per_card = 0;
  int fft_units_per_card = 0;
  double logic_used_klut = 0.0;
  double dsp_used = 0.0;
  double mem_used_mbit = 0.0;
  double utilization_logic = 0.0;  // fractions of full device capacity
  double utilization_dsp = 0.0;
  double utilization_mem = 0.0;
};

enum class MixPolicy {
  PpPipelinesOnly,
  PmeFixedFft,
};

struct PpMemoryBreakdown {
  double particle_mbit = 0.0;
  double pipe_mbit = 0.0;
  double rom_mbit = 0.0;
  double total_mbit = 0.0;
};

// Logic scaled when moving a design between families. Same family passes the
// amount through; missing table entries are an error rather than a silent
// guess.
double derate_logic(double amount_klogic, FpgaFamily src, FpgaFamily dst,
                    const DeratingTable& table);

// Multipliers folded into whole DSP slices/blocks of the target fabric.
int dsp_map(int multipliers, int multipliers_per_slice);

DeratedUnit derate_unit(const UnitFootprint& unit, FpgaFamily dst, const DeratingTable& table);

// Greedy fill of one card under the board's logic budget, DSP count and
// on-chip memory. PME cards reserve the FFT block first, then fill with
// interpolators. Throws infeasible_error when not even one unit fits.
UnitAllocation pack_units(const Catalog& catalog, const BoardSpec& board, MixPolicy policy);

// Resource usage for an explicit mix (e.g. from a config override). Does not
// enforce the budget; check fits_budget for that.
UnitAllocation allocation_for_counts(const Catalog& catalog, const BoardSpec& board,
                                     int pp_pipelines, int interpolators, int fft_units);

// Empty string when the allocation respects the board's logic budget and the
// device's DSP and memory capacities; otherwise names the violated resource.
std::string budget_violation(const Catalog& catalog, const BoardSpec& board,
                             const UnitAllocation& alloc);

// On-chip memory demand of one PP card: resident particles plus halo shell,
// per-pipeline tables, shared ROM.
PpMemoryBreakdown pp_card_memory(const Catalog& catalog, const MdSystem& system, double cutoff_a,
                                 int n_pp_cards, int pp_pipelines);

// On-chip memory demand of one PME card: full grid plus FFT working sets.
double pme_card_memory_mbit(const Catalog& catalog, int grid, int fft_units);

}  // namespace mddse
