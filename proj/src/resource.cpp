#include "mddse/resource.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mddse/errors.hpp"

namespace mddse {

namespace {

// Guard against float dust when a mix sits exactly on a capacity line.
constexpr double kSlack = 1.0 + 1e-9;

const UnitFootprint& unit_or_throw(const Catalog& catalog, const char* name) {
  const auto it = catalog.units.find(name);
  if (it == catalog.units.end())
    throw not_found_error(std::string("catalog has no unit '") + name + "'");
  return it->second;
}

int count_by(double available, double per_unit) {
  if (per_unit <= 0) return std::numeric_limits<int>::max();
  if (available <= 0) return 0;
  return static_cast<int>(available * kSlack / per_unit);
}

UnitAllocation finish(const Catalog& catalog, const BoardSpec& board, UnitAllocation alloc) {
  const FpgaDevice& device = device_for_board(catalog, board);
  const DeratedUnit pp =
      derate_unit(unit_or_throw(catalog, "pp_pipeline"), device.family, catalog.derating);
  const DeratedUnit interp =
      derate_unit(unit_or_throw(catalog, "grid_interpolator"), device.family, catalog.derating);
  const DeratedUnit fft =
      derate_unit(unit_or_throw(catalog, "fft_macro"), device.family, catalog.derating);
  alloc.logic_used_klut = alloc.pp_pipelines_per_card * pp.logic_klut +
                          alloc.interpolators_per_card * interp.logic_klut +
                          alloc.fft_units_per_card * fft.logic_klut;
  alloc.dsp_used = alloc.pp_pipelines_per_card * pp.dsp_slices +
                   alloc.interpolators_per_card * interp.dsp_slices +
                   alloc.fft_units_per_card * fft.dsp_slices;
  alloc.mem_used_mbit = alloc.pp_pipelines_per_card * pp.mem_mbit +
                        alloc.interpolators_per_card * interp.mem_mbit +
                        alloc.fft_units_per_card * fft.mem_mbit;
  alloc.utilization_logic = alloc.logic_used_klut / device.logic_capacity_klut;
  alloc.utilization_dsp = alloc.dsp_used / device.dsp_capacity;
  alloc.utilization_mem = alloc.mem_used_mbit / device.mem_capacity_mbit;
  return alloc;
}

}  // namespace

double derate_logic(double amount_klogic, FpgaFamily src, FpgaFamily dst,
                    const DeratingTable& table) {
  if (amount_klogic < 0) throw std::invalid_argument("derate_logic: negative amount");
  if (src == dst) return amount_klogic;
  const auto it = table.find({src, dst});
  if (it == table.end())
    throw not_found_error(std::string("no derating factor for ") + to_string(src) + " -> " +
                          to_string(dst));
  return amount_klogic * it->second;
}

int dsp_map(int multipliers, int multipliers_per_slice) {
  if (multipliers < 0) throw std::invalid_argument("dsp_map: negative multiplier count");
  if (multipliers_per_slice < 1)
    throw std::invalid_argument("dsp_map: multipliers_per_slice must be >= 1");
  return (multipliers + multipliers_per_slice - 1) / multipliers_per_slice;
}

DeratedUnit derate_unit(const UnitFootprint& unit, FpgaFamily dst, const DeratingTable& table) {
  DeratedUnit d;
  d.kind = unit.kind;
  d.logic_klut = derate_logic(unit.logic_klogic, unit.source_family, dst, table);
  d.dsp_slices = dsp_map(unit.dsp_multipliers, unit.multipliers_per_slice);
  d.mem_mbit = unit.mem_mbit;
  return d;
}

UnitAllocation pack_units(const Catalog& catalog, const BoardSpec& board, MixPolicy policy) {
  const FpgaDevice& device = device_for_board(catalog, board);
  const double logic_budget = board.usable_logic_fraction * device.logic_capacity_klut;

  UnitAllocation alloc;
  if (policy == MixPolicy::PpPipelinesOnly) {
    const DeratedUnit pp =
        derate_unit(unit_or_throw(catalog, "pp_pipeline"), device.family, catalog.derating);
    const double mem_free = device.mem_capacity_mbit - catalog.memory.atom_rom_mbit;
    alloc.pp_pipelines_per_card = std::min({count_by(logic_budget, pp.logic_klut),
                                            count_by(device.dsp_capacity, pp.dsp_slices),
                                            count_by(mem_free, pp.mem_mbit)});
    if (alloc.pp_pipelines_per_card < 1)
      throw infeasible_error("not even one pair pipeline fits on " + board.name);
    return finish(catalog, board, alloc);
  }

  const DeratedUnit interp =
      derate_unit(unit_or_throw(catalog, "grid_interpolator"), device.family, catalog.derating);
  const DeratedUnit fft =
      derate_unit(unit_or_throw(catalog, "fft_macro"), device.family, catalog.derating);
  alloc.fft_units_per_card = board.pme_fft_units;
  const double logic_free = logic_budget - alloc.fft_units_per_card * fft.logic_klut;
  const double dsp_free = device.dsp_capacity - alloc.fft_units_per_card * fft.dsp_slices;
  const double mem_free = device.mem_capacity_mbit - alloc.fft_units_per_card * fft.mem_mbit;
  if (logic_free < 0 || dsp_free < 0 || mem_free < 0)
    throw infeasible_error("the FFT block alone exceeds " + board.name + "'s capacity");
  alloc.interpolators_per_card = std::min({count_by(logic_free, interp.logic_klut),
                                           count_by(dsp_free, interp.dsp_slices),
                                           count_by(mem_free, interp.mem_mbit)});
  if (alloc.interpolators_per_card < 1)
    throw infeasible_error("not even one grid interpolator fits on " + board.name +
                           " next to the FFT block");
  return finish(catalog, board, alloc);
}

UnitAllocation allocation_for_counts(const Catalog& catalog, const BoardSpec& board,
                                     int pp_pipelines, int interpolators, int fft_units) {
  if (pp_pipelines < 0 || interpolators < 0 || fft_units < 0)
    throw std::invalid_argument("allocation_for_counts: negative unit count");
  UnitAllocation alloc;
  alloc.pp_pipelines_per_card = pp_pipelines;
  alloc.interpolators_per_card = interpolators;
  alloc.fft_units_per_card = fft_units;
  return finish(catalog, board, alloc);
}

std::string budget_violation(const Catalog& catalog, const BoardSpec& board,
                             const UnitAllocation& alloc) {
  const FpgaDevice& device = device_for_board(catalog, board);
  const double logic_budget = board.usable_logic_fraction * device.logic_capacity_klut;
  if (alloc.logic_used_klut > logic_budget * kSlack) {
    return "logic " + std::to_string(alloc.logic_used_klut) + " kLUT over the " +
           std::to_string(logic_budget) + " kLUT budget";
  }
  if (alloc.dsp_used > device.dsp_capacity * kSlack) return "DSP slices over device capacity";
  if (alloc.mem_used_mbit > device.mem_capacity_mbit * kSlack)
    return "on-chip memory over device capacity";
  return "";
}

PpMemoryBreakdown pp_card_memory(const Catalog& catalog, const MdSystem& system, double cutoff_a,
                                 int n_pp_cards, int pp_pipelines) {
  if (n_pp_cards < 1) throw std::invalid_argument("pp_card_memory: n_pp_cards must be >= 1");
  if (pp_pipelines < 0) throw std::invalid_argument("pp_card_memory: pp_pipelines must be >= 0");
  const UnitFootprint& pp = unit_or_throw(catalog, "pp_pipeline");
  const double resident = static_cast<double>(system.n_particles) / n_pp_cards;
  // Imported shell particles need position entries and force accumulators
  // just like residents; both stores scale by the same shell factor.
  const double with_shell =
      resident * (1.0 + shell_fraction(cutoff_a, system.box_edge_a, n_pp_cards));
  const double bits_per_particle =
      catalog.memory.position_bits + catalog.memory.force_bits * catalog.memory.force_replication;

  PpMemoryBreakdown m;
  m.particle_mbit = with_shell * bits_per_particle / 1e6;
  m.pipe_mbit = pp_pipelines * pp.mem_mbit;
  m.rom_mbit = catalog.memory.atom_rom_mbit;
  m.total_mbit = m.particle_mbit + m.pipe_mbit + m.rom_mbit;
  return m;
}

double pme_card_memory_mbit(const Catalog& catalog, int grid, int fft_units) {
  if (grid < 2) throw std::invalid_argument("pme_card_memory_mbit: grid must be >= 2");
  if (fft_units < 0) throw std::invalid_argument("pme_card_memory_mbit: fft_units must be >= 0");
  const UnitFootprint& fft = unit_or_throw(catalog, "fft_macro");
  const double points = static_cast<double>(grid) * grid * grid;
  return points * catalog.memory.pme_bits_per_grid_point / 1e6 + fft_units * fft.mem_mbit;
}

}  // namespace mddse
