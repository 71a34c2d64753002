#include "doctest.h"

#include <stdexcept>

#include "mddse/catalog.hpp"
#include "mddse/errors.hpp"
#include "mddse/resource.hpp"

using namespace mddse;

namespace {
const Catalog& cat() {
  static const Catalog c = builtin_catalog();
  return c;
}
}  // namespace

TEST_CASE("derate_logic applies the cross-family factors") {
  const DeratingTable& t = cat().derating;
  using F = FpgaFamily;
  CHECK(derate_logic(100.0, F::StratixIV, F::StratixIV, t) == 100.0);
  CHECK(derate_logic(14.157895, F::StratixIV, F::VirtexUltraScalePlus, t) ==
        doctest::Approx(14.157895 * 0.95).epsilon(1e-12));
  CHECK(derate_logic(14.157895, F::StratixIV, F::Stratix10, t) ==
        doctest::Approx(16.70631610).epsilon(1e-9));
  CHECK(derate_logic(50.6635, F::StratixV, F::VirtexUltraScalePlus, t) ==
        doctest::Approx(52.690040).epsilon(1e-9));
  CHECK(derate_logic(50.6635, F::StratixV, F::Stratix10, t) ==
        doctest::Approx(65.355915).epsilon(1e-9));
  CHECK(derate_logic(5.0, F::VirtexUltraScalePlus, F::Stratix10, t) == 5.0);
  CHECK_THROWS_AS(derate_logic(1.0, F::Stratix10, F::StratixIV, t), not_found_error);
  CHECK_THROWS_AS(derate_logic(-1.0, F::StratixIV, F::StratixIV, t), std::invalid_argument);
}

TEST_CASE("dsp_map folds multipliers into whole slices") {
  CHECK(dsp_map(82, 2) == 41);
  CHECK(dsp_map(384, 1) == 384);
  CHECK(dsp_map(32, 1) == 32);
  CHECK(dsp_map(81, 2) == 41);  // odd count still needs the whole slice
  CHECK(dsp_map(0, 2) == 0);
  CHECK_THROWS_AS(dsp_map(-1, 2), std::invalid_argument);
  CHECK_THROWS_AS(dsp_map(82, 0), std::invalid_argument);
}

TEST_CASE("derate_unit translates one footprint to a target device") {
  const DeratedUnit pp = derate_unit(cat().units.at("pp_pipeline"),
                                     FpgaFamily::VirtexUltraScalePlus, cat().derating);
  CHECK(pp.logic_klut == doctest::Approx(14.157895 * 0.95).epsilon(1e-12));
  CHECK(pp.dsp_slices == 41);
  CHECK(pp.mem_mbit == doctest::Approx(1.0976));
}

TEST_CASE("packing fills the reference boards to the published counts") {
  // Pair pipelines per card, logic budget bound on every board.
  CHECK(pack_units(cat(), cat().boards.at("VCU1525"), MixPolicy::PpPipelinesOnly)
            .pp_pipelines_per_card == 66);
  CHECK(pack_units(cat(), cat().boards.at("XUPP3R-VU9P"), MixPolicy::PpPipelinesOnly)
            .pp_pipelines_per_card == 66);
  CHECK(pack_units(cat(), cat().boards.at("XUPP3R-VU13P"), MixPolicy::PpPipelinesOnly)
            .pp_pipelines_per_card == 109);
  CHECK(pack_units(cat(), cat().boards.at("DE10-PRO"), MixPolicy::PpPipelinesOnly)
            .pp_pipelines_per_card == 42);
  CHECK(pack_units(cat(), cat().boards.at("AWS-F1"), MixPolicy::PpPipelinesOnly)
            .pp_pipelines_per_card == 57);

  const UnitAllocation vu9p = pack_units(cat(), cat().boards.at("VCU1525"), MixPolicy::PmeFixedFft);
  CHECK(vu9p.fft_units_per_card == 64);
  CHECK(vu9p.interpolators_per_card == 10);
  CHECK(pack_units(cat(), cat().boards.at("XUPP3R-VU13P"), MixPolicy::PmeFixedFft)
            .interpolators_per_card == 18);
  CHECK(pack_units(cat(), cat().boards.at("DE10-PRO"), MixPolicy::PmeFixedFft)
            .interpolators_per_card == 5);
  CHECK(pack_units(cat(), cat().boards.at("AWS-F1"), MixPolicy::PmeFixedFft)
            .interpolators_per_card == 8);
}

TEST_CASE("packing respects every budget axis") {
  Catalog c = builtin_catalog();
  BoardSpec board = c.boards.at("VCU1525");

  // Memory-bound: shrink on-chip RAM until fewer pipelines fit than logic allows.
  c.devices.at("VU9P").mem_capacity_mbit = 1.0976 * 10 + 0.3503 + 0.01;
  CHECK(pack_units(c, board, MixPolicy::PpPipelinesOnly).pp_pipelines_per_card == 10);

  // DSP-bound.
  c.devices.at("VU9P").mem_capacity_mbit = 345.9;
  c.devices.at("VU9P").dsp_capacity = 41 * 5;
  CHECK(pack_units(c, board, MixPolicy::PpPipelinesOnly).pp_pipelines_per_card == 5);
}

TEST_CASE("packing throws when nothing fits") {
  Catalog c = builtin_catalog();
  BoardSpec board = c.boards.at("VCU1525");
  board.usable_logic_fraction = 0.005;  // under one pipeline of logic
  CHECK_THROWS_AS(pack_units(c, board, MixPolicy::PpPipelinesOnly), infeasible_error);
  CHECK_THROWS_AS(pack_units(c, board, MixPolicy::PmeFixedFft), infeasible_error);
}

TEST_CASE("allocation_for_counts reports usage and utilization") {
  const BoardSpec& vcu = cat().boards.at("VCU1525");
  const UnitAllocation pp = allocation_for_counts(cat(), vcu, 66, 0, 0);
  CHECK(pp.logic_used_klut == doctest::Approx(66 * (14.157895 * 0.95)).epsilon(1e-9));
  CHECK(pp.dsp_used == 66 * 41);
  CHECK(pp.mem_used_mbit == doctest::Approx(66 * 1.0976).epsilon(1e-9));
  CHECK(pp.utilization_logic ==
        doctest::Approx(66 * (14.157895 * 0.95) / 1182.0).epsilon(1e-9));

  const UnitAllocation pme = allocation_for_counts(cat(), vcu, 0, 10, 64);
  CHECK(pme.logic_used_klut == doctest::Approx(10 * 52.690040 + 64 * 5.0).epsilon(1e-9));
  CHECK(pme.dsp_used == 10 * 384 + 64 * 32);  // 5888
  CHECK_THROWS_AS(allocation_for_counts(cat(), vcu, -1, 0, 0), std::invalid_argument);
}

TEST_CASE("budget_violation names the axis that broke") {
  const BoardSpec& vcu = cat().boards.at("VCU1525");
  CHECK(budget_violation(cat(), vcu, allocation_for_counts(cat(), vcu, 66, 0, 0)).empty());
  const std::string logic = budget_violation(cat(), vcu, allocation_for_counts(cat(), vcu, 67, 0, 0));
  CHECK(logic.find("logic") != std::string::npos);

  Catalog low_dsp = builtin_catalog();
  low_dsp.devices.at("VU9P").dsp_capacity = 1000.0;  // logic still fits, DSP no longer does
  const std::string dsp =
      budget_violation(low_dsp, vcu, allocation_for_counts(low_dsp, vcu, 66, 0, 0));
  CHECK(dsp.find("DSP") != std::string::npos);

  Catalog low_mem = builtin_catalog();
  low_mem.devices.at("VU9P").mem_capacity_mbit = 10.0;
  const std::string mem =
      budget_violation(low_mem, vcu, allocation_for_counts(low_mem, vcu, 66, 0, 0));
  CHECK(mem.find("memory") != std::string::npos);
}

TEST_CASE("PP card memory matches the frozen reference value") {
  const MdSystem lem{"2LEM-91k", 91030, 99.0, 2.0, 12.0, 84};
  const PpMemoryBreakdown m = pp_card_memory(cat(), lem, 12.6, 7, 66);
  CHECK(m.total_mbit == doctest::Approx(78.30004254545455).epsilon(1e-9));
  CHECK(m.particle_mbit + m.pipe_mbit + m.rom_mbit == doctest::Approx(m.total_mbit));
  CHECK(m.rom_mbit == doctest::Approx(0.3503));
}

TEST_CASE("PP card memory: the raw position store alone") {
  // With force accumulators disabled and no shell import, only the 128-bit
  // position entries of the card's residents remain.
  Catalog c = builtin_catalog();
  c.memory.force_replication = 0.0;
  const MdSystem lem{"2LEM-91k", 91030, 99.0, 2.0, 12.0, 84};
  const PpMemoryBreakdown m = pp_card_memory(c, lem, 0.0, 7, 0);
  CHECK(m.particle_mbit == doctest::Approx(91030.0 / 7.0 * 128.0 / 1e6).epsilon(1e-12));
  CHECK(m.particle_mbit == doctest::Approx(1.66455).epsilon(1e-4));
}

TEST_CASE("PME card memory covers the grid plus FFT working sets") {
  CHECK(pme_card_memory_mbit(cat(), 80, 64) == doctest::Approx(50.176).epsilon(1e-9));
  CHECK(pme_card_memory_mbit(cat(), 82, 64) == doctest::Approx(53.955328).epsilon(1e-9));
  CHECK(pme_card_memory_mbit(cat(), 80, 96) == doctest::Approx(50.688).epsilon(1e-9));
  CHECK(pme_card_memory_mbit(cat(), 84, 64) == doctest::Approx(57.923584).epsilon(1e-9));
  CHECK_THROWS_AS(pme_card_memory_mbit(cat(), 1, 64), std::invalid_argument);
}
