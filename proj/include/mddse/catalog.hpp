#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mddse/workload.hpp"

namespace mddse {

enum class FpgaFamily { StratixIV, StratixV, Stratix10, VirtexUltraScalePlus };

const char* to_string(FpgaFamily family);
std::optional<FpgaFamily> family_from_string(std::string_view name);

// Logic capacity is in kLUT for Xilinx parts and kALM for Intel parts; the
// derating table converts unit footprints between the two fabrics. DSP
// capacity counts slices (Xilinx) or 18-bit multipliers (Intel), matching how
// vendor totals are usually quoted. Memory totals are the on-chip block RAM
// plus deep RAM of the usable partition.
struct FpgaDevice {
  std::string name;
  FpgaFamily family = FpgaFamily::VirtexUltraScalePlus;
  double logic_capacity_klut = 0.0;
  double dsp_capacity = 0.0;
  double mem_capacity_mbit = 0.0;
  double fmax_mhz = 0.0;
};

struct BoardSpec {
  std::string name;
  std::string device;  // key into Catalog::devices
  double price_usd = 0.0;
  double power_kw = 0.25;
  double ring_raw_gbit = 0.0;  // card-to-card ring, per direction
  double pcie_raw_gbit = 0.0;  // host link per card
  double usable_logic_fraction = 0.755;
  int pme_fft_units = 64;  // FFT unit count the PME fill policy pins first
  std::string details;
};

struct GpuBoardSpec {
  std::string name;
  double price_usd = 0.0;
  double power_kw = 0.25;
  std::string generation;
};

struct ServerSpec {
  std::string name;
  double price_usd = 0.0;
  double power_kw = 0.0;
  int pcie_slots = 0;
  int vcpus = 0;
  std::string details;
};

struct CloudInstanceSpec {
  std::string name;
  double price_usd_per_hour = 0.0;
  int vcpus = 0;
  std::string accelerators;
};

struct LicenseSpec {
  std::string name;
  double price_usd = 0.0;
  int nodes_per_site = 1;
};

struct CostParams {
  double amortization_years = 5.0;
  double electricity_usd_per_kwh = 0.1;
  double cooling_multiplier = 2.0;  // on-prem energy overhead; cloud prices are all-in
  double amortization_hours() const { return amortization_years * 365.0 * 24.0; }
};

// Efficiency and latency shared by every link of one kind; the raw bandwidth
// comes from the board entry.
struct LinkParams {
  double efficiency = 1.0;
  double latency_s = 0.0;
};

enum class UnitKind { PpPipeline, GridInterpolator, FftMacro };

// Synthesis footprint of one accelerator unit on its source fabric.
// logic_klogic is the calibrated figure the model uses; logic_klogic_reported
// keeps the underlying published number next to it for reference.
struct UnitFootprint {
  UnitKind kind = UnitKind::PpPipeline;
  FpgaFamily source_family = FpgaFamily::StratixIV;
  double logic_klogic = 0.0;
  double logic_klogic_reported = 0.0;
  int dsp_multipliers = 0;
  int multipliers_per_slice = 1;
  double mem_mbit = 0.0;
};

// (source family, target family) -> logic scaling factor. Same-family pairs
// are implicitly 1.0 and must not appear with any other value.
using DeratingTable = std::map<std::pair<FpgaFamily, FpgaFamily>, double>;

// Bit widths and calibrated constants of the on-chip memory estimate.
struct MemoryModel {
  double position_bits = 128.0;  // 3x32-bit coordinates + 32-bit metadata
  double force_bits = 96.0;      // 3x32-bit accumulators
  double force_replication = 1.0;
  double atom_rom_mbit = 0.3503;        // per-card constant tables
  double pme_bits_per_grid_point = 96.0;
};

// Driver-side per-step overhead scales inversely with host thread count.
struct SwOverheadModel {
  double reference_us = 280.0;
  int reference_vcpus = 40;
  double seconds_for(int vcpus) const;
};

struct Catalog {
  std::map<std::string, FpgaDevice> devices;
  std::map<std::string, BoardSpec> boards;
  std::map<std::string, GpuBoardSpec> gpus;
  std::map<std::string, ServerSpec> servers;
  std::map<std::string, CloudInstanceSpec> cloud_instances;
  std::map<std::string, LicenseSpec> licenses;
  std::map<std::string, MdSystem> systems;
  std::map<std::string, UnitFootprint> units;  // pp_pipeline, grid_interpolator, fft_macro
  DeratingTable derating;
  CostParams cost;
  LinkParams pcie_link;
  LinkParams ring_link;
  MemoryModel memory;
  SwOverheadModel sw_overhead;
  double pp_utilization = 0.8;
};

Catalog builtin_catalog();

struct Violation {
  std::string entity;
  std::string field;
  std::string message;
};

// Structural and range checks over every entry; empty result means valid.
std::vector<Violation> validate_catalog(const Catalog& catalog);

// Strict loader: unknown keys are rejected with a JSON-pointer style location.
Catalog load_catalog_file(const std::string& path);
Catalog catalog_from_json_text(const std::string& text, const std::string& source_name);
std::string catalog_to_json_text(const Catalog& catalog);

// Case/punctuation-insensitive lookup across all priced entries.
enum class EntryKind { Board, Gpu, Server, CloudInstance, License };

struct CatalogEntry {
  EntryKind kind = EntryKind::Board;
  std::string name;
  double price_usd = 0.0;       // purchase price, or USD/h for cloud instances
  bool price_is_hourly = false;
  double power_kw = 0.0;
  std::string details;
};

CatalogEntry lookup_entry(const Catalog& catalog, const std::string& query);
std::vector<CatalogEntry> all_entries(const Catalog& catalog);

const FpgaDevice& device_for_board(const Catalog& catalog, const BoardSpec& board);

}  // namespace mddse
