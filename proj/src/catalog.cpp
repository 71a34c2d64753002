#include "mddse/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "mddse/errors.hpp"

namespace mddse {

using nlohmann::json;

const char* to_string(FpgaFamily family) {
  switch (family) {
    case FpgaFamily::StratixIV: return "stratix-iv";
    case FpgaFamily::StratixV: return "stratix-v";
    case FpgaFamily::Stratix10: return "stratix-10";
    case FpgaFamily::VirtexUltraScalePlus: return "virtex-ultrascale-plus";
  }
  return "unknown";
}

std::optional<FpgaFamily> family_from_string(std::string_view name) {
  if (name == "stratix-iv") return FpgaFamily::StratixIV;
  if (name == "stratix-v") return FpgaFamily::StratixV;
  if (name == "stratix-10") return FpgaFamily::Stratix10;
  if (name == "virtex-ultrascale-plus") return FpgaFamily::VirtexUltraScalePlus;
  return std::nullopt;
}

double SwOverheadModel::seconds_for(int vcpus) const {
  if (vcpus < 1) throw std::invalid_argument("sw overhead: vcpus must be >= 1");
  return reference_us * 1e-6 * reference_vcpus / vcpus;
}

Catalog builtin_catalog() {
  Catalog c;

  c.devices["VU9P"] = {"VU9P", FpgaFamily::VirtexUltraScalePlus, 1182.0, 6840.0, 345.9, 400.0};
  c.devices["VU13P"] = {"VU13P", FpgaFamily::VirtexUltraScalePlus, 1728.0, 12288.0, 454.5, 400.0};
  c.devices["1SGX280"] = {"1SGX280", FpgaFamily::Stratix10, 933.0, 11520.0, 228.9, 700.0};
  // Cloud FPGA user partition: the shell keeps the rest of the die.
  c.devices["F1-VU9P"] = {"F1-VU9P", FpgaFamily::VirtexUltraScalePlus, 914.0, 5640.0, 171.6, 400.0};

  c.boards["VCU1525"] = {"VCU1525", "VU9P", 4500.0, 0.25, 200.0, 63.0, 0.755, 64,
                         "dual QSFP28 ring"};
  c.boards["XUPP3R-VU9P"] = {"XUPP3R-VU9P", "VU9P", 10000.0, 0.25, 400.0, 63.0, 0.755, 64,
                             "quad QSFP28 ring"};
  c.boards["XUPP3R-VU13P"] = {"XUPP3R-VU13P", "VU13P", 15000.0, 0.25, 400.0, 63.0, 0.85, 96,
                              "quad QSFP28 ring"};
  c.boards["DE10-PRO"] = {"DE10-PRO", "1SGX280", 15000.0, 0.25, 400.0, 63.0, 0.755, 64,
                          "quad QSFP28 ring"};
  c.boards["AWS-F1"] = {"AWS-F1", "F1-VU9P", 0.0, 0.25, 400.0, 63.0, 0.85, 64,
                        "cloud card, priced via f1 instances"};

  c.gpus["GTX1080Ti"] = {"GTX1080Ti", 800.0, 0.25, "Pascal"};
  c.gpus["TITAN-XP"] = {"TITAN-XP", 1350.0, 0.25, "Pascal"};
  c.gpus["P100"] = {"P100", 6000.0, 0.25, "Pascal"};
  c.gpus["V100-SMX2"] = {"V100-SMX2", 10000.0, 0.25, "Volta"};
  c.gpus["TITAN-V"] = {"TITAN-V", 3600.0, 0.25, "Volta"};

  c.servers["SERVER-4XPCIE"] = {"SERVER-4XPCIE", 8000.0, 0.45, 4, 40, "dual-socket, 4 x16 slots"};
  c.servers["SERVER-8XPCIE"] = {"SERVER-8XPCIE", 11000.0, 0.45, 8, 40, "dual-socket, 8 x8 slots"};

  c.cloud_instances["p3.2xlarge"] = {"p3.2xlarge", 3.305, 8, "1x V100"};
  c.cloud_instances["p3.8xlarge"] = {"p3.8xlarge", 13.22, 32, "4x V100"};
  c.cloud_instances["f1.2xlarge"] = {"f1.2xlarge", 1.815, 8, "1x FPGA card"};
  c.cloud_instances["f1.16xlarge"] = {"f1.16xlarge", 14.52, 64, "8x FPGA cards"};

  c.licenses["AMBER-LICENSE"] = {"AMBER-LICENSE", 20000.0, 4};

  c.systems["4J3I-35k"] = {"4J3I-35k", 35022, 72.0, 2.0, 12.0, 60};
  c.systems["2LEM-91k"] = {"2LEM-91k", 91030, 99.0, 2.0, 12.0, 84};
  c.systems["2N5E-158k"] = {"2N5E-158k", 157853, 119.0, 2.0, 12.0, 100};

  // Calibrated logic footprints; the reported column keeps the raw synthesis
  // figure each one was derived from.
  c.units["pp_pipeline"] = {UnitKind::PpPipeline, FpgaFamily::StratixIV,
                            14.157895, 14.5, 82, 2, 1.0976};
  c.units["grid_interpolator"] = {UnitKind::GridInterpolator, FpgaFamily::StratixV,
                                  50.6635, 51.0, 384, 1, 0.0};
  c.units["fft_macro"] = {UnitKind::FftMacro, FpgaFamily::VirtexUltraScalePlus,
                          5.0, 5.0, 32, 1, 0.016};

  c.derating[{FpgaFamily::StratixIV, FpgaFamily::VirtexUltraScalePlus}] = 0.95;
  c.derating[{FpgaFamily::StratixIV, FpgaFamily::Stratix10}] = 1.18;
  c.derating[{FpgaFamily::StratixV, FpgaFamily::VirtexUltraScalePlus}] = 1.04;
  c.derating[{FpgaFamily::StratixV, FpgaFamily::Stratix10}] = 1.29;
  c.derating[{FpgaFamily::VirtexUltraScalePlus, FpgaFamily::Stratix10}] = 1.0;

  c.cost = CostParams{};
  c.pcie_link = {54.0 / 63.0, 10e-6};
  c.ring_link = {0.85, 0.5e-6};
  c.memory = MemoryModel{};
  c.sw_overhead = SwOverheadModel{};
  c.pp_utilization = 0.8;
  return c;
}

// ---------------------------------------------------------------------------
// validation

namespace {

void check(std::vector<Violation>& out, bool ok, const std::string& entity,
           const std::string& field, const std::string& message) {
  if (!ok) out.push_back({entity, field, message});
}

}  // namespace

std::vector<Violation> validate_catalog(const Catalog& c) {
  std::vector<Violation> v;

  for (const auto& [name, d] : c.devices) {
    check(v, d.logic_capacity_klut > 0, "devices." + name, "logic_capacity_klut", "must be > 0");
    check(v, d.dsp_capacity > 0, "devices." + name, "dsp_capacity", "must be > 0");
    check(v, d.mem_capacity_mbit > 0, "devices." + name, "mem_capacity_mbit", "must be > 0");
    check(v, d.fmax_mhz >= 50 && d.fmax_mhz <= 1000, "devices." + name, "fmax_mhz",
          "must lie in [50, 1000] MHz");
  }
  for (const auto& [name, b] : c.boards) {
    check(v, b.price_usd >= 0, "boards." + name, "price_usd", "must be >= 0");
    check(v, b.power_kw > 0, "boards." + name, "power_kw", "must be > 0");
    check(v, b.ring_raw_gbit > 0, "boards." + name, "ring_raw_gbit", "must be > 0");
    check(v, b.pcie_raw_gbit > 0, "boards." + name, "pcie_raw_gbit", "must be > 0");
    check(v, b.usable_logic_fraction > 0 && b.usable_logic_fraction <= 1, "boards." + name,
          "usable_logic_fraction", "must lie in (0, 1]");
    check(v, b.pme_fft_units >= 0, "boards." + name, "pme_fft_units", "must be >= 0");
    check(v, c.devices.count(b.device) == 1, "boards." + name, "device",
          "unknown device '" + b.device + "'");
  }
  for (const auto& [name, g] : c.gpus) {
    check(v, g.price_usd >= 0, "gpus." + name, "price_usd", "must be >= 0");
    check(v, g.power_kw > 0, "gpus." + name, "power_kw", "must be > 0");
  }
  for (const auto& [name, s] : c.servers) {
    check(v, s.price_usd >= 0, "servers." + name, "price_usd", "must be >= 0");
    check(v, s.power_kw > 0, "servers." + name, "power_kw", "must be > 0");
    check(v, s.pcie_slots >= 1, "servers." + name, "pcie_slots", "must be >= 1");
    check(v, s.vcpus >= 1, "servers." + name, "vcpus", "must be >= 1");
  }
  for (const auto& [name, i] : c.cloud_instances) {
    check(v, i.price_usd_per_hour > 0, "cloud_instances." + name, "price_usd_per_hour",
          "must be > 0");
    check(v, i.vcpus >= 1, "cloud_instances." + name, "vcpus", "must be >= 1");
  }
  for (const auto& [name, l] : c.licenses) {
    check(v, l.price_usd >= 0, "licenses." + name, "price_usd", "must be >= 0");
    check(v, l.nodes_per_site >= 1, "licenses." + name, "nodes_per_site", "must be >= 1");
  }
  for (const auto& [name, s] : c.systems) {
    check(v, s.n_particles > 0, "systems." + name, "n_particles", "must be > 0");
    check(v, s.box_edge_a > 0, "systems." + name, "box_edge_a", "must be > 0");
    check(v, s.timestep_fs > 0, "systems." + name, "timestep_fs", "must be > 0");
    check(v, s.base_cutoff_a > 0 && s.base_cutoff_a < s.box_edge_a / 2, "systems." + name,
          "base_cutoff_a", "must lie in (0, box/2)");
    check(v, s.base_grid >= 2, "systems." + name, "base_grid", "must be >= 2");
  }
  for (const auto& [name, u] : c.units) {
    check(v, u.logic_klogic > 0, "units." + name, "logic_klogic", "must be > 0");
    check(v, u.dsp_multipliers >= 0, "units." + name, "dsp_multipliers", "must be >= 0");
    check(v, u.multipliers_per_slice >= 1, "units." + name, "multipliers_per_slice",
          "must be >= 1");
    check(v, u.mem_mbit >= 0, "units." + name, "mem_mbit", "must be >= 0");
  }
  for (const auto& [pair, factor] : c.derating) {
    const std::string entity =
        std::string("derating.") + to_string(pair.first) + "->" + to_string(pair.second);
    check(v, factor > 0.5 && factor < 2.0, entity, "factor", "must lie in (0.5, 2.0)");
    check(v, pair.first != pair.second || factor == 1.0, entity, "factor",
          "same-family factor must be 1.0");
  }
  check(v, c.cost.amortization_years > 0, "cost_params", "amortization_years", "must be > 0");
  check(v, c.cost.electricity_usd_per_kwh >= 0, "cost_params", "electricity_usd_per_kwh",
        "must be >= 0");
  check(v, c.cost.cooling_multiplier >= 1, "cost_params", "cooling_multiplier", "must be >= 1");
  for (const auto& [label, link] : {std::pair<const char*, LinkParams>{"pcie", c.pcie_link},
                                    {"ring", c.ring_link}}) {
    check(v, link.efficiency > 0 && link.efficiency <= 1, std::string("links.") + label,
          "efficiency", "must lie in (0, 1]");
    check(v, link.latency_s >= 0, std::string("links.") + label, "latency_us", "must be >= 0");
  }
  check(v, c.sw_overhead.reference_us > 0, "sw_overhead", "reference_us", "must be > 0");
  check(v, c.sw_overhead.reference_vcpus >= 1, "sw_overhead", "reference_vcpus", "must be >= 1");
  check(v, c.pp_utilization > 0 && c.pp_utilization <= 1, "pp_utilization", "",
        "must lie in (0, 1]");
  check(v, c.memory.position_bits > 0, "memory_model", "position_bits", "must be > 0");
  check(v, c.memory.force_bits > 0, "memory_model", "force_bits", "must be > 0");
  check(v, c.memory.force_replication >= 0, "memory_model", "force_replication", "must be >= 0");
  check(v, c.memory.atom_rom_mbit >= 0, "memory_model", "atom_rom_mbit", "must be >= 0");
  check(v, c.memory.pme_bits_per_grid_point > 0, "memory_model", "pme_bits_per_grid_point",
        "must be > 0");
  return v;
}

// ---------------------------------------------------------------------------
// JSON serialization

namespace {

void require_keys(const json& j, std::initializer_list<const char*> allowed,
                  const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (std::find_if(allowed.begin(), allowed.end(),
                     [&](const char* a) { return key == a; }) == allowed.end())
      throw config_error(where, "unknown key '" + key + "'");
  }
}

double get_number(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw config_error(where, std::string("missing key '") + key + "'");
  if (!j[key].is_number()) throw config_error(where + "." + key, "expected a number");
  return j[key].get<double>();
}

int get_int(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw config_error(where, std::string("missing key '") + key + "'");
  if (!j[key].is_number_integer()) throw config_error(where + "." + key, "expected an integer");
  return j[key].get<int>();
}

std::string get_string(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw config_error(where, std::string("missing key '") + key + "'");
  if (!j[key].is_string()) throw config_error(where + "." + key, "expected a string");
  return j[key].get<std::string>();
}

std::string get_string_or(const json& j, const char* key, const std::string& fallback) {
  if (!j.contains(key)) return fallback;
  return j[key].get<std::string>();
}

FpgaFamily get_family(const json& j, const char* key, const std::string& where) {
  const auto f = family_from_string(get_string(j, key, where));
  if (!f) throw config_error(where + "." + key, "unknown FPGA family");
  return *f;
}

UnitKind unit_kind_for(const std::string& name, const std::string& where) {
  if (name == "pp_pipeline") return UnitKind::PpPipeline;
  if (name == "grid_interpolator") return UnitKind::GridInterpolator;
  if (name == "fft_macro") return UnitKind::FftMacro;
  throw config_error(where, "unknown unit '" + name + "'");
}

json link_to_json(const LinkParams& l) {
  return {{"efficiency", l.efficiency}, {"latency_us", l.latency_s * 1e6}};
}

LinkParams link_from_json(const json& j, const std::string& where) {
  require_keys(j, {"efficiency", "latency_us"}, where);
  return {get_number(j, "efficiency", where), get_number(j, "latency_us", where) * 1e-6};
}

}  // namespace

std::string catalog_to_json_text(const Catalog& c) {
  json j;
  j["cost_params"] = {{"amortization_years", c.cost.amortization_years},
                      {"electricity_usd_per_kwh", c.cost.electricity_usd_per_kwh},
                      {"cooling_multiplier", c.cost.cooling_multiplier}};
  j["links"] = {{"pcie", link_to_json(c.pcie_link)}, {"ring", link_to_json(c.ring_link)}};
  j["sw_overhead"] = {{"reference_us", c.sw_overhead.reference_us},
                      {"reference_vcpus", c.sw_overhead.reference_vcpus}};
  j["pp_utilization"] = c.pp_utilization;
  j["memory_model"] = {{"position_bits", c.memory.position_bits},
                       {"force_bits", c.memory.force_bits},
                       {"force_replication", c.memory.force_replication},
                       {"atom_rom_mbit", c.memory.atom_rom_mbit},
                       {"pme_bits_per_grid_point", c.memory.pme_bits_per_grid_point}};
  for (const auto& [name, d] : c.devices)
    j["devices"][name] = {{"family", to_string(d.family)},
                          {"logic_capacity_klut", d.logic_capacity_klut},
                          {"dsp_capacity", d.dsp_capacity},
                          {"mem_capacity_mbit", d.mem_capacity_mbit},
                          {"fmax_mhz", d.fmax_mhz}};
  for (const auto& [name, b] : c.boards)
    j["boards"][name] = {{"device", b.device},
                         {"price_usd", b.price_usd},
                         {"power_kw", b.power_kw},
                         {"ring_raw_gbit", b.ring_raw_gbit},
                         {"pcie_raw_gbit", b.pcie_raw_gbit},
                         {"usable_logic_fraction", b.usable_logic_fraction},
                         {"pme_fft_units", b.pme_fft_units},
                         {"details", b.details}};
  for (const auto& [name, g] : c.gpus)
    j["gpus"][name] = {{"price_usd", g.price_usd},
                       {"power_kw", g.power_kw},
                       {"generation", g.generation}};
  for (const auto& [name, s] : c.servers)
    j["servers"][name] = {{"price_usd", s.price_usd},
                          {"power_kw", s.power_kw},
                          {"pcie_slots", s.pcie_slots},
                          {"vcpus", s.vcpus},
                          {"details", s.details}};
  for (const auto& [name, i] : c.cloud_instances)
    j["cloud_instances"][name] = {{"price_usd_per_hour", i.price_usd_per_hour},
                                  {"vcpus", i.vcpus},
                                  {"accelerators", i.accelerators}};
  for (const auto& [name, l] : c.licenses)
    j["licenses"][name] = {{"price_usd", l.price_usd}, {"nodes_per_site", l.nodes_per_site}};
  for (const auto& [name, s] : c.systems)
    j["systems"][name] = {{"n_particles", s.n_particles},
                          {"box_edge_a", s.box_edge_a},
                          {"timestep_fs", s.timestep_fs},
                          {"base_cutoff_a", s.base_cutoff_a},
                          {"base_grid", s.base_grid}};
  for (const auto& [name, u] : c.units)
    j["units"][name] = {{"source_family", to_string(u.source_family)},
                        {"logic_klogic", u.logic_klogic},
                        {"logic_klogic_reported", u.logic_klogic_reported},
                        {"dsp_multipliers", u.dsp_multipliers},
                        {"multipliers_per_slice", u.multipliers_per_slice},
                        {"mem_mbit", u.mem_mbit}};
  j["derating"] = json::array();
  for (const auto& [pair, factor] : c.derating)
    j["derating"].push_back(
        {{"from", to_string(pair.first)}, {"to", to_string(pair.second)}, {"factor", factor}});
  return j.dump(2) + "\n";
}

Catalog catalog_from_json_text(const std::string& text, const std::string& source_name) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw config_error(source_name, e.what());
  }
  if (!j.is_object()) throw config_error(source_name, "top level must be an object");
  const std::initializer_list<const char*> sections = {
      "cost_params", "links",   "sw_overhead",     "pp_utilization", "memory_model",
      "devices",     "boards",  "gpus",            "servers",        "cloud_instances",
      "licenses",    "systems", "units",           "derating"};
  require_keys(j, sections, source_name);
  for (const char* key : sections)
    if (!j.contains(key))
      throw config_error(source_name, std::string("missing key '") + key + "'");

  Catalog c;
  {
    const std::string w = source_name + ":cost_params";
    const json& p = j.at("cost_params");
    require_keys(p, {"amortization_years", "electricity_usd_per_kwh", "cooling_multiplier"}, w);
    c.cost.amortization_years = get_number(p, "amortization_years", w);
    c.cost.electricity_usd_per_kwh = get_number(p, "electricity_usd_per_kwh", w);
    c.cost.cooling_multiplier = get_number(p, "cooling_multiplier", w);
  }
  {
    const std::string w = source_name + ":links";
    const json& l = j.at("links");
    require_keys(l, {"pcie", "ring"}, w);
    c.pcie_link = link_from_json(l.at("pcie"), w + ".pcie");
    c.ring_link = link_from_json(l.at("ring"), w + ".ring");
  }
  {
    const std::string w = source_name + ":sw_overhead";
    const json& s = j.at("sw_overhead");
    require_keys(s, {"reference_us", "reference_vcpus"}, w);
    c.sw_overhead.reference_us = get_number(s, "reference_us", w);
    c.sw_overhead.reference_vcpus = get_int(s, "reference_vcpus", w);
  }
  c.pp_utilization = j.at("pp_utilization").get<double>();
  {
    const std::string w = source_name + ":memory_model";
    const json& m = j.at("memory_model");
    require_keys(m,
                 {"position_bits", "force_bits", "force_replication", "atom_rom_mbit",
                  "pme_bits_per_grid_point"},
                 w);
    c.memory.position_bits = get_number(m, "position_bits", w);
    c.memory.force_bits = get_number(m, "force_bits", w);
    c.memory.force_replication = get_number(m, "force_replication", w);
    c.memory.atom_rom_mbit = get_number(m, "atom_rom_mbit", w);
    c.memory.pme_bits_per_grid_point = get_number(m, "pme_bits_per_grid_point", w);
  }
  for (const auto& [name, d] : j.at("devices").items()) {
    const std::string w = source_name + ":devices." + name;
    require_keys(d, {"family", "logic_capacity_klut", "dsp_capacity", "mem_capacity_mbit",
                     "fmax_mhz"},
                 w);
    c.devices[name] = {name, get_family(d, "family", w), get_number(d, "logic_capacity_klut", w),
                       get_number(d, "dsp_capacity", w), get_number(d, "mem_capacity_mbit", w),
                       get_number(d, "fmax_mhz", w)};
  }
  for (const auto& [name, b] : j.at("boards").items()) {
    const std::string w = source_name + ":boards." + name;
    require_keys(b, {"device", "price_usd", "power_kw", "ring_raw_gbit", "pcie_raw_gbit",
                     "usable_logic_fraction", "pme_fft_units", "details"},
                 w);
    c.boards[name] = {name,
                      get_string(b, "device", w),
                      get_number(b, "price_usd", w),
                      get_number(b, "power_kw", w),
                      get_number(b, "ring_raw_gbit", w),
                      get_number(b, "pcie_raw_gbit", w),
                      get_number(b, "usable_logic_fraction", w),
                      get_int(b, "pme_fft_units", w),
                      get_string_or(b, "details", "")};
  }
  for (const auto& [name, g] : j.at("gpus").items()) {
    const std::string w = source_name + ":gpus." + name;
    require_keys(g, {"price_usd", "power_kw", "generation"}, w);
    c.gpus[name] = {name, get_number(g, "price_usd", w), get_number(g, "power_kw", w),
                    get_string_or(g, "generation", "")};
  }
  for (const auto& [name, s] : j.at("servers").items()) {
    const std::string w = source_name + ":servers." + name;
    require_keys(s, {"price_usd", "power_kw", "pcie_slots", "vcpus", "details"}, w);
    c.servers[name] = {name,
                       get_number(s, "price_usd", w),
                       get_number(s, "power_kw", w),
                       get_int(s, "pcie_slots", w),
                       get_int(s, "vcpus", w),
                       get_string_or(s, "details", "")};
  }
  for (const auto& [name, i] : j.at("cloud_instances").items()) {
    const std::string w = source_name + ":cloud_instances." + name;
    require_keys(i, {"price_usd_per_hour", "vcpus", "accelerators"}, w);
    c.cloud_instances[name] = {name, get_number(i, "price_usd_per_hour", w),
                               get_int(i, "vcpus", w), get_string_or(i, "accelerators", "")};
  }
  for (const auto& [name, l] : j.at("licenses").items()) {
    const std::string w = source_name + ":licenses." + name;
    require_keys(l, {"price_usd", "nodes_per_site"}, w);
    c.licenses[name] = {name, get_number(l, "price_usd", w), get_int(l, "nodes_per_site", w)};
  }
  for (const auto& [name, s] : j.at("systems").items()) {
    const std::string w = source_name + ":systems." + name;
    require_keys(s, {"n_particles", "box_edge_a", "timestep_fs", "base_cutoff_a", "base_grid"},
                 w);
    c.systems[name] = {name,
                       static_cast<long>(get_number(s, "n_particles", w)),
                       get_number(s, "box_edge_a", w),
                       get_number(s, "timestep_fs", w),
                       get_number(s, "base_cutoff_a", w),
                       get_int(s, "base_grid", w)};
  }
  for (const auto& [name, u] : j.at("units").items()) {
    const std::string w = source_name + ":units." + name;
    require_keys(u, {"source_family", "logic_klogic", "logic_klogic_reported", "dsp_multipliers",
                     "multipliers_per_slice", "mem_mbit"},
                 w);
    c.units[name] = {unit_kind_for(name, w),
                     get_family(u, "source_family", w),
                     get_number(u, "logic_klogic", w),
                     get_number(u, "logic_klogic_reported", w),
                     get_int(u, "dsp_multipliers", w),
                     get_int(u, "multipliers_per_slice", w),
                     get_number(u, "mem_mbit", w)};
  }
  for (const json& entry : j.at("derating")) {
    const std::string w = source_name + ":derating";
    require_keys(entry, {"from", "to", "factor"}, w);
    c.derating[{get_family(entry, "from", w), get_family(entry, "to", w)}] =
        get_number(entry, "factor", w);
  }
  return c;
}

Catalog load_catalog_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error(path, "cannot open catalog file");
  std::stringstream buf;
  buf << in.rdbuf();
  return catalog_from_json_text(buf.str(), path);
}

// ---------------------------------------------------------------------------
// lookup

namespace {

std::string normalize(const std::string& s) {
  std::string out;
  for (char ch : s)
    if (std::isalnum(static_cast<unsigned char>(ch)))
      out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  return out;
}

bool matches(const std::string& query_norm, const std::string& name_norm) {
  if (query_norm == name_norm) return true;
  if (query_norm.size() >= 4 && name_norm.find(query_norm) != std::string::npos) return true;
  if (name_norm.size() >= 4 && query_norm.find(name_norm) != std::string::npos) return true;
  return false;
}

}  // namespace

std::vector<CatalogEntry> all_entries(const Catalog& c) {
  std::vector<CatalogEntry> out;
  for (const auto& [name, b] : c.boards)
    out.push_back({EntryKind::Board, name, b.price_usd, false, b.power_kw,
                   b.device + ", " + b.details});
  for (const auto& [name, g] : c.gpus)
    out.push_back({EntryKind::Gpu, name, g.price_usd, false, g.power_kw, g.generation});
  for (const auto& [name, s] : c.servers)
    out.push_back({EntryKind::Server, name, s.price_usd, false, s.power_kw, s.details});
  for (const auto& [name, i] : c.cloud_instances)
    out.push_back({EntryKind::CloudInstance, name, i.price_usd_per_hour, true, 0.0,
                   i.accelerators + ", " + std::to_string(i.vcpus) + " vCPUs"});
  for (const auto& [name, l] : c.licenses)
    out.push_back({EntryKind::License, name, l.price_usd, false, 0.0,
                   "site license, " + std::to_string(l.nodes_per_site) + " nodes"});
  return out;
}

CatalogEntry lookup_entry(const Catalog& c, const std::string& query) {
  const std::string q = normalize(query);
  if (q.empty()) throw not_found_error("catalog lookup: empty query");
  std::vector<CatalogEntry> hits;
  for (const CatalogEntry& e : all_entries(c)) {
    const std::string n = normalize(e.name);
    if (q == n) return e;  // exact match always wins
    if (matches(q, n)) hits.push_back(e);
  }
  if (hits.empty()) throw not_found_error("catalog lookup: no entry matches '" + query + "'");
  if (hits.size() > 1) {
    std::string names;
    for (const auto& h : hits) names += (names.empty() ? "" : ", ") + h.name;
    throw not_found_error("catalog lookup: '" + query + "' is ambiguous (" + names + ")");
  }
  return hits.front();
}

const FpgaDevice& device_for_board(const Catalog& c, const BoardSpec& board) {
  const auto it = c.devices.find(board.device);
  if (it == c.devices.end())
    throw not_found_error("board " + board.name + " references unknown device " + board.device);
  return it->second;
}

}  // namespace mddse
