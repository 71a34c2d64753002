#include "mddse/config.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "mddse/errors.hpp"

namespace mddse {

using nlohmann::json;

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

double as_number(const json& j, const std::string& where) {
  if (!j.is_number()) throw config_error(where, "expected a number");
  return j.get<double>();
}

int as_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw config_error(where, "expected an integer");
  return j.get<int>();
}

std::string as_string(const json& j, const std::string& where) {
  if (!j.is_string()) throw config_error(where, "expected a string");
  return j.get<std::string>();
}

json parse_or_throw(const std::string& text, const std::string& source_name) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw config_error(source_name, e.what());
  }
}

template <typename Map>
std::string known_names(const Map& map) {
  std::string names;
  for (const auto& [name, value] : map) {
    (void)value;
    names += (names.empty() ? "" : ", ") + name;
  }
  return names;
}

}  // namespace

EstimateConfig estimate_config_from_json_text(const std::string& text,
                                              const std::string& source_name) {
  const json j = parse_or_throw(text, source_name);
  if (!j.is_object()) throw config_error(source_name, "top level must be an object");
  require_keys(j, {"system", "node", "tuned", "sw_overhead_us", "pp_utilization", "balance"},
               source_name);
  if (!j.contains("system")) throw config_error(source_name, "missing key 'system'");
  if (!j.contains("node")) throw config_error(source_name, "missing key 'node'");

  EstimateConfig c;
  c.system = as_string(j.at("system"), source_name + ":system");
  {
    const std::string w = source_name + ":node";
    const json& n = j.at("node");
    require_keys(n,
                 {"server", "board", "n_pp_cards", "n_pme_cards", "pp_pipelines_per_card",
                  "interpolators_per_card", "fft_units_per_card", "vcpus"},
                 w);
    if (!n.contains("server")) throw config_error(w, "missing key 'server'");
    if (!n.contains("board")) throw config_error(w, "missing key 'board'");
    c.node.server = as_string(n.at("server"), w + ".server");
    c.node.board = as_string(n.at("board"), w + ".board");
    if (n.contains("n_pp_cards")) c.node.n_pp_cards = as_int(n.at("n_pp_cards"), w);
    if (n.contains("n_pme_cards")) c.node.n_pme_cards = as_int(n.at("n_pme_cards"), w);
    if (n.contains("pp_pipelines_per_card"))
      c.node.pp_pipelines_per_card = as_int(n.at("pp_pipelines_per_card"), w);
    if (n.contains("interpolators_per_card"))
      c.node.interpolators_per_card = as_int(n.at("interpolators_per_card"), w);
    if (n.contains("fft_units_per_card"))
      c.node.fft_units_per_card = as_int(n.at("fft_units_per_card"), w);
    if (n.contains("vcpus")) c.node.vcpus = as_int(n.at("vcpus"), w);
  }
  if (j.contains("tuned")) {
    const std::string w = source_name + ":tuned";
    const json& t = j.at("tuned");
    require_keys(t, {"cutoff_a", "grid"}, w);
    if (!t.contains("cutoff_a") || !t.contains("grid"))
      throw config_error(w, "needs both 'cutoff_a' and 'grid'");
    c.tuned = TunedParams{as_number(t.at("cutoff_a"), w), as_int(t.at("grid"), w)};
  }
  if (j.contains("sw_overhead_us"))
    c.sw_overhead_us = as_number(j.at("sw_overhead_us"), source_name + ":sw_overhead_us");
  if (j.contains("pp_utilization"))
    c.pp_utilization = as_number(j.at("pp_utilization"), source_name + ":pp_utilization");
  if (j.contains("balance")) {
    const std::string w = source_name + ":balance";
    const json& b = j.at("balance");
    require_keys(b, {"scale_min", "scale_max"}, w);
    if (b.contains("scale_min")) c.balance.scale_min = as_number(b.at("scale_min"), w);
    if (b.contains("scale_max")) c.balance.scale_max = as_number(b.at("scale_max"), w);
  }
  return c;
}

EstimateConfig load_estimate_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error(path, "cannot open config file");
  std::stringstream buf;
  buf << in.rdbuf();
  return estimate_config_from_json_text(buf.str(), path);
}

namespace {

const std::map<std::string, const char*>& preset_texts() {
  // Counts per card mirror the reference single-node configurations; the
  // tuned (cutoff, grid) point is left to the load balancer.
  static const std::map<std::string, const char*> presets = {
      {"vcu1525-2lem", R"({
        "system": "2LEM-91k",
        "node": {"server": "SERVER-8XPCIE", "board": "VCU1525",
                 "n_pp_cards": 7, "n_pme_cards": 1,
                 "pp_pipelines_per_card": 66, "interpolators_per_card": 10,
                 "fft_units_per_card": 64}
      })"},
      {"xupp3r-vu9p-2lem", R"({
        "system": "2LEM-91k",
        "node": {"server": "SERVER-8XPCIE", "board": "XUPP3R-VU9P",
                 "n_pp_cards": 7, "n_pme_cards": 1,
                 "pp_pipelines_per_card": 66, "interpolators_per_card": 10,
                 "fft_units_per_card": 64}
      })"},
      {"xupp3r-vu13p-2lem", R"({
        "system": "2LEM-91k",
        "node": {"server": "SERVER-8XPCIE", "board": "XUPP3R-VU13P",
                 "n_pp_cards": 7, "n_pme_cards": 1,
                 "pp_pipelines_per_card": 108, "interpolators_per_card": 18,
                 "fft_units_per_card": 96}
      })"},
      {"de10-pro-2lem", R"({
        "system": "2LEM-91k",
        "node": {"server": "SERVER-8XPCIE", "board": "DE10-PRO",
                 "n_pp_cards": 7, "n_pme_cards": 1,
                 "pp_pipelines_per_card": 42, "interpolators_per_card": 6,
                 "fft_units_per_card": 64}
      })"},
      {"f1-2lem", R"({
        "system": "2LEM-91k",
        "node": {"server": "SERVER-8XPCIE", "board": "AWS-F1",
                 "n_pp_cards": 7, "n_pme_cards": 1,
                 "pp_pipelines_per_card": 58, "interpolators_per_card": 9,
                 "fft_units_per_card": 64, "vcpus": 64}
      })"},
  };
  return presets;
}

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, text] : preset_texts()) {
      (void)text;
      out.push_back(name);
    }
    return out;
  }();
  return names;
}

EstimateConfig preset_config(const std::string& name) {
  const auto it = preset_texts().find(name);
  if (it == preset_texts().end())
    throw not_found_error("no preset '" + name + "'; available: " + known_names(preset_texts()));
  return estimate_config_from_json_text(it->second, "preset:" + name);
}

ResolvedNode resolve_node(const Catalog& catalog, const EstimateConfig& config) {
  ResolvedNode r;
  {
    const auto it = catalog.systems.find(config.system);
    if (it == catalog.systems.end())
      throw config_error("system", "unknown system '" + config.system +
                                       "'; available: " + known_names(catalog.systems));
    r.system = it->second;
  }
  {
    const auto it = catalog.boards.find(config.node.board);
    if (it == catalog.boards.end())
      throw config_error("node.board", "unknown board '" + config.node.board +
                                           "'; available: " + known_names(catalog.boards));
    r.board = it->second;
  }
  {
    const auto it = catalog.servers.find(config.node.server);
    if (it == catalog.servers.end())
      throw config_error("node.server", "unknown server '" + config.node.server +
                                            "'; available: " + known_names(catalog.servers));
    r.server = it->second;
  }
  const FpgaDevice& device = device_for_board(catalog, r.board);

  if (config.node.n_pp_cards < 1) throw config_error("node.n_pp_cards", "must be >= 1");
  if (config.node.n_pme_cards != 1)
    throw config_error("node.n_pme_cards", "the grid is not split across cards; must be 1");
  const int cards = config.node.n_pp_cards + config.node.n_pme_cards;
  if (cards > r.server.pcie_slots)
    throw infeasible_error("node needs " + std::to_string(cards) + " slots but " + r.server.name +
                           " has " + std::to_string(r.server.pcie_slots));

  // Fill the cards: explicit counts are taken as-is (checked against the raw
  // device capacity; the logic budget fraction only steers packing), zero
  // counts fall back to packing.
  if (config.node.pp_pipelines_per_card > 0) {
    r.pp_alloc = allocation_for_counts(catalog, r.board, config.node.pp_pipelines_per_card, 0, 0);
  } else {
    r.pp_alloc = pack_units(catalog, r.board, MixPolicy::PpPipelinesOnly);
  }
  const int fft_units =
      config.node.fft_units_per_card > 0 ? config.node.fft_units_per_card : r.board.pme_fft_units;
  if (config.node.interpolators_per_card > 0) {
    r.pme_alloc = allocation_for_counts(catalog, r.board, 0, config.node.interpolators_per_card,
                                        fft_units);
  } else {
    BoardSpec board_for_pack = r.board;
    board_for_pack.pme_fft_units = fft_units;
    r.pme_alloc = pack_units(catalog, board_for_pack, MixPolicy::PmeFixedFft);
  }
  for (const UnitAllocation* alloc : {&r.pp_alloc, &r.pme_alloc}) {
    if (alloc->logic_used_klut > device.logic_capacity_klut)
      throw infeasible_error("unit mix exceeds " + device.name + " logic capacity");
    if (alloc->dsp_used > device.dsp_capacity)
      throw infeasible_error("unit mix exceeds " + device.name + " DSP capacity");
    if (alloc->mem_used_mbit > device.mem_capacity_mbit)
      throw infeasible_error("unit mix exceeds " + device.name + " memory capacity");
  }

  const int vcpus = config.node.vcpus > 0 ? config.node.vcpus : r.server.vcpus;
  if (config.node.vcpus < 0) throw config_error("node.vcpus", "must be >= 0");

  r.node.n_pp_cards = config.node.n_pp_cards;
  r.node.n_pme_cards = config.node.n_pme_cards;
  r.node.pp_pipelines_per_card = r.pp_alloc.pp_pipelines_per_card;
  r.node.interpolators_per_card = r.pme_alloc.interpolators_per_card;
  r.node.fft_units_per_card = r.pme_alloc.fft_units_per_card;
  r.node.fmax_mhz = device.fmax_mhz;
  r.node.pcie = {r.board.pcie_raw_gbit, catalog.pcie_link.efficiency,
                 catalog.pcie_link.latency_s};
  r.node.ring = {r.board.ring_raw_gbit, catalog.ring_link.efficiency,
                 catalog.ring_link.latency_s};
  r.node.pp_utilization =
      config.pp_utilization ? *config.pp_utilization : catalog.pp_utilization;
  r.node.sw_overhead_s = config.sw_overhead_us ? *config.sw_overhead_us * 1e-6
                                               : catalog.sw_overhead.seconds_for(vcpus);

  if (config.tuned) {
    r.tuned = *config.tuned;
    if (r.tuned.grid < 2) throw config_error("tuned.grid", "must be >= 2");
    if (r.tuned.cutoff_a <= 0 || r.tuned.cutoff_a >= r.system.box_edge_a / 2.0)
      throw config_error("tuned.cutoff_a", "must lie in (0, box/2)");
  } else {
    r.tuned = balance_load(r.system, r.node, config.balance).best.tuned;
    r.tuned_from_balance = true;
  }
  return r;
}

// ---------------------------------------------------------------------------
// sweep configs

ParetoConfig pareto_config_from_json_text(const std::string& text,
                                          const std::string& source_name) {
  const json j = parse_or_throw(text, source_name);
  if (!j.is_object()) throw config_error(source_name, "top level must be an object");
  require_keys(j, {"scenarios"}, source_name);
  if (!j.contains("scenarios") || !j.at("scenarios").is_array())
    throw config_error(source_name, "missing 'scenarios' array");

  ParetoConfig config;
  int index = 0;
  for (const json& s : j.at("scenarios")) {
    const std::string w = source_name + ":scenarios[" + std::to_string(index++) + "]";
    require_keys(s, {"label", "family", "cost", "performance"}, w);
    for (const char* key : {"label", "family", "cost", "performance"})
      if (!s.contains(key)) throw config_error(w, std::string("missing key '") + key + "'");

    ScenarioConfig sc;
    sc.label = as_string(s.at("label"), w + ".label");
    sc.family = family_from_label(as_string(s.at("family"), w + ".family"));

    const json& cost = s.at("cost");
    require_keys(cost, {"node", "instance", "usd_per_hour"}, w + ".cost");
    int cost_choices = 0;
    if (cost.contains("node")) {
      ++cost_choices;
      const json& n = cost.at("node");
      const std::string wn = w + ".cost.node";
      require_keys(n, {"server", "accelerators", "license"}, wn);
      if (!n.contains("server") || !n.contains("accelerators"))
        throw config_error(wn, "needs 'server' and 'accelerators'");
      NodeCostChoice choice;
      choice.server = as_string(n.at("server"), wn + ".server");
      for (const json& a : n.at("accelerators")) {
        require_keys(a, {"name", "count"}, wn + ".accelerators");
        choice.accelerators.emplace_back(as_string(a.at("name"), wn + ".accelerators.name"),
                                         a.contains("count")
                                             ? as_int(a.at("count"), wn + ".accelerators.count")
                                             : 1);
      }
      if (n.contains("license")) choice.license = as_string(n.at("license"), wn + ".license");
      sc.cost_node = std::move(choice);
    }
    if (cost.contains("instance")) {
      ++cost_choices;
      sc.cost_instance = as_string(cost.at("instance"), w + ".cost.instance");
    }
    if (cost.contains("usd_per_hour")) {
      ++cost_choices;
      sc.cost_usd_per_hour = as_number(cost.at("usd_per_hour"), w + ".cost.usd_per_hour");
    }
    if (cost_choices != 1)
      throw config_error(w + ".cost",
                         "needs exactly one of 'node', 'instance', 'usd_per_hour'");

    const json& perf = s.at("performance");
    require_keys(perf, {"ns_per_day", "estimate_preset", "relative_to", "factor"},
                 w + ".performance");
    int perf_choices = 0;
    if (perf.contains("ns_per_day")) {
      ++perf_choices;
      sc.perf_ns_per_day = as_number(perf.at("ns_per_day"), w + ".performance.ns_per_day");
    }
    if (perf.contains("estimate_preset")) {
      ++perf_choices;
      sc.perf_estimate_preset =
          as_string(perf.at("estimate_preset"), w + ".performance.estimate_preset");
    }
    if (perf.contains("relative_to")) {
      ++perf_choices;
      if (!perf.contains("factor"))
        throw config_error(w + ".performance", "'relative_to' needs a 'factor'");
      sc.perf_relative = {as_string(perf.at("relative_to"), w + ".performance.relative_to"),
                          as_number(perf.at("factor"), w + ".performance.factor")};
    } else if (perf.contains("factor")) {
      throw config_error(w + ".performance", "'factor' needs a 'relative_to'");
    }
    if (perf_choices != 1)
      throw config_error(w + ".performance",
                         "needs exactly one of 'ns_per_day', 'estimate_preset', 'relative_to'");
    config.scenarios.push_back(std::move(sc));
  }
  if (config.scenarios.empty()) throw config_error(source_name, "'scenarios' must not be empty");
  return config;
}

ParetoConfig load_pareto_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error(path, "cannot open config file");
  std::stringstream buf;
  buf << in.rdbuf();
  return pareto_config_from_json_text(buf.str(), path);
}

std::vector<ParetoPoint> evaluate_scenarios(const Catalog& catalog, const ParetoConfig& config) {
  std::vector<ParetoPoint> points;
  for (const ScenarioConfig& sc : config.scenarios) {
    const bool duplicate = std::any_of(points.begin(), points.end(), [&](const ParetoPoint& p) {
      return p.label == sc.label;
    });
    if (duplicate) throw config_error(sc.label, "duplicate scenario label");

    ParetoPoint p;
    p.label = sc.label;
    p.family = sc.family;
    if (sc.cost_node) {
      p.usd_per_hour = node_cost_per_hour(catalog, sc.cost_node->server,
                                          sc.cost_node->accelerators, sc.cost_node->license)
                           .total_usd_per_hour;
    } else if (sc.cost_instance) {
      p.usd_per_hour = cloud_cost_per_hour(catalog, *sc.cost_instance).total_usd_per_hour;
    } else {
      p.usd_per_hour = *sc.cost_usd_per_hour;
    }

    if (sc.perf_ns_per_day) {
      p.ns_per_day = *sc.perf_ns_per_day;
    } else if (sc.perf_estimate_preset) {
      const ResolvedNode r = resolve_node(catalog, preset_config(*sc.perf_estimate_preset));
      p.ns_per_day = estimate_step(r.system, r.tuned, r.node).ns_per_day;
    } else {
      const auto& [ref_label, factor] = *sc.perf_relative;
      const auto it = std::find_if(points.begin(), points.end(), [&](const ParetoPoint& q) {
        return q.label == ref_label;
      });
      if (it == points.end())
        throw config_error(sc.label,
                           "'relative_to' must name an earlier scenario, got '" + ref_label + "'");
      p.ns_per_day = it->ns_per_day * factor;
    }
    points.push_back(std::move(p));
  }
  mark_pareto_front(points);
  return points;
}

}  // namespace mddse
