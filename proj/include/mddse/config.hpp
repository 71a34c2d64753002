#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mddse/balance.hpp"
#include "mddse/catalog.hpp"
#include "mddse/cost.hpp"
#include "mddse/resource.hpp"
#include "mddse/schedule.hpp"
#include "mddse/workload.hpp"

namespace mddse {

// Declarative run description: which benchmark system, which board fills the
// node, and how the cards are populated. Zero counts mean "pack the card".
struct NodeChoice {
  std::string server;
  std::string board;
  int n_pp_cards = 7;
  int n_pme_cards = 1;
  int pp_pipelines_per_card = 0;   // 0: fill by packing
  int interpolators_per_card = 0;  // 0: fill by packing
  int fft_units_per_card = 0;      // 0: board default FFT block
  int vcpus = 0;                   // 0: server default
};

struct EstimateConfig {
  std::string system;
  NodeChoice node;
  std::optional<TunedParams> tuned;  // absent: balance the load first
  std::optional<double> sw_overhead_us;
  std::optional<double> pp_utilization;
  BalanceOptions balance;
};

// A config bound to catalog records, ready to feed the model.
struct ResolvedNode {
  MdSystem system;
  BoardSpec board;
  ServerSpec server;
  NodeConfig node;
  UnitAllocation pp_alloc;
  UnitAllocation pme_alloc;
  TunedParams tuned;
  bool tuned_from_balance = false;
};

EstimateConfig estimate_config_from_json_text(const std::string& text,
                                              const std::string& source_name);
EstimateConfig load_estimate_config(const std::string& path);

const std::vector<std::string>& preset_names();
EstimateConfig preset_config(const std::string& name);

ResolvedNode resolve_node(const Catalog& catalog, const EstimateConfig& config);

// ---------------------------------------------------------------------------
// Performance/cost sweep configs

struct NodeCostChoice {
  std::string server;
  std::vector<std::pair<std::string, int>> accelerators;
  std::optional<std::string> license;
};

struct ScenarioConfig {
  std::string label;
  SolutionFamily family = SolutionFamily::Fpga;
  // cost: exactly one of
  std::optional<NodeCostChoice> cost_node;
  std::optional<std::string> cost_instance;
  std::optional<double> cost_usd_per_hour;
  // performance: exactly one of
  std::optional<double> perf_ns_per_day;
  std::optional<std::string> perf_estimate_preset;
  std::optional<std::pair<std::string, double>> perf_relative;  // earlier label, factor
};

struct ParetoConfig {
  std::vector<ScenarioConfig> scenarios;
};

ParetoConfig pareto_config_from_json_text(const std::string& text,
                                          const std::string& source_name);
ParetoConfig load_pareto_config(const std::string& path);

// Resolves every scenario to a (performance, cost) point, in listed order,
// and marks the Pareto front.
std::vector<ParetoPoint> evaluate_scenarios(const Catalog& catalog, const ParetoConfig& config);

}  // namespace mddse
