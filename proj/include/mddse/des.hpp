#pragma once

#include <string>
#include <vector>

#include "mddse/schedule.hpp"
#include "mddse/workload.hpp"

namespace mddse {

// One phase of work. An empty resource means the phase never contends with
// anything; otherwise phases sharing a resource serialize on it.
struct Phase {
  std::string name;
  double duration_s = 0.0;
  std::string resource;
  std::vector<std::string> deps;
};

struct PhaseGraph {
  std::vector<Phase> phases;
  void add(std::string name, double duration_s, std::string resource,
           std::vector<std::string> deps = {});
};

struct ScheduledPhase {
  std::string name;
  std::string resource;
  double start_s = 0.0;
  double end_s = 0.0;
};

struct Timeline {
  std::vector<ScheduledPhase> phases;
  double makespan_s = 0.0;
};

// Deterministic list scheduler: among ready phases, always place the one with
// the earliest feasible start (ties: earlier ready time, then insertion
// order). Throws graph_cycle_error when dependencies cannot be satisfied.
Timeline simulate_schedule(const PhaseGraph& graph);

// The per-step phase graph for one node: per-card H2D, pair compute and halo
// exchange, the PME chain, force readback, then the host-side bookkeeping.
PhaseGraph build_step_graph(const MdSystem& system, const TunedParams& tuned,
                            const NodeConfig& node);

}  // namespace mddse
