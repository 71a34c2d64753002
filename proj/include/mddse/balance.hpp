#pragma once

#include <vector>

#include "mddse/schedule.hpp"
#include "mddse/workload.hpp"

namespace mddse {

// Search window for coupled (cutoff, grid) retuning. scale is the cutoff
// multiplier: the grid shrinks by the same factor so cutoff*grid stays put.
// Shrinking the cutoff below its base value is never considered; that would
// change the short-range accuracy the base parameters were validated at.
struct BalanceOptions {
  double scale_min = 1.0;
  double scale_max = 1.5;
};

struct BalanceCandidate {
  TunedParams tuned;
  StepEstimate estimate;
};

struct BalanceResult {
  BalanceCandidate best;
  std::vector<BalanceCandidate> evaluated;  // base grid first, then shrinking
};

// Walk the even grid sizes inside the scale window, shifting work between the
// pair pipelines and the grid side, and keep the operating point whose slower
// card row is fastest. Ties keep the smaller cutoff (more headroom on the PP
// cards' shell import).
BalanceResult balance_load(const MdSystem& system, const NodeConfig& node,
                           const BalanceOptions& options = {});

}  // namespace mddse
