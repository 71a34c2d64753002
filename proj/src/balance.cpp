#include "mddse/balance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mddse/errors.hpp"

namespace mddse {

BalanceResult balance_load(const MdSystem& system, const NodeConfig& node,
                           const BalanceOptions& options) {
  if (!(options.scale_min >= 0.5) || !(options.scale_max <= 2.0) ||
      !(options.scale_max >= options.scale_min))
    throw std::invalid_argument("balance: need 0.5 <= scale_min <= scale_max <= 2.0");
  if (system.base_grid < 2) throw std::invalid_argument("balance: system base grid must be >= 2");

  const auto slower_card = [](const StepEstimate& e) {
    return std::max(e.pp_with_h2d_s, e.pme_with_h2d_s);
  };
  BalanceResult result;
  bool have_best = false;
  // Even grids only; scale = base_grid / grid grows as the grid shrinks.
  for (int grid = system.base_grid - system.base_grid % 2; grid >= 2; grid -= 2) {
    const double scale = static_cast<double>(system.base_grid) / grid;
    if (scale < options.scale_min) continue;
    if (scale > options.scale_max) break;
    const double cutoff = system.base_cutoff_a * scale;
    if (cutoff >= system.box_edge_a / 2.0) break;  // minimum-image bound

    BalanceCandidate c;
    c.tuned = {cutoff, grid};
    c.estimate = estimate_step(system, c.tuned, node);
    result.evaluated.push_back(c);
    if (!have_best || slower_card(c.estimate) < slower_card(result.best.estimate)) {
      result.best = c;
      have_best = true;
    }
  }
  if (!have_best)
    throw infeasible_error("balance: no feasible (cutoff, grid) point in the scale window");
  return result;
}

}  // namespace mddse
