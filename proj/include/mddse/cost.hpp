#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mddse/catalog.hpp"

namespace mddse {

struct PricedComponent {
  std::string name;
  int count = 1;
  double usd_per_hour = 0.0;  // this component's total contribution
};

struct CostBreakdown {
  double capex_usd_per_hour = 0.0;
  double energy_usd_per_hour = 0.0;
  double license_usd_per_hour = 0.0;
  double cloud_usd_per_hour = 0.0;
  double total_usd_per_hour = 0.0;
  std::vector<PricedComponent> parts;
};

// Owned hardware: purchase prices amortized over the catalog's service life,
// plus metered power with the cooling tax, plus any per-node license share.
CostBreakdown node_cost_per_hour(const Catalog& catalog, const std::string& server,
                                 const std::vector<std::pair<std::string, int>>& accelerators,
                                 const std::optional<std::string>& license = std::nullopt);

// Rented hardware: the listed hourly rate is all-in.
CostBreakdown cloud_cost_per_hour(const Catalog& catalog, const std::string& instance);

enum class SolutionFamily { Fpga, GpuGromacs, GpuAmber, Cloud };
const char* to_string(SolutionFamily family);
SolutionFamily family_from_label(const std::string& label);

struct ParetoPoint {
  std::string label;
  SolutionFamily family = SolutionFamily::Fpga;
  double ns_per_day = 0.0;
  double usd_per_hour = 0.0;
  bool on_front = false;
};

// Mark the points no other point beats on both axes. Equal-cost groups keep
// only their best performer; exact duplicates stay on the front together.
void mark_pareto_front(std::vector<ParetoPoint>& points);

// The front itself, cheapest first.
std::vector<ParetoPoint> pareto_front(std::vector<ParetoPoint> points);

}  // namespace mddse
