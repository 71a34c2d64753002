#include "mddse/cost.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "mddse/errors.hpp"

namespace mddse {

namespace {

struct HardwarePrice {
  double price_usd = 0.0;
  double power_kw = 0.0;
};

HardwarePrice accelerator_price(const Catalog& catalog, const std::string& name) {
  if (const auto b = catalog.boards.find(name); b != catalog.boards.end())
    return {b->second.price_usd, b->second.power_kw};
  if (const auto g = catalog.gpus.find(name); g != catalog.gpus.end())
    return {g->second.price_usd, g->second.power_kw};
  throw not_found_error("cost: no board or GPU named '" + name + "'");
}

}  // namespace

CostBreakdown node_cost_per_hour(const Catalog& catalog, const std::string& server,
                                 const std::vector<std::pair<std::string, int>>& accelerators,
                                 const std::optional<std::string>& license) {
  const auto server_it = catalog.servers.find(server);
  if (server_it == catalog.servers.end())
    throw not_found_error("cost: no server named '" + server + "'");
  const ServerSpec& host = server_it->second;
  const double hours = catalog.cost.amortization_hours();

  CostBreakdown c;
  c.capex_usd_per_hour = host.price_usd / hours;
  c.parts.push_back({host.name, 1, host.price_usd / hours});
  double power_kw = host.power_kw;
  int slots_used = 0;
  for (const auto& [name, count] : accelerators) {
    if (count < 1) throw std::invalid_argument("cost: accelerator count must be >= 1");
    const HardwarePrice hw = accelerator_price(catalog, name);
    c.capex_usd_per_hour += count * hw.price_usd / hours;
    c.parts.push_back({name, count, count * hw.price_usd / hours});
    power_kw += count * hw.power_kw;
    slots_used += count;
  }
  if (slots_used > host.pcie_slots)
    throw infeasible_error("cost: " + std::to_string(slots_used) + " accelerators exceed " +
                           host.name + "'s " + std::to_string(host.pcie_slots) + " slots");
  c.energy_usd_per_hour =
      power_kw * catalog.cost.electricity_usd_per_kwh * catalog.cost.cooling_multiplier;
  if (license) {
    const auto lic_it = catalog.licenses.find(*license);
    if (lic_it == catalog.licenses.end())
      throw not_found_error("cost: no license named '" + *license + "'");
    c.license_usd_per_hour = lic_it->second.price_usd / (lic_it->second.nodes_per_site * hours);
    c.parts.push_back({lic_it->second.name, 1, c.license_usd_per_hour});
  }
  c.total_usd_per_hour = c.capex_usd_per_hour + c.energy_usd_per_hour + c.license_usd_per_hour;
  return c;
}

CostBreakdown cloud_cost_per_hour(const Catalog& catalog, const std::string& instance) {
  const auto it = catalog.cloud_instances.find(instance);
  if (it == catalog.cloud_instances.end())
    throw not_found_error("cost: no cloud instance named '" + instance + "'");
  CostBreakdown c;
  c.cloud_usd_per_hour = it->second.price_usd_per_hour;
  c.total_usd_per_hour = c.cloud_usd_per_hour;
  c.parts.push_back({it->second.name, 1, c.cloud_usd_per_hour});
  return c;
}

const char* to_string(SolutionFamily family) {
  switch (family) {
    case SolutionFamily::Fpga: return "fpga";
    case SolutionFamily::GpuGromacs: return "gpu-gromacs";
    case SolutionFamily::GpuAmber: return "gpu-amber";
    case SolutionFamily::Cloud: return "cloud";
  }
  return "unknown";
}

SolutionFamily family_from_label(const std::string& label) {
  if (label == "fpga") return SolutionFamily::Fpga;
  if (label == "gpu-gromacs") return SolutionFamily::GpuGromacs;
  if (label == "gpu-amber") return SolutionFamily::GpuAmber;
  if (label == "cloud") return SolutionFamily::Cloud;
  throw not_found_error("unknown solution family '" + label +
                        "'; expected fpga, gpu-gromacs, gpu-amber or cloud");
}

void mark_pareto_front(std::vector<ParetoPoint>& points) {
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return points[a].usd_per_hour < points[b].usd_per_hour;
  });

  double best_cheaper = -1.0;  // best performance among strictly cheaper points
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    double group_best = -1.0;
    while (j < order.size() &&
           points[order[j]].usd_per_hour == points[order[i]].usd_per_hour) {
      group_best = std::max(group_best, points[order[j]].ns_per_day);
      ++j;
    }
    for (std::size_t k = i; k < j; ++k) {
      ParetoPoint& p = points[order[k]];
      p.on_front = p.ns_per_day == group_best && p.ns_per_day > best_cheaper;
    }
    best_cheaper = std::max(best_cheaper, group_best);
    i = j;
  }
}

std::vector<ParetoPoint> pareto_front(std::vector<ParetoPoint> points) {
  mark_pareto_front(points);
  std::erase_if(points, [](const ParetoPoint& p) { return !p.on_front; });
  std::stable_sort(points.begin(), points.end(), [](const ParetoPoint& a, const ParetoPoint& b) {
    return a.usd_per_hour < b.usd_per_hour;
  });
  return points;
}

}  // namespace mddse
