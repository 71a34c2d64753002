#include "mddse/des.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "mddse/errors.hpp"

namespace mddse {

void PhaseGraph::add(std::string name, double duration_s, std::string resource,
                     std::vector<std::string> deps) {
  phases.push_back({std::move(name), duration_s, std::move(resource), std::move(deps)});
}

Timeline simulate_schedule(const PhaseGraph& graph) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < graph.phases.size(); ++i) {
    const Phase& p = graph.phases[i];
    if (p.duration_s < 0)
      throw std::invalid_argument("phase '" + p.name + "' has negative duration");
    if (!index.emplace(p.name, i).second)
      throw std::invalid_argument("duplicate phase name '" + p.name + "'");
  }
  for (const Phase& p : graph.phases)
    for (const std::string& d : p.deps)
      if (!index.count(d))
        throw not_found_error("phase '" + p.name + "' depends on unknown phase '" + d + "'");

  std::vector<double> end_time(graph.phases.size(), 0.0);
  std::vector<bool> done(graph.phases.size(), false);
  std::map<std::string, double> resource_free;
  Timeline timeline;
  timeline.phases.resize(graph.phases.size());

  for (std::size_t scheduled = 0; scheduled < graph.phases.size(); ++scheduled) {
    // Pick the ready phase with the earliest feasible start.
    std::size_t best = graph.phases.size();
    double best_start = 0.0, best_ready = 0.0;
    for (std::size_t i = 0; i < graph.phases.size(); ++i) {
      if (done[i]) continue;
      const Phase& p = graph.phases[i];
      double ready = 0.0;
      bool deps_done = true;
      for (const std::string& d : p.deps) {
        const std::size_t di = index.at(d);
        if (!done[di]) {
          deps_done = false;
          break;
        }
        ready = std::max(ready, end_time[di]);
      }
      if (!deps_done) continue;
      double start = ready;
      if (!p.resource.empty()) {
        const auto it = resource_free.find(p.resource);
        if (it != resource_free.end()) start = std::max(start, it->second);
      }
      if (best == graph.phases.size() || start < best_start ||
          (start == best_start && ready < best_ready)) {
        best = i;
        best_start = start;
        best_ready = ready;
      }
    }
    if (best == graph.phases.size()) {
      for (std::size_t i = 0; i < graph.phases.size(); ++i)
        if (!done[i])
          throw graph_cycle_error("dependency cycle involving phase '" + graph.phases[i].name +
                                  "'");
    }
    const Phase& p = graph.phases[best];
    const double end = best_start + p.duration_s;
    done[best] = true;
    end_time[best] = end;
    if (!p.resource.empty()) resource_free[p.resource] = end;
    timeline.phases[best] = {p.name, p.resource, best_start, end};
    timeline.makespan_s = std::max(timeline.makespan_s, end);
  }
  return timeline;
}

PhaseGraph build_step_graph(const MdSystem& system, const TunedParams& tuned,
                            const NodeConfig& node) {
  const PpTimeBreakdown pp = pp_card_time(system, tuned, node);
  const PmeTimeBreakdown pme = pme_card_time(system, tuned, node);
  const double d2h = d2h_time_s(system, node);

  PhaseGraph g;
  std::vector<std::string> all_d2h;
  for (int i = 0; i < node.n_pp_cards; ++i) {
    const std::string card = "pp" + std::to_string(i);
    g.add("h2d." + card, pp.h2d_s, "pcie." + card);
    g.add("pairs." + card, pp.compute_s, "card." + card, {"h2d." + card});
    g.add("halo." + card, pp.halo_s, "ring." + card, {"h2d." + card});
    // The last halo message's latency tail lands after both finish.
    g.add("halo_tail." + card, node.ring.latency_s, "ring." + card,
          {"pairs." + card, "halo." + card});
  }
  g.add("h2d.pme", pme.h2d_s, "pcie.pme");
  g.add("positions.pme", pme.positions_ring_s, "ring.pme");
  g.add("spread.pme", pme.spread_s, "card.pme", {"h2d.pme"});
  g.add("fft_fwd.pme", pme.fwd_fft_s, "card.pme", {"spread.pme", "positions.pme"});
  g.add("solve.pme", pme.solve_s, "card.pme", {"fft_fwd.pme"});
  g.add("fft_inv.pme", pme.inv_fft_s, "card.pme", {"solve.pme"});
  g.add("gather.pme", pme.gather_s, "card.pme", {"fft_inv.pme"});
  g.add("forces.pme", pme.forces_ring_s, "ring.pme", {"gather.pme"});
  for (int i = 0; i < node.n_pp_cards; ++i) {
    const std::string card = "pp" + std::to_string(i);
    g.add("d2h." + card, d2h, "pcie." + card, {"halo_tail." + card, "forces.pme"});
    all_d2h.push_back("d2h." + card);
  }
  g.add("host.bookkeeping", node.sw_overhead_s, "host", all_d2h);
  return g;
}

}  // namespace mddse
