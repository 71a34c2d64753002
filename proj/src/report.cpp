#include "mddse/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "mddse/errors.hpp"
#include "mddse/resource.hpp"

namespace mddse {

using nlohmann::json;

namespace {

std::string printf_str(const char* fmt, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, value);
  return buf;
}

std::string pad_left(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

std::string pad_right(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

}  // namespace

std::string format_us(double seconds) { return printf_str("%.1f", seconds * 1e6); }
std::string format_ns_per_day(double ns_per_day) { return printf_str("%.1f", ns_per_day); }
std::string format_usd(double usd) { return printf_str("%.4f", usd); }
std::string format_percent(double fraction) { return printf_str("%.1f%%", fraction * 100.0); }

std::string estimate_report_text(const Catalog& catalog, const ResolvedNode& resolved,
                                 const StepEstimate& estimate) {
  const FpgaDevice& device = device_for_board(catalog, resolved.board);
  const PpMemoryBreakdown pp_mem = pp_card_memory(
      catalog, resolved.system, resolved.tuned.cutoff_a, resolved.node.n_pp_cards,
      resolved.node.pp_pipelines_per_card);
  const double pme_mem =
      pme_card_memory_mbit(catalog, resolved.tuned.grid, resolved.node.fft_units_per_card);

  std::ostringstream out;
  out << "System        " << resolved.system.name << " (" << resolved.system.n_particles
      << " particles, box " << printf_str("%.1f", resolved.system.box_edge_a) << " A, "
      << printf_str("%.1f", resolved.system.timestep_fs) << " fs steps)\n";
  out << "Node          " << resolved.node.n_pp_cards << " PP + " << resolved.node.n_pme_cards
      << " PME x " << resolved.board.name << " (" << device.name << " @ "
      << printf_str("%.0f", resolved.node.fmax_mhz) << " MHz) in " << resolved.server.name
      << "\n";
  out << "Units/card    " << resolved.node.pp_pipelines_per_card << " PP pipelines | "
      << resolved.node.interpolators_per_card << " interpolators + "
      << resolved.node.fft_units_per_card << " FFT units\n";
  out << "Cutoff [A]    " << printf_str("%.1f", resolved.tuned.cutoff_a)
      << (resolved.tuned_from_balance ? "  (balanced)" : "") << "\n";
  out << "PME grid      " << resolved.tuned.grid << "^3\n";
  out << "\n";
  out << "Resource use per card (of " << printf_str("%.0f", device.logic_capacity_klut)
      << " kLUT, " << printf_str("%.0f", device.dsp_capacity) << " DSP, "
      << printf_str("%.1f", device.mem_capacity_mbit) << " Mbit)\n";
  const auto resource_row = [&](const char* label, const UnitAllocation& alloc,
                                double mem_mbit) {
    std::ostringstream row;
    row << "  " << pad_right(label, 5) << "logic " << printf_str("%.1f", alloc.logic_used_klut)
        << " kLUT (" << format_percent(alloc.logic_used_klut / device.logic_capacity_klut)
        << ")  dsp " << printf_str("%.0f", alloc.dsp_used) << " ("
        << format_percent(alloc.dsp_used / device.dsp_capacity) << ")  mem "
        << printf_str("%.1f", mem_mbit) << " Mbit ("
        << format_percent(mem_mbit / device.mem_capacity_mbit) << ")\n";
    return row.str();
  };
  out << resource_row("PP", resolved.pp_alloc, pp_mem.total_mbit);
  out << resource_row("PME", resolved.pme_alloc, pme_mem);
  out << "\n";
  out << "Step time [us]\n";
  const auto time_row = [&](const char* label, double seconds) {
    std::ostringstream row;
    row << "  " << pad_right(label, 16) << pad_left(format_us(seconds), 7) << "\n";
    return row.str();
  };
  out << time_row("PME + H2D", estimate.pme_with_h2d_s);
  out << time_row("PP + H2D", estimate.pp_with_h2d_s);
  out << time_row("PP/PME + D2H", estimate.critical_with_d2h_s);
  out << time_row("SW overhead", estimate.sw_overhead_s);
  out << time_row("Total", estimate.total_s);
  out << "\n";
  out << "Performance   " << format_ns_per_day(estimate.ns_per_day) << " ns/day\n";
  return out.str();
}

std::string estimate_report_json(const Catalog& catalog, const ResolvedNode& resolved,
                                 const StepEstimate& estimate) {
  const PpMemoryBreakdown pp_mem = pp_card_memory(
      catalog, resolved.system, resolved.tuned.cutoff_a, resolved.node.n_pp_cards,
      resolved.node.pp_pipelines_per_card);
  const double pme_mem =
      pme_card_memory_mbit(catalog, resolved.tuned.grid, resolved.node.fft_units_per_card);

  json j;
  // This block parses back as an estimate config and resolves to the same run.
  j["config"] = {
      {"system", resolved.system.name},
      {"node",
       {{"server", resolved.server.name},
        {"board", resolved.board.name},
        {"n_pp_cards", resolved.node.n_pp_cards},
        {"n_pme_cards", resolved.node.n_pme_cards},
        {"pp_pipelines_per_card", resolved.node.pp_pipelines_per_card},
        {"interpolators_per_card", resolved.node.interpolators_per_card},
        {"fft_units_per_card", resolved.node.fft_units_per_card}}},
      {"tuned", {{"cutoff_a", resolved.tuned.cutoff_a}, {"grid", resolved.tuned.grid}}},
      {"sw_overhead_us", resolved.node.sw_overhead_s * 1e6},
      {"pp_utilization", resolved.node.pp_utilization},
  };
  j["tuned_from_balance"] = resolved.tuned_from_balance;
  j["resources"] = {
      {"pp",
       {{"logic_klut", resolved.pp_alloc.logic_used_klut},
        {"dsp", resolved.pp_alloc.dsp_used},
        {"mem_mbit", pp_mem.total_mbit}}},
      {"pme",
       {{"logic_klut", resolved.pme_alloc.logic_used_klut},
        {"dsp", resolved.pme_alloc.dsp_used},
        {"mem_mbit", pme_mem}}},
  };
  j["step_us"] = {
      {"pme_with_h2d", estimate.pme_with_h2d_s * 1e6},
      {"pp_with_h2d", estimate.pp_with_h2d_s * 1e6},
      {"critical_with_d2h", estimate.critical_with_d2h_s * 1e6},
      {"d2h", estimate.d2h_s * 1e6},
      {"sw_overhead", estimate.sw_overhead_s * 1e6},
      {"total", estimate.total_s * 1e6},
  };
  j["ns_per_day"] = estimate.ns_per_day;
  return j.dump(2) + "\n";
}

std::string balance_report_text(const ResolvedNode& resolved, const BalanceResult& result) {
  std::ostringstream out;
  out << "Balancing " << resolved.system.name << " on " << resolved.node.n_pp_cards << " PP + "
      << resolved.node.n_pme_cards << " PME x " << resolved.board.name << "\n\n";
  out << "  cutoff[A]  grid   PP+H2D[us]  PME+H2D[us]  slower[us]\n";
  for (const BalanceCandidate& c : result.evaluated) {
    const bool chosen = c.tuned.grid == result.best.tuned.grid;
    out << (chosen ? "> " : "  ") << pad_left(printf_str("%.2f", c.tuned.cutoff_a), 9) << "  "
        << pad_left(std::to_string(c.tuned.grid), 4) << "  "
        << pad_left(format_us(c.estimate.pp_with_h2d_s), 10) << "  "
        << pad_left(format_us(c.estimate.pme_with_h2d_s), 11) << "  "
        << pad_left(format_us(std::max(c.estimate.pp_with_h2d_s, c.estimate.pme_with_h2d_s)), 10)
        << "\n";
  }
  out << "\nChosen: cutoff " << printf_str("%.2f", result.best.tuned.cutoff_a) << " A, grid "
      << result.best.tuned.grid << "^3, total " << format_us(result.best.estimate.total_s)
      << " us, " << format_ns_per_day(result.best.estimate.ns_per_day) << " ns/day\n";
  return out.str();
}

std::string pareto_csv(const std::vector<ParetoPoint>& points) {
  std::ostringstream out;
  out << "label,family,ns_per_day,usd_per_hour,on_front\n";
  for (const ParetoPoint& p : points) {
    out << p.label << "," << to_string(p.family) << "," << format_ns_per_day(p.ns_per_day) << ","
        << format_usd(p.usd_per_hour) << "," << (p.on_front ? "true" : "false") << "\n";
  }
  return out.str();
}

std::string pareto_text(const std::vector<ParetoPoint>& points) {
  std::size_t label_width = 5;
  for (const ParetoPoint& p : points) label_width = std::max(label_width, p.label.size());
  std::ostringstream out;
  out << pad_right("label", label_width) << "  " << pad_right("family", 11) << "  "
      << pad_left("ns/day", 8) << "  " << pad_left("USD/h", 9) << "  front\n";
  for (const ParetoPoint& p : points) {
    out << pad_right(p.label, label_width) << "  " << pad_right(to_string(p.family), 11) << "  "
        << pad_left(format_ns_per_day(p.ns_per_day), 8) << "  "
        << pad_left(format_usd(p.usd_per_hour), 9) << "  " << (p.on_front ? "yes" : "-") << "\n";
  }
  return out.str();
}

namespace {

const char* family_color(SolutionFamily family) {
  switch (family) {
    case SolutionFamily::Fpga: return "#2563eb";
    case SolutionFamily::GpuGromacs: return "#16a34a";
    case SolutionFamily::GpuAmber: return "#ea580c";
    case SolutionFamily::Cloud: return "#9333ea";
  }
  return "#444444";
}

double nice_round_down(double value) {
  if (value <= 0) return 1.0;
  const double mag = std::pow(10.0, std::floor(std::log10(value)));
  for (double m : {5.0, 2.0, 1.0})
    if (mag * m <= value) return mag * m;
  return mag;
}

}  // namespace

std::string pareto_svg(const std::vector<ParetoPoint>& points) {
  if (points.empty()) throw std::invalid_argument("pareto_svg: no points");
  const double width = 760, height = 520;
  const double ml = 70, mr = 30, mt = 40, mb = 60;
  const double plot_w = width - ml - mr, plot_h = height - mt - mb;

  double max_cost = 0, max_perf = 0;
  for (const ParetoPoint& p : points) {
    max_cost = std::max(max_cost, p.usd_per_hour);
    max_perf = std::max(max_perf, p.ns_per_day);
  }
  max_cost = max_cost <= 0 ? 1.0 : max_cost * 1.1;
  max_perf = max_perf <= 0 ? 1.0 : max_perf * 1.1;

  const auto x_of = [&](double usd) { return ml + usd / max_cost * plot_w; };
  const auto y_of = [&](double perf) { return mt + plot_h - perf / max_perf * plot_h; };
  const auto num = [](double v) { return printf_str("%.2f", v); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << width << " " << height
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
  svg << "<text x=\"" << num(ml) << "\" y=\"24\" font-size=\"15\" fill=\"#111\">"
      << "Throughput vs hourly cost (diagonals: constant ns/day per USD/h)</text>\n";

  // Iso-efficiency guides through the origin.
  const double eff_max = max_perf / (max_cost > 0 ? max_cost : 1.0);
  double eff = nice_round_down(eff_max * 4.0);
  for (int i = 0; i < 4; ++i, eff /= 2.0) {
    // Clip the ray y = eff*x to the plot box.
    double x_end = max_cost, y_end = eff * max_cost;
    if (y_end > max_perf) {
      y_end = max_perf;
      x_end = max_perf / eff;
    }
    svg << "<line x1=\"" << num(x_of(0)) << "\" y1=\"" << num(y_of(0)) << "\" x2=\""
        << num(x_of(x_end)) << "\" y2=\"" << num(y_of(y_end))
        << "\" stroke=\"#d4d4d4\" stroke-dasharray=\"4 3\"/>\n";
    svg << "<text x=\"" << num(x_of(x_end) - 4) << "\" y=\"" << num(y_of(y_end) + 14)
        << "\" fill=\"#999\" text-anchor=\"end\">" << printf_str("%.0f", eff) << "</text>\n";
  }

  // Axes with ticks.
  svg << "<line x1=\"" << num(ml) << "\" y1=\"" << num(mt + plot_h) << "\" x2=\""
      << num(ml + plot_w) << "\" y2=\"" << num(mt + plot_h) << "\" stroke=\"#333\"/>\n";
  svg << "<line x1=\"" << num(ml) << "\" y1=\"" << num(mt) << "\" x2=\"" << num(ml) << "\" y2=\""
      << num(mt + plot_h) << "\" stroke=\"#333\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double cost = max_cost * i / 5.0;
    const double perf = max_perf * i / 5.0;
    svg << "<line x1=\"" << num(x_of(cost)) << "\" y1=\"" << num(mt + plot_h) << "\" x2=\""
        << num(x_of(cost)) << "\" y2=\"" << num(mt + plot_h + 5) << "\" stroke=\"#333\"/>\n";
    svg << "<text x=\"" << num(x_of(cost)) << "\" y=\"" << num(mt + plot_h + 20)
        << "\" text-anchor=\"middle\" fill=\"#333\">" << printf_str("%.2f", cost) << "</text>\n";
    svg << "<line x1=\"" << num(ml - 5) << "\" y1=\"" << num(y_of(perf)) << "\" x2=\"" << num(ml)
        << "\" y2=\"" << num(y_of(perf)) << "\" stroke=\"#333\"/>\n";
    svg << "<text x=\"" << num(ml - 8) << "\" y=\"" << num(y_of(perf) + 4)
        << "\" text-anchor=\"end\" fill=\"#333\">" << printf_str("%.0f", perf) << "</text>\n";
  }
  svg << "<text x=\"" << num(ml + plot_w / 2) << "\" y=\"" << num(height - 16)
      << "\" text-anchor=\"middle\" fill=\"#333\">cost [USD/h]</text>\n";
  svg << "<text x=\"18\" y=\"" << num(mt + plot_h / 2)
      << "\" text-anchor=\"middle\" fill=\"#333\" transform=\"rotate(-90 18 "
      << num(mt + plot_h / 2) << ")\">throughput [ns/day]</text>\n";

  // The front, cheapest to fastest, as a guide polyline.
  std::vector<const ParetoPoint*> front;
  for (const ParetoPoint& p : points)
    if (p.on_front) front.push_back(&p);
  std::stable_sort(front.begin(), front.end(), [](const ParetoPoint* a, const ParetoPoint* b) {
    return a->usd_per_hour < b->usd_per_hour;
  });
  if (front.size() > 1) {
    svg << "<polyline fill=\"none\" stroke=\"#111\" stroke-width=\"1\" points=\"";
    for (const ParetoPoint* p : front)
      svg << num(x_of(p->usd_per_hour)) << "," << num(y_of(p->ns_per_day)) << " ";
    svg << "\"/>\n";
  }

  for (const ParetoPoint& p : points) {
    const double x = x_of(p.usd_per_hour), y = y_of(p.ns_per_day);
    svg << "<circle cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"5\" fill=\""
        << (p.on_front ? family_color(p.family) : "white") << "\" stroke=\""
        << family_color(p.family) << "\" stroke-width=\"1.5\"/>\n";
    svg << "<text x=\"" << num(x + 8) << "\" y=\"" << num(y - 6) << "\" fill=\"#333\">" << p.label
        << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string timeline_csv(const Timeline& timeline) {
  std::ostringstream out;
  out << "phase,resource,start_us,end_us\n";
  for (const ScheduledPhase& p : timeline.phases) {
    out << p.name << "," << p.resource << "," << printf_str("%.3f", p.start_s * 1e6) << ","
        << printf_str("%.3f", p.end_s * 1e6) << "\n";
  }
  return out.str();
}

std::string catalog_list_text(const Catalog& catalog) {
  static const char* kind_names[] = {"board", "gpu", "server", "cloud", "license"};
  std::ostringstream out;
  out << pad_right("kind", 8) << pad_right("name", 16) << pad_left("price", 12) << "  "
      << pad_right("power", 9) << "details\n";
  for (const CatalogEntry& e : all_entries(catalog)) {
    out << pad_right(kind_names[static_cast<int>(e.kind)], 8) << pad_right(e.name, 16)
        << pad_left(format_usd(e.price_usd) + (e.price_is_hourly ? "/h" : ""), 12) << "  "
        << pad_right(e.power_kw > 0 ? printf_str("%.2f kW", e.power_kw) : "-", 9) << e.details
        << "\n";
  }
  return out.str();
}

std::string catalog_show_text(const Catalog& catalog, const std::string& query) {
  const CatalogEntry e = lookup_entry(catalog, query);
  std::ostringstream out;
  const auto field = [&](const char* name, const std::string& value) {
    out << pad_right(name, 22) << value << "\n";
  };
  switch (e.kind) {
    case EntryKind::Board: {
      const BoardSpec& b = catalog.boards.at(e.name);
      const FpgaDevice& d = device_for_board(catalog, b);
      field("board", b.name);
      field("device", d.name + std::string(" (") + to_string(d.family) + ")");
      field("price", format_usd(b.price_usd) + " USD");
      field("power", printf_str("%.2f kW", b.power_kw));
      field("ring raw", printf_str("%.0f Gbit/s", b.ring_raw_gbit));
      field("pcie raw", printf_str("%.0f Gbit/s", b.pcie_raw_gbit));
      field("logic budget", format_percent(b.usable_logic_fraction));
      field("fft block", std::to_string(b.pme_fft_units) + " units");
      field("logic capacity", printf_str("%.0f kLUT", d.logic_capacity_klut));
      field("dsp capacity", printf_str("%.0f", d.dsp_capacity));
      field("mem capacity", printf_str("%.1f Mbit", d.mem_capacity_mbit));
      field("fmax", printf_str("%.0f MHz", d.fmax_mhz));
      if (!b.details.empty()) field("details", b.details);
      break;
    }
    case EntryKind::Gpu: {
      const GpuBoardSpec& g = catalog.gpus.at(e.name);
      field("gpu", g.name);
      field("price", format_usd(g.price_usd) + " USD");
      field("power", printf_str("%.2f kW", g.power_kw));
      if (!g.generation.empty()) field("generation", g.generation);
      break;
    }
    case EntryKind::Server: {
      const ServerSpec& s = catalog.servers.at(e.name);
      field("server", s.name);
      field("price", format_usd(s.price_usd) + " USD");
      field("power", printf_str("%.2f kW", s.power_kw));
      field("pcie slots", std::to_string(s.pcie_slots));
      field("vcpus", std::to_string(s.vcpus));
      if (!s.details.empty()) field("details", s.details);
      break;
    }
    case EntryKind::CloudInstance: {
      const CloudInstanceSpec& i = catalog.cloud_instances.at(e.name);
      field("instance", i.name);
      field("price", format_usd(i.price_usd_per_hour) + " USD/h");
      field("vcpus", std::to_string(i.vcpus));
      if (!i.accelerators.empty()) field("accelerators", i.accelerators);
      break;
    }
    case EntryKind::License: {
      const LicenseSpec& l = catalog.licenses.at(e.name);
      field("license", l.name);
      field("price", format_usd(l.price_usd) + " USD");
      field("nodes per site", std::to_string(l.nodes_per_site));
      field("per node hourly",
            format_usd(l.price_usd / (l.nodes_per_site * catalog.cost.amortization_hours())) +
                " USD/h");
      break;
    }
  }
  return out.str();
}

std::string walltime_json(const WalltimeBreakdown& breakdown, double non_hideable_fraction,
                          const std::vector<std::string>& applied_categories) {
  json j;
  j["scenario"] = breakdown.scenario;
  j["entries"] = json::array();
  for (const WalltimeEntry& e : breakdown.entries)
    j["entries"].push_back({{"category", e.category}, {"percent", e.percent}});
  j["sum_percent"] = breakdown.sum_percent();
  j["non_hideable"] = {{"categories", applied_categories},
                       {"fraction", non_hideable_fraction}};
  return j.dump(2) + "\n";
}

}  // namespace mddse
