#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mddse/balance.hpp"
#include "mddse/catalog.hpp"
#include "mddse/config.hpp"
#include "mddse/des.hpp"
#include "mddse/errors.hpp"
#include "mddse/ingest.hpp"
#include "mddse/report.hpp"
#include "mddse/schedule.hpp"

namespace {

using namespace mddse;

Catalog load_catalog_or_builtin(const std::string& path) {
  if (path.empty()) return builtin_catalog();
  return load_catalog_file(path);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw config_error(path, "cannot open for writing");
  out << content;
  if (!out) throw config_error(path, "write failed");
}

EstimateConfig config_from_flags(const std::string& preset, const std::string& config_path) {
  if (!preset.empty() && !config_path.empty())
    throw config_error("estimate", "--preset and --config are mutually exclusive");
  if (!preset.empty()) return preset_config(preset);
  if (!config_path.empty()) return load_estimate_config(config_path);
  std::ostringstream names;
  for (const std::string& n : preset_names()) names << "\n  " << n;
  throw config_error("estimate", "need --preset or --config; presets:" + names.str());
}

std::set<std::string> split_categories(const std::string& list) {
  std::set<std::string> out;
  std::string item;
  std::istringstream in(list);
  while (std::getline(in, item, ',')) {
    const auto a = item.find_first_not_of(" \t");
    if (a == std::string::npos) continue;
    const auto b = item.find_last_not_of(" \t");
    out.insert(item.substr(a, b - a + 1));
  }
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"Analytical performance and cost exploration for accelerated MD nodes"};
  app.require_subcommand(1);
  std::string catalog_path;
  app.add_option("--catalog", catalog_path, "Catalog JSON overriding the built-in records")
      ->check(CLI::ExistingFile);

  // estimate
  auto* estimate_cmd = app.add_subcommand("estimate", "Per-step timing for one node setup");
  std::string est_preset, est_config, timeline_path;
  bool est_json = false;
  estimate_cmd->add_option("--preset", est_preset, "Built-in node setup by name");
  estimate_cmd->add_option("--config", est_config, "Node setup JSON file")
      ->check(CLI::ExistingFile);
  estimate_cmd->add_flag("--json", est_json, "Machine-readable report");
  estimate_cmd->add_option("--timeline", timeline_path,
                           "Also write the simulated per-phase schedule as CSV");

  // balance
  auto* balance_cmd =
      app.add_subcommand("balance", "Retune cutoff/grid until neither card side dominates");
  std::string bal_preset, bal_config;
  balance_cmd->add_option("--preset", bal_preset, "Built-in node setup by name");
  balance_cmd->add_option("--config", bal_config, "Node setup JSON file")
      ->check(CLI::ExistingFile);

  // pareto
  auto* pareto_cmd = app.add_subcommand("pareto", "Performance vs cost over a scenario list");
  std::string pareto_config_path, csv_path, svg_path;
  pareto_cmd->add_option("--config", pareto_config_path, "Scenario list JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  pareto_cmd->add_option("--csv", csv_path, "Write the points as CSV");
  pareto_cmd->add_option("--svg", svg_path, "Write a scatter plot");

  // ingest-log
  auto* ingest_cmd =
      app.add_subcommand("ingest-log", "Parse a walltime split and compute the serial overhead");
  std::string ingest_file, categories_arg;
  double step_us = 0.0;
  ingest_cmd->add_option("file", ingest_file, "Walltime table (category ... percent per line)")
      ->required()
      ->check(CLI::ExistingFile);
  ingest_cmd->add_option("--categories", categories_arg,
                         "Comma-separated categories to sum (default: the serial set, "
                         "restricted to categories the table reports)");
  ingest_cmd->add_option("--step-us", step_us,
                         "Reference step time; adds the overhead in microseconds");

  // catalog
  auto* catalog_cmd = app.add_subcommand("catalog", "Inspect the hardware records");
  catalog_cmd->require_subcommand(1);
  auto* cat_list = catalog_cmd->add_subcommand("list", "All priced entries, one line each");
  std::string show_query;
  auto* cat_show = catalog_cmd->add_subcommand("show", "Every field of one entry");
  cat_show->add_option("name", show_query, "Entry name (case/punctuation-insensitive)")
      ->required();
  auto* cat_dump = catalog_cmd->add_subcommand("dump", "Full catalog as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // help text, exit 0
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the usage message
    return 1;
  }

  const Catalog catalog = load_catalog_or_builtin(catalog_path);

  if (*estimate_cmd) {
    const EstimateConfig config = config_from_flags(est_preset, est_config);
    const ResolvedNode resolved = resolve_node(catalog, config);
    const StepEstimate estimate =
        estimate_step(resolved.system, resolved.tuned, resolved.node);
    if (!timeline_path.empty()) {
      const Timeline timeline =
          simulate_schedule(build_step_graph(resolved.system, resolved.tuned, resolved.node));
      write_file(timeline_path, timeline_csv(timeline));
    }
    std::cout << (est_json ? estimate_report_json(catalog, resolved, estimate)
                           : estimate_report_text(catalog, resolved, estimate));
    return 0;
  }

  if (*balance_cmd) {
    EstimateConfig config = config_from_flags(bal_preset, bal_config);
    config.tuned.reset();  // always search, even if the config pins parameters
    const ResolvedNode resolved = resolve_node(catalog, config);
    const BalanceResult result =
        balance_load(resolved.system, resolved.node, config.balance);
    std::cout << balance_report_text(resolved, result);
    return 0;
  }

  if (*pareto_cmd) {
    const ParetoConfig config = load_pareto_config(pareto_config_path);
    const std::vector<ParetoPoint> points = evaluate_scenarios(catalog, config);
    if (!csv_path.empty()) write_file(csv_path, pareto_csv(points));
    if (!svg_path.empty()) write_file(svg_path, pareto_svg(points));
    std::cout << pareto_text(points);
    return 0;
  }

  if (*ingest_cmd) {
    const WalltimeBreakdown breakdown = load_walltime_file(ingest_file);
    std::set<std::string> categories;
    if (!categories_arg.empty()) {
      categories = split_categories(categories_arg);  // strict: all must be present
    } else {
      std::set<std::string> present;
      for (const WalltimeEntry& e : breakdown.entries) present.insert(e.category);
      for (const std::string& c : default_non_hideable_categories())
        if (present.count(c)) categories.insert(c);
    }
    const double fraction = overhead_fraction(breakdown, categories);
    std::cout << walltime_json(breakdown, fraction,
                               {categories.begin(), categories.end()});
    if (step_us > 0.0)
      std::cout << "overhead: " << format_us(overhead_seconds(fraction, step_us * 1e-6))
                << " us of " << format_us(step_us * 1e-6) << " us\n";
    return 0;
  }

  if (*cat_list) {
    std::cout << catalog_list_text(catalog);
    return 0;
  }
  if (*cat_show) {
    std::cout << catalog_show_text(catalog, show_query);
    return 0;
  }
  if (*cat_dump) {
    std::cout << catalog_to_json_text(catalog);
    return 0;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
