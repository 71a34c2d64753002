#include "doctest.h"

#include <algorithm>

#include "json.hpp"
#include "mddse/config.hpp"
#include "mddse/errors.hpp"
#include "mddse/report.hpp"
#include "mddse/schedule.hpp"

using namespace mddse;

namespace {
const Catalog& cat() {
  static const Catalog c = builtin_catalog();
  return c;
}
}  // namespace

TEST_CASE("presets cover the five reference setups") {
  const auto& names = preset_names();
  CHECK(names.size() == 5);
  for (const char* expected : {"vcu1525-2lem", "xupp3r-vu9p-2lem", "xupp3r-vu13p-2lem",
                               "de10-pro-2lem", "f1-2lem"})
    CHECK(std::find(names.begin(), names.end(), expected) != names.end());
  CHECK_THROWS_AS(preset_config("voodoo2-2lem"), not_found_error);
}

TEST_CASE("resolving the VCU1525 preset binds counts, links and the balanced tuning") {
  const ResolvedNode r = resolve_node(cat(), preset_config("vcu1525-2lem"));
  CHECK(r.system.name == "2LEM-91k");
  CHECK(r.board.name == "VCU1525");
  CHECK(r.server.name == "SERVER-8XPCIE");
  CHECK(r.node.n_pp_cards == 7);
  CHECK(r.node.n_pme_cards == 1);
  CHECK(r.node.pp_pipelines_per_card == 66);
  CHECK(r.node.interpolators_per_card == 10);
  CHECK(r.node.fft_units_per_card == 64);
  CHECK(r.node.fmax_mhz == 400.0);
  CHECK(r.node.ring.raw_gbit == 200.0);
  CHECK(r.node.pcie.raw_gbit == 63.0);
  CHECK(r.node.pcie.efficiency == doctest::Approx(54.0 / 63.0));
  CHECK(r.node.sw_overhead_s == doctest::Approx(280e-6).epsilon(1e-12));
  CHECK(r.node.pp_utilization == 0.8);
  CHECK(r.tuned_from_balance);
  CHECK(r.tuned.grid == 80);
  CHECK(r.tuned.cutoff_a == doctest::Approx(12.6).epsilon(1e-12));
}

TEST_CASE("the cloud preset keeps its published mix despite the tighter budget") {
  // 58 pipelines and 9 interpolators exceed the card's packing budget slice
  // but still fit the raw device; explicit counts are taken as-is.
  const ResolvedNode r = resolve_node(cat(), preset_config("f1-2lem"));
  CHECK(r.node.pp_pipelines_per_card == 58);
  CHECK(r.node.interpolators_per_card == 9);
  CHECK(r.node.sw_overhead_s == doctest::Approx(175e-6).epsilon(1e-12));  // 64 vCPUs
  CHECK(!budget_violation(cat(), r.board, r.pme_alloc).empty());
}

TEST_CASE("zero counts fall back to packing") {
  EstimateConfig c;
  c.system = "2LEM-91k";
  c.node.server = "SERVER-8XPCIE";
  c.node.board = "VCU1525";
  const ResolvedNode r = resolve_node(cat(), c);
  CHECK(r.node.pp_pipelines_per_card == 66);
  CHECK(r.node.interpolators_per_card == 10);
  CHECK(r.node.fft_units_per_card == 64);
}

TEST_CASE("config parsing is strict about keys and required fields") {
  CHECK_THROWS_AS(estimate_config_from_json_text("{", "x"), config_error);
  CHECK_THROWS_AS(estimate_config_from_json_text("[]", "x"), config_error);
  CHECK_THROWS_AS(estimate_config_from_json_text(R"({"node": {}})", "x"), config_error);
  CHECK_THROWS_AS(estimate_config_from_json_text(R"({"system": "2LEM-91k"})", "x"),
                  config_error);
  CHECK_THROWS_AS(estimate_config_from_json_text(
                      R"({"system": "2LEM-91k", "node": {"server": "s"}})", "x"),
                  config_error);
  CHECK_THROWS_AS(
      estimate_config_from_json_text(
          R"({"system": "2LEM-91k", "typo": 1,
              "node": {"server": "SERVER-8XPCIE", "board": "VCU1525"}})",
          "x"),
      config_error);
  CHECK_THROWS_AS(
      estimate_config_from_json_text(
          R"({"system": "2LEM-91k",
              "node": {"server": "SERVER-8XPCIE", "board": "VCU1525", "slots": 3}})",
          "x"),
      config_error);
  CHECK_THROWS_AS(
      estimate_config_from_json_text(
          R"({"system": "2LEM-91k", "tuned": {"cutoff_a": 12.0},
              "node": {"server": "SERVER-8XPCIE", "board": "VCU1525"}})",
          "x"),
      config_error);
}

TEST_CASE("resolution validates the node against the catalog") {
  EstimateConfig c;
  c.system = "2LEM-91k";
  c.node.server = "SERVER-8XPCIE";
  c.node.board = "VCU1525";

  SUBCASE("unknown names list the alternatives") {
    c.system = "9XYZ";
    try {
      resolve_node(cat(), c);
      FAIL("expected config_error");
    } catch (const config_error& e) {
      CHECK(std::string(e.what()).find("2LEM-91k") != std::string::npos);
    }
  }
  SUBCASE("only one PME card is supported") {
    c.node.n_pme_cards = 2;
    CHECK_THROWS_AS(resolve_node(cat(), c), config_error);
  }
  SUBCASE("cards must fit the server slots") {
    c.node.n_pp_cards = 8;  // 8 + 1 PME > 8 slots
    CHECK_THROWS_AS(resolve_node(cat(), c), infeasible_error);
  }
  SUBCASE("explicit counts must fit the raw device") {
    c.node.pp_pipelines_per_card = 90;  // 90 * 13.45 kLUT > 1182
    CHECK_THROWS_AS(resolve_node(cat(), c), infeasible_error);
  }
  SUBCASE("pinned tunings must respect the minimum-image bound") {
    c.tuned = TunedParams{50.0, 80};
    CHECK_THROWS_AS(resolve_node(cat(), c), config_error);
  }
}

TEST_CASE("the JSON estimate report round-trips through the config schema") {
  const Catalog& c = cat();
  const ResolvedNode r = resolve_node(c, preset_config("vcu1525-2lem"));
  const StepEstimate e = estimate_step(r.system, r.tuned, r.node);
  const std::string report = estimate_report_json(c, r, e);

  const nlohmann::json j = nlohmann::json::parse(report);
  REQUIRE(j.contains("config"));
  const EstimateConfig back = estimate_config_from_json_text(j.at("config").dump(), "embedded");
  const ResolvedNode r2 = resolve_node(c, back);
  const StepEstimate e2 = estimate_step(r2.system, r2.tuned, r2.node);
  CHECK(e2.total_s == e.total_s);
  CHECK(e2.ns_per_day == e.ns_per_day);
  CHECK(r2.tuned.grid == r.tuned.grid);
  CHECK(r2.tuned.cutoff_a == r.tuned.cutoff_a);
  CHECK(j.at("ns_per_day").get<double>() == e.ns_per_day);
}

TEST_CASE("pareto scenarios: parsing enforces exactly-one-of") {
  const auto parse = [](const std::string& scenarios) {
    return pareto_config_from_json_text(R"({"scenarios": [)" + scenarios + "]}", "t");
  };
  CHECK_NOTHROW(parse(
      R"({"label": "a", "family": "cloud",
          "cost": {"instance": "p3.2xlarge"}, "performance": {"ns_per_day": 10}})"));
  // both cost forms at once
  CHECK_THROWS_AS(parse(R"({"label": "a", "family": "cloud",
       "cost": {"instance": "p3.2xlarge", "usd_per_hour": 1.0},
       "performance": {"ns_per_day": 10}})"),
                  config_error);
  // no cost form
  CHECK_THROWS_AS(parse(R"({"label": "a", "family": "cloud", "cost": {},
       "performance": {"ns_per_day": 10}})"),
                  config_error);
  // two performance forms
  CHECK_THROWS_AS(parse(R"({"label": "a", "family": "cloud",
       "cost": {"usd_per_hour": 1.0},
       "performance": {"ns_per_day": 10, "estimate_preset": "vcu1525-2lem"}})"),
                  config_error);
  // factor without relative_to
  CHECK_THROWS_AS(parse(R"({"label": "a", "family": "cloud",
       "cost": {"usd_per_hour": 1.0}, "performance": {"factor": 1.2}})"),
                  config_error);
  // unknown scenario key
  CHECK_THROWS_AS(parse(R"({"label": "a", "family": "cloud", "color": "red",
       "cost": {"usd_per_hour": 1.0}, "performance": {"ns_per_day": 10}})"),
                  config_error);
  CHECK_THROWS_AS(pareto_config_from_json_text(R"({"scenarios": []})", "t"), config_error);
}

TEST_CASE("scenario evaluation resolves costs, presets and relative performance") {
  const char* text = R"({
    "scenarios": [
      {"label": "fpga-node", "family": "fpga",
       "cost": {"node": {"server": "SERVER-8XPCIE",
                         "accelerators": [{"name": "VCU1525", "count": 8}]}},
       "performance": {"estimate_preset": "vcu1525-2lem"}},
      {"label": "gpu-box", "family": "gpu-gromacs",
       "cost": {"node": {"server": "SERVER-4XPCIE",
                         "accelerators": [{"name": "GTX1080Ti", "count": 4}]}},
       "performance": {"ns_per_day": 40.0}},
      {"label": "gpu-next", "family": "gpu-gromacs",
       "cost": {"node": {"server": "SERVER-4XPCIE",
                         "accelerators": [{"name": "V100-SMX2", "count": 1}]}},
       "performance": {"relative_to": "gpu-box", "factor": 1.5}},
      {"label": "rented", "family": "cloud",
       "cost": {"instance": "p3.8xlarge"},
       "performance": {"ns_per_day": 55.0}}
    ]})";
  const std::vector<ParetoPoint> points =
      evaluate_scenarios(cat(), pareto_config_from_json_text(text, "t"));
  REQUIRE(points.size() == 4);
  CHECK(points[0].label == "fpga-node");
  CHECK(points[0].usd_per_hour == doctest::Approx(1.5630593607).epsilon(1e-9));
  CHECK(points[0].ns_per_day == doctest::Approx(289.5337).epsilon(1e-5));
  CHECK(points[1].usd_per_hour == doctest::Approx(0.5457077626).epsilon(1e-9));
  CHECK(points[2].ns_per_day == doctest::Approx(60.0).epsilon(1e-12));
  CHECK(points[3].usd_per_hour == 13.22);
  CHECK(points[0].on_front);
  CHECK(points[1].on_front);
  CHECK(points[2].on_front);
  CHECK(!points[3].on_front);  // beaten by the FPGA node on both axes
}

TEST_CASE("scenario evaluation rejects duplicate and forward labels") {
  const char* dup = R"({"scenarios": [
    {"label": "a", "family": "cloud", "cost": {"usd_per_hour": 1.0},
     "performance": {"ns_per_day": 10}},
    {"label": "a", "family": "cloud", "cost": {"usd_per_hour": 2.0},
     "performance": {"ns_per_day": 20}}]})";
  CHECK_THROWS_AS(evaluate_scenarios(cat(), pareto_config_from_json_text(dup, "t")),
                  config_error);

  const char* forward = R"({"scenarios": [
    {"label": "a", "family": "cloud", "cost": {"usd_per_hour": 1.0},
     "performance": {"relative_to": "b", "factor": 2.0}},
    {"label": "b", "family": "cloud", "cost": {"usd_per_hour": 2.0},
     "performance": {"ns_per_day": 20}}]})";
  CHECK_THROWS_AS(evaluate_scenarios(cat(), pareto_config_from_json_text(forward, "t")),
                  config_error);
}

TEST_CASE("the bundled sweep example evaluates") {
  const ParetoConfig config = load_pareto_config(MDDSE_DATA_DIR "/pareto_example.json");
  const std::vector<ParetoPoint> points = evaluate_scenarios(cat(), config);
  CHECK(points.size() == config.scenarios.size());
  CHECK(std::any_of(points.begin(), points.end(),
                    [](const ParetoPoint& p) { return p.on_front; }));
}
