#include "doctest.h"

#include <stdexcept>

#include "mddse/catalog.hpp"
#include "mddse/errors.hpp"

using namespace mddse;

TEST_CASE("builtin catalog passes its own validation") {
  const auto violations = validate_catalog(builtin_catalog());
  for (const Violation& v : violations)
    MESSAGE(v.entity, ".", v.field, ": ", v.message);
  CHECK(violations.empty());
}

TEST_CASE("builtin catalog carries the reference hardware") {
  const Catalog c = builtin_catalog();
  CHECK(c.boards.size() == 5);
  CHECK(c.gpus.size() == 5);
  CHECK(c.servers.size() == 2);
  CHECK(c.cloud_instances.size() == 4);
  CHECK(c.licenses.size() == 1);
  CHECK(c.systems.size() == 3);

  const BoardSpec& vcu = c.boards.at("VCU1525");
  CHECK(vcu.device == "VU9P");
  CHECK(vcu.price_usd == 4500.0);
  CHECK(vcu.ring_raw_gbit == 200.0);
  CHECK(vcu.pcie_raw_gbit == 63.0);

  const FpgaDevice& vu9p = device_for_board(c, vcu);
  CHECK(vu9p.logic_capacity_klut == 1182.0);
  CHECK(vu9p.dsp_capacity == 6840.0);
  CHECK(vu9p.mem_capacity_mbit == doctest::Approx(345.9));
  CHECK(vu9p.fmax_mhz == 400.0);

  const MdSystem& lem = c.systems.at("2LEM-91k");
  CHECK(lem.n_particles == 91030);
  CHECK(lem.box_edge_a == 99.0);
  CHECK(lem.base_cutoff_a == 12.0);
  CHECK(lem.base_grid == 84);

  CHECK(c.pcie_link.efficiency == doctest::Approx(54.0 / 63.0));
  CHECK(c.pcie_link.latency_s == doctest::Approx(10e-6));
  CHECK(c.ring_link.efficiency == 0.85);
  CHECK(c.ring_link.latency_s == doctest::Approx(0.5e-6));
}

TEST_CASE("software overhead scales inversely with host threads") {
  const SwOverheadModel m = builtin_catalog().sw_overhead;
  CHECK(m.seconds_for(40) == doctest::Approx(280e-6).epsilon(1e-12));
  CHECK(m.seconds_for(64) == doctest::Approx(175e-6).epsilon(1e-12));
  CHECK(m.seconds_for(20) == doctest::Approx(560e-6).epsilon(1e-12));
  CHECK_THROWS_AS(m.seconds_for(0), std::invalid_argument);
}

TEST_CASE("catalog JSON serialization round-trips byte-identically") {
  const Catalog c = builtin_catalog();
  const std::string text = catalog_to_json_text(c);
  const Catalog parsed = catalog_from_json_text(text, "roundtrip");
  CHECK(catalog_to_json_text(parsed) == text);
  CHECK(validate_catalog(parsed).empty());
  CHECK(parsed.boards.at("DE10-PRO").device == "1SGX280");
  CHECK(parsed.derating.at({FpgaFamily::StratixIV, FpgaFamily::Stratix10}) == 1.18);
  CHECK(parsed.systems.at("2N5E-158k").n_particles == 157853);
}

TEST_CASE("catalog loader rejects unknown keys with their location") {
  const char* text = R"({"bogus_section": {}})";
  CHECK_THROWS_WITH_AS(catalog_from_json_text(text, "test.json"),
                       "test.json: unknown key 'bogus_section'", config_error);

  std::string full = catalog_to_json_text(builtin_catalog());
  const std::string needle = "\"VCU1525\": {";
  full.replace(full.find(needle), needle.size(), "\"VCU1525\": {\"surprise\": 1,");
  CHECK_THROWS_AS(catalog_from_json_text(full, "edited.json"), config_error);
}

TEST_CASE("catalog loader reports missing sections and bad values") {
  CHECK_THROWS_AS(catalog_from_json_text("{", "broken.json"), config_error);
  CHECK_THROWS_AS(catalog_from_json_text("[]", "broken.json"), config_error);
  CHECK_THROWS_AS(catalog_from_json_text("{}", "empty.json"), config_error);
  CHECK_THROWS_AS(load_catalog_file("/nonexistent/catalog.json"), config_error);
}

TEST_CASE("entry lookup is case and punctuation insensitive") {
  const Catalog c = builtin_catalog();
  CHECK(lookup_entry(c, "VCU1525").name == "VCU1525");
  CHECK(lookup_entry(c, "vcu1525").name == "VCU1525");
  CHECK(lookup_entry(c, "vcu-1525").name == "VCU1525");
  CHECK(lookup_entry(c, "1525").name == "VCU1525");
  CHECK(lookup_entry(c, "f1.2xlarge").name == "f1.2xlarge");
  CHECK(lookup_entry(c, "gtx1080ti").name == "GTX1080Ti");
  CHECK(lookup_entry(c, "amber").name == "AMBER-LICENSE");
  CHECK(lookup_entry(c, "XUPP3R-VU9P").name == "XUPP3R-VU9P");  // exact beats substring
}

TEST_CASE("ambiguous or unknown lookups fail with the candidate list") {
  const Catalog c = builtin_catalog();
  CHECK_THROWS_AS(lookup_entry(c, "xupp3r"), not_found_error);
  CHECK_THROWS_AS(lookup_entry(c, "no-such-card"), not_found_error);
  CHECK_THROWS_AS(lookup_entry(c, ". - ."), not_found_error);
  try {
    lookup_entry(c, "xupp3r");
  } catch (const not_found_error& e) {
    const std::string what = e.what();
    CHECK(what.find("XUPP3R-VU9P") != std::string::npos);
    CHECK(what.find("XUPP3R-VU13P") != std::string::npos);
  }
}

TEST_CASE("all_entries covers every priced record once") {
  const Catalog c = builtin_catalog();
  CHECK(all_entries(c).size() == c.boards.size() + c.gpus.size() + c.servers.size() +
                                     c.cloud_instances.size() + c.licenses.size());
}

TEST_CASE("family names round-trip") {
  for (FpgaFamily f : {FpgaFamily::StratixIV, FpgaFamily::StratixV, FpgaFamily::Stratix10,
                       FpgaFamily::VirtexUltraScalePlus}) {
    const auto back = family_from_string(to_string(f));
    REQUIRE(back.has_value());
    CHECK(*back == f);
  }
  CHECK(!family_from_string("virtex-4").has_value());
}

TEST_CASE("validation flags broken entries") {
  Catalog c = builtin_catalog();
  c.devices.at("VU9P").fmax_mhz = 2000.0;       // outside the plausible range
  c.systems.at("2LEM-91k").base_cutoff_a = 60;  // beyond box/2
  c.derating[{FpgaFamily::StratixIV, FpgaFamily::StratixIV}] = 1.1;  // same family must be 1
  const auto violations = validate_catalog(c);
  CHECK(violations.size() >= 3);
}
