#include "mddse/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <numeric>
#include <sstream>

#include "mddse/errors.hpp"

namespace mddse {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

double WalltimeBreakdown::sum_percent() const {
  return std::accumulate(entries.begin(), entries.end(), 0.0,
                         [](double acc, const WalltimeEntry& e) { return acc + e.percent; });
}

WalltimeBreakdown parse_walltime_table(std::istream& in, const std::string& source_name) {
  WalltimeBreakdown breakdown;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = source_name + ":" + std::to_string(line_no);

    if (line.rfind("Scenario:", 0) == 0) {
      breakdown.scenario = trim(line.substr(9));
      continue;
    }
    const auto split = line.find_last_of(" \t");
    if (split == std::string::npos)
      throw config_error(where, "expected '<category> <percent>'");
    const std::string category = trim(line.substr(0, split));
    const std::string number = trim(line.substr(split + 1));
    if (category.empty()) throw config_error(where, "empty category name");
    std::size_t consumed = 0;
    double percent = 0.0;
    try {
      percent = std::stod(number, &consumed);
    } catch (const std::exception&) {
      throw config_error(where, "'" + number + "' is not a number");
    }
    if (consumed != number.size()) throw config_error(where, "'" + number + "' is not a number");
    if (percent < 0.0 || percent > 100.0)
      throw config_error(where, "percent must lie in [0, 100]");
    const bool duplicate =
        std::any_of(breakdown.entries.begin(), breakdown.entries.end(),
                    [&](const WalltimeEntry& e) { return e.category == category; });
    if (duplicate) throw config_error(where, "duplicate category '" + category + "'");
    breakdown.entries.push_back({category, percent});
  }
  if (breakdown.entries.empty()) throw config_error(source_name, "no walltime entries found");
  return breakdown;
}

WalltimeBreakdown parse_walltime_text(const std::string& text, const std::string& source_name) {
  std::istringstream in(text);
  return parse_walltime_table(in, source_name);
}

WalltimeBreakdown load_walltime_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error(path, "cannot open walltime file");
  return parse_walltime_table(in, path);
}

const std::set<std::string>& default_non_hideable_categories() {
  static const std::set<std::string> categories = {
      "Domain decomp.", "Neighbor search", "Write traj.",
      "Update",         "Constraints",     "Comm. energies",
  };
  return categories;
}

double overhead_fraction(const WalltimeBreakdown& breakdown,
                         const std::set<std::string>& categories) {
  double percent = 0.0;
  for (const std::string& category : categories) {
    const auto it =
        std::find_if(breakdown.entries.begin(), breakdown.entries.end(),
                     [&](const WalltimeEntry& e) { return e.category == category; });
    if (it == breakdown.entries.end())
      throw not_found_error("walltime breakdown has no category '" + category + "'");
    percent += it->percent;
  }
  return percent / 100.0;
}

double overhead_seconds(double fraction, double reference_step_seconds) {
  if (fraction < 0.0 || fraction >= 1.0)
    throw std::invalid_argument("overhead_seconds: fraction must lie in [0, 1)");
  if (reference_step_seconds <= 0.0)
    throw std::invalid_argument("overhead_seconds: step time must be > 0");
  return fraction * reference_step_seconds;
}

std::string serialize_walltime(const WalltimeBreakdown& breakdown) {
  std::ostringstream out;
  if (!breakdown.scenario.empty()) out << "Scenario: " << breakdown.scenario << "\n";
  for (const WalltimeEntry& e : breakdown.entries) {
    std::ostringstream num;
    num << e.percent;
    out << e.category << " " << num.str() << "\n";
  }
  return out.str();
}

}  // namespace mddse
