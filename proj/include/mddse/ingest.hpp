#pragma once

#include <iosfwd>
#include <set>
#include <string>
#include <vector>

namespace mddse {

struct WalltimeEntry {
  std::string category;
  double percent = 0.0;
};

// A measured per-step walltime split, category -> percent of total.
struct WalltimeBreakdown {
  std::string scenario;
  std::vector<WalltimeEntry> entries;
  double sum_percent() const;
  // A well-formed split accounts for (almost) everything once.
  bool sum_plausible() const { return sum_percent() >= 99.0 && sum_percent() <= 101.0; }
};

// Text format, one entry per line: the category name followed by its percent
// as the last whitespace-separated token. '#' starts a comment, blank lines
// are skipped, an optional "Scenario: <name>" line names the run. Malformed
// lines raise config_error with the line number.
WalltimeBreakdown parse_walltime_table(std::istream& in, const std::string& source_name);
WalltimeBreakdown parse_walltime_text(const std::string& text, const std::string& source_name);
WalltimeBreakdown load_walltime_file(const std::string& path);

// Host-side work that stays serial no matter how much force computation the
// cards absorb: bookkeeping, integration, constraints, output.
const std::set<std::string>& default_non_hideable_categories();

// Fraction of the measured step spent in the given categories (0..~1).
// Every requested category must appear in the breakdown; asking about a
// category the log never reported is an error, not a zero.
double overhead_fraction(const WalltimeBreakdown& breakdown,
                         const std::set<std::string>& categories);

// That fraction applied to a measured step time.
double overhead_seconds(double fraction, double reference_step_seconds);

std::string serialize_walltime(const WalltimeBreakdown& breakdown);

}  // namespace mddse
