#pragma once

#include <string>
#include <vector>

#include "mddse/balance.hpp"
#include "mddse/catalog.hpp"
#include "mddse/config.hpp"
#include "mddse/cost.hpp"
#include "mddse/des.hpp"
#include "mddse/ingest.hpp"
#include "mddse/schedule.hpp"

namespace mddse {

// One decimal for microseconds and ns/day, four for USD; all output built
// from these so identical inputs give byte-identical reports.
std::string format_us(double seconds);
std::string format_ns_per_day(double ns_per_day);
std::string format_usd(double usd);
std::string format_percent(double fraction);

std::string estimate_report_text(const Catalog& catalog, const ResolvedNode& resolved,
                                 const StepEstimate& estimate);
std::string estimate_report_json(const Catalog& catalog, const ResolvedNode& resolved,
                                 const StepEstimate& estimate);

std::string balance_report_text(const ResolvedNode& resolved, const BalanceResult& result);

std::string pareto_csv(const std::vector<ParetoPoint>& points);
std::string pareto_svg(const std::vector<ParetoPoint>& points);
std::string pareto_text(const std::vector<ParetoPoint>& points);

std::string timeline_csv(const Timeline& timeline);

std::string catalog_list_text(const Catalog& catalog);
std::string catalog_show_text(const Catalog& catalog, const std::string& query);

std::string walltime_json(const WalltimeBreakdown& breakdown, double non_hideable_fraction,
                          const std::vector<std::string>& applied_categories);

}  // namespace mddse
