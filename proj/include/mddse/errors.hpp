#pragma once

#include <stdexcept>
#include <string>

namespace mddse {

// Catalog or config entry that does not exist (or matches more than one entry).
struct not_found_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input file or config value. `where` carries file/JSON-pointer/line info.
struct config_error : std::runtime_error {
  config_error(const std::string& where, const std::string& what)
      : std::runtime_error(where + ": " + what), where(where) {}
  std::string where;
};

// Requested unit packing cannot fit even a single unit into the budget.
struct infeasible_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Phase dependency graph contains a cycle.
struct graph_cycle_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace mddse
