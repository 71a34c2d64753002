#include "oracles.hpp"

#include <random>
#include <stdexcept>

namespace oracle {

std::vector<Vec3> uniform_positions(long n, double box_edge, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(0.0, box_edge);
  std::vector<Vec3> positions(static_cast<std::size_t>(n));
  for (Vec3& p : positions) {
    p.x = coord(rng);
    p.y = coord(rng);
    p.z = coord(rng);
  }
  return positions;
}

long count_pairs_within(const std::vector<Vec3>& positions, double box_edge, double cutoff) {
  if (cutoff >= box_edge / 2.0)
    throw std::invalid_argument("oracle: cutoff must be < box_edge/2 for minimum image");
  const double half = box_edge / 2.0;
  const double rc2 = cutoff * cutoff;
  const auto wrap = [&](double d) {
    if (d > half) return d - box_edge;
    if (d < -half) return d + box_edge;
    return d;
  };
  long count = 0;
  const std::size_t n = positions.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3 a = positions[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx = wrap(a.x - positions[j].x);
      const double dy = wrap(a.y - positions[j].y);
      const double dz = wrap(a.z - positions[j].z);
      if (dx * dx + dy * dy + dz * dz <= rc2) ++count;
    }
  }
  return count;
}

std::vector<bool> pareto_front_flags(const std::vector<mddse::ParetoPoint>& points) {
  const std::size_t n = points.size();
  std::vector<bool> on_front(n, true);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const bool at_least_as_good = points[j].usd_per_hour <= points[i].usd_per_hour &&
                                    points[j].ns_per_day >= points[i].ns_per_day;
      const bool strictly_better = points[j].usd_per_hour < points[i].usd_per_hour ||
                                   points[j].ns_per_day > points[i].ns_per_day;
      if (at_least_as_good && strictly_better) {
        on_front[i] = false;
        break;
      }
    }
  }
  return on_front;
}

}  // namespace oracle
