#include "soco/instance.hpp"

#include <cmath>

namespace soco {

MetricCheck check_metric_axioms(const DiscreteSpace& space, std::size_t sampled_triples,
                                std::uint64_t seed) {
  MetricCheck out;
  const std::size_t n = space.size();
  auto triple = [&](std::size_t x, std::size_t y, std::size_t z) {
    ++out.triples_checked;
    double defect = space.distance(x, z) - space.distance(x, y) - space.distance(y, z);
    if (x == y) defect = std::fmax(defect, std::fabs(space.distance(x, y)));
    else defect = std::fmax(defect, space.distance(x, y) > 0 ? -kInfinity : kInfinity);
    defect = std::fmax(defect, std::fabs(space.distance(x, y) - space.distance(y, x)));
    if (defect > out.worst_violation) {
      out.worst_violation = defect;
      out.x = x;
      out.y = y;
      out.z = z;
    }
  };
  if (n <= 64) {
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        for (std::size_t z = 0; z < n; ++z) triple(x, y, z);
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (std::size_t i = 0; i < sampled_triples; ++i) triple(pick(rng), pick(rng), pick(rng));
  }
  // Triangle defects up to rounding are tolerated.
  out.pass = out.worst_violation <= 1e-12;
  return out;
}

}  // namespace soco
