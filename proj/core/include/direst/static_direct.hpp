#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "direst/partition.hpp"

namespace direst {

// Cost over the normalized cube [0,1]^n_p.
using CostFn = std::function<double(const std::vector<double>&)>;

// Named test costs, all taking a target point in normalized units:
//   "sphere"      squared Euclidean distance to the target
//   "shifted-inf" max-norm distance to the target
//   "constant"    1 everywhere (pure space-filling)
CostFn make_cost_function(const std::string& name, std::vector<double> target);

struct IterationRecord {
  std::int64_t k = 0;  // iterations completed
  std::size_t n_rects = 0;
  std::size_t n_potentially_optimal = 0;  // of the round just requested (0 on the last)
  std::size_t n_new_samples = 0;
  double best_cost = 0.0;
  std::vector<double> best_point;
  // Max-norm distance from the target to the nearest sample; NaN without one.
  double dist_to_target = 0.0;
};

struct StaticRunResult {
  Partition partition;
  std::vector<IterationRecord> log;
};

// Synchronous minimization: evaluate pending points, complete divisions,
// select and divide, repeat. Stops after max_iterations completions or, if
// stop_distance is set (requires a target), as soon as the sample set comes
// that close to the target.
StaticRunResult run_static_direct(const CostFn& fn, int n_p, std::int64_t max_iterations,
                                  const std::vector<double>& target = {},
                                  double eps = kDefaultEpsilon,
                                  std::optional<double> stop_distance = std::nullopt);

}  // namespace direst
