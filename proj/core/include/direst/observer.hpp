#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "direst/grid_point.hpp"

namespace direst {

// rect_id value while a sample point is not yet the center of its own rect.
inline constexpr std::uint64_t kRectPending = std::numeric_limits<std::uint64_t>::max();

// One candidate-parameter observer in the bank.
struct ObserverInstance {
  GridPoint p_norm;        // sample point in the unit cube
  Eigen::VectorXd p_phys;  // the same point in physical units
  Eigen::VectorXd xhat;
  double mu = 0.0;         // monitoring signal over the current window
  double q_prev = 0.0;     // squared output-error norm at the current grid time
  double spawn_time = 0.0;
  std::uint64_t rect_id = kRectPending;
};

// Index of the observer with minimal monitoring signal. Ties keep the
// previous selection when it is among the minima, otherwise the lowest index.
std::size_t select(const std::vector<ObserverInstance>& bank,
                   std::optional<std::size_t> previous);

}  // namespace direst
