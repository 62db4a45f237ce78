#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "direst/event_log.hpp"
#include "direst/trajectory.hpp"

namespace direst {

struct RunMetrics {
  // Earliest time from which the parameter error stays at or below the
  // threshold through the end of the run; unset if the final row exceeds it.
  std::optional<double> convergence_time;
  // Time average of the bank size over [0, t_f), piecewise constant between
  // update instants.
  double average_observers = 0.0;
  // Max-norm parameter error at the final row.
  double final_param_error = 0.0;
  // Max-norm state error at the final row divided by the overall range
  // (max minus min, over all rows and all plant states) of the plant state.
  double normalized_state_error = 0.0;
};

// The trajectory must carry perr_inf, xerr_inf and x1..xn columns; the event
// list must hold at least the initial event. t_f is the averaging horizon.
RunMetrics compute_metrics(const Trajectory& traj, const std::vector<EventRecord>& events,
                           double threshold, double t_f);

// key=value lines under a "# direst metrics v1" header.
void write_metrics(std::ostream& os, const RunMetrics& m);

}  // namespace direst
