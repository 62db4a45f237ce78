#include "direst/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <ostream>

#include "direst/errors.hpp"
#include "direst/format.hpp"

namespace direst {

namespace {

bool is_plant_state_col(const std::string& name) {
  if (name.size() < 2 || name[0] != 'x') return false;
  return std::all_of(name.begin() + 1, name.end(),
                     [](unsigned char c) { return std::isdigit(c); });
}

}  // namespace

RunMetrics compute_metrics(const Trajectory& traj, const std::vector<EventRecord>& events,
                           double threshold, double t_f) {
  if (traj.empty()) throw Error("empty trajectory");
  if (events.empty()) throw Error("empty event list");
  if (!(threshold > 0.0) || !std::isfinite(threshold))
    throw Error("threshold must be finite and > 0");
  if (!(t_f > 0.0) || !std::isfinite(t_f)) throw Error("horizon must be finite and > 0");

  const std::size_t perr_col = traj.col_index("perr_inf");
  const std::size_t xerr_col = traj.col_index("xerr_inf");
  std::vector<std::size_t> x_cols;
  for (std::size_t c = 0; c < traj.cols(); ++c)
    if (is_plant_state_col(traj.names()[c])) x_cols.push_back(c);
  if (x_cols.empty()) throw Error("trajectory has no plant state columns");

  RunMetrics m;
  const std::size_t last = traj.size() - 1;
  m.final_param_error = traj.value(last, perr_col);

  // Walk backwards to the last row above threshold; convergence starts just
  // after it.
  std::size_t rows_above = traj.size();  // sentinel: none found yet
  for (std::size_t r = traj.size(); r-- > 0;) {
    if (traj.value(r, perr_col) > threshold) {
      rows_above = r;
      break;
    }
  }
  if (rows_above == traj.size())
    m.convergence_time = traj.time(0);
  else if (rows_above < last)
    m.convergence_time = traj.time(rows_above + 1);
  // else: still above threshold at the end, leave unset

  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < traj.size(); ++r) {
    for (std::size_t c : x_cols) {
      const double v = traj.value(r, c);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  const double range = hi - lo;
  m.normalized_state_error =
      range > 0.0 ? traj.value(last, xerr_col) / range : std::numeric_limits<double>::infinity();

  // Duration-weighted mean of the bank size, constant between instants.
  std::vector<const EventRecord*> evs;
  evs.reserve(events.size());
  for (const EventRecord& e : events) evs.push_back(&e);
  std::sort(evs.begin(), evs.end(),
            [](const EventRecord* a, const EventRecord* b) { return a->k < b->k; });
  double weighted = 0.0;
  for (std::size_t i = 0; i < evs.size(); ++i) {
    const double t0 = evs[i]->t;
    if (t0 >= t_f) break;
    const double t1 = i + 1 < evs.size() ? std::min(evs[i + 1]->t, t_f) : t_f;
    if (t1 > t0) weighted += static_cast<double>(evs[i]->n_observers) * (t1 - t0);
  }
  m.average_observers = weighted / t_f;
  return m;
}

void write_metrics(std::ostream& os, const RunMetrics& m) {
  os << "# direst metrics v1\n";
  os << "convergence_time=" << (m.convergence_time ? fmt_g17(*m.convergence_time) : "unset")
     << "\n";
  os << "average_observers=" << fmt_g17(m.average_observers) << "\n";
  os << "final_param_error=" << fmt_g17(m.final_param_error) << "\n";
  os << "normalized_state_error=" << fmt_g17(m.normalized_state_error) << "\n";
}

}  // namespace direst
