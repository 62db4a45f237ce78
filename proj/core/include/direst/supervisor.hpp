#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "direst/event_log.hpp"
#include "direst/input_signal.hpp"
#include "direst/model.hpp"
#include "direst/observer.hpp"
#include "direst/param_box.hpp"
#include "direst/partition.hpp"
#include "direst/trajectory.hpp"

namespace direst {

struct SupervisorConfig {
  double dt = 1e-3;     // integration step, s
  double T_d = 10.0;    // update window length, s (must be a multiple of dt)
  double lambda = 0.05;  // monitor forgetting rate, 1/s
  double eps = kDefaultEpsilon;
  // Partition iterations after which the bank freezes to the selected
  // observer. 0 means no search at all: a single observer at the box center.
  std::int64_t k_star = 6;
  Eigen::VectorXd x0;     // plant initial state
  Eigen::VectorXd xhat0;  // initial state shared by the first-round observers
  Eigen::VectorXd p_true;  // physical plant parameter
  double state_bound = std::numeric_limits<double>::infinity();
  // Copy the selected observer's state into every observer at each update
  // instant (newly spawned ones already start there).
  bool reinitialize_all = false;
};

// Joint simulation of a plant and a growing bank of observers, each running a
// candidate parameter drawn from an adaptive trisection of the normalized
// parameter cube. Every observer carries a forgetting-integral monitor of its
// squared output error; the observer with the smallest monitor is the
// selected one and provides the current estimates.
//
// Time is discrete: advance() integrates one step of dt across the plant and
// the whole bank (classical 4-stage Runge-Kutta, the measured output fed to
// the observers recomputed at every stage). Whenever the step count crosses a
// window boundary the caller invokes on_update_instant(), which turns the
// window's monitor values into sample costs, completes the pending cube
// divisions, either spawns observers at the newly requested sample points or,
// once the iteration budget k_star is spent, discards all but the selected
// observer, and finally resets every monitor for the next window.
//
// The trajectory gets its t=0 row lazily on the first advance() call (that
// call appends two rows); after n steps it holds n+1 rows.
class Supervisor {
 public:
  // Search mode: the bank starts with one observer per initial sample point
  // of the cube (center plus one +-1/6 offset pair per dimension).
  Supervisor(const EstimationModel& model, ParamBox box, SupervisorConfig cfg);

  // Fixed-bank mode: one observer per given normalized point, no partition,
  // the bank never grows or shrinks. For studies of the monitor landscape.
  Supervisor(const EstimationModel& model, ParamBox box, SupervisorConfig cfg,
             const std::vector<GridPoint>& bank_points);

  double time() const { return static_cast<double>(step_) * cfg_.dt; }
  std::int64_t step() const { return step_; }
  std::int64_t steps_per_window() const { return steps_per_window_; }
  bool at_update_instant() const { return step_ > 0 && step_ % steps_per_window_ == 0; }
  bool single_mode() const { return single_mode_; }
  bool bound_exceeded() const { return bound_exceeded_; }
  double bound_exceed_time() const { return bound_time_; }

  const std::vector<ObserverInstance>& bank() const { return bank_; }
  std::size_t sigma() const { return sigma_; }
  const Eigen::VectorXd& plant_state() const { return x_; }
  const Eigen::VectorXd& p_hat() const { return bank_[sigma_].p_phys; }
  const Eigen::VectorXd& xhat() const { return bank_[sigma_].xhat; }
  const ParamBox& box() const { return box_; }
  const SupervisorConfig& config() const { return cfg_; }

  // Null in fixed-bank mode and when k_star == 0.
  const Partition* partition() const { return partition_ ? &*partition_ : nullptr; }
  const Trajectory& trajectory() const { return traj_; }
  const std::vector<EventRecord>& events() const { return events_; }

  // One integration step of everything, then the monitor updates (exact
  // exponential decay plus trapezoidal accumulation of the squared output
  // error), the bound check on the plant state, and re-selection of the
  // observer with the smallest monitor (ties keep the incumbent).
  void advance(const InputSignal& input);

  // Must be called exactly once per window boundary (throws ScheduleError
  // otherwise). Search mode additionally runs one partition round here.
  void on_update_instant();

 private:
  void validate_config();
  void init_outputs_and_monitors();
  void spawn(const GridPoint& p_norm, const Eigen::VectorXd& xhat_init, double q_init);
  void stage_deriv(const InputSignal& input, double ts, const Eigen::VectorXd& X,
                   Eigen::VectorXd& dX);
  void record_row(double u);

  const EstimationModel& model_;
  ParamBox box_;
  SupervisorConfig cfg_;
  std::optional<Partition> partition_;
  std::vector<ObserverInstance> bank_;
  std::size_t sigma_ = 0;
  bool single_mode_ = false;
  std::int64_t step_ = 0;
  std::int64_t steps_per_window_ = 0;
  std::int64_t last_instant_step_ = -1;
  bool bound_exceeded_ = false;
  double bound_time_ = std::numeric_limits<double>::quiet_NaN();

  Eigen::VectorXd x_;   // plant state at time()
  Eigen::VectorXd y_;   // plant output at time()
  Trajectory traj_;
  std::vector<EventRecord> events_;

  // integration scratch
  Eigen::VectorXd X_, Xs_, k1_, k2_, k3_, k4_, ys_, yhat_;
  std::vector<double> row_;
};

}  // namespace direst
