#pragma once

#include <limits>

#include "direst/trajectory.hpp"
#include "direst/vector_field.hpp"

namespace direst {

// One classical fourth-order Runge-Kutta step over [t, t+dt]. The input is
// sampled at t, t+dt/2 and t+dt. Throws BlowupError if any stage derivative
// or the result is non-finite.
Eigen::VectorXd rk4_step(const VectorField& f, const Eigen::VectorXd& x, double t, double dt,
                         const InputFn& input);

struct SimulateResult {
  Trajectory trajectory;       // columns x1..xn, u1..um; one row per grid point
  bool bound_exceeded = false;  // some |x_i(t)| passed the bound (diagnostic, not an error)
  double bound_exceed_time = std::numeric_limits<double>::quiet_NaN();
};

// Fixed-step integration from t = 0 to t_f (t_f must sit on the dt grid).
SimulateResult simulate(const VectorField& f, const Eigen::VectorXd& x0, const InputFn& input,
                        double t_f, double dt,
                        double state_bound = std::numeric_limits<double>::infinity());

}  // namespace direst
