#include "direst/integrate.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "direst/errors.hpp"

namespace direst {

namespace {

void check_finite(const Eigen::VectorXd& v, double t, const char* what) {
  if (!v.allFinite())
    throw BlowupError(std::string(what) + " became non-finite at t=" + std::to_string(t), t);
}

}  // namespace

Eigen::VectorXd rk4_step(const VectorField& f, const Eigen::VectorXd& x, double t, double dt,
                         const InputFn& input) {
  if (x.size() != f.dim()) throw InvalidDimensionError("state size does not match field");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw Error("step size must be finite and > 0");

  const double th = t + 0.5 * dt;
  const double t1 = t + dt;
  const Eigen::VectorXd u0 = input(t);
  const Eigen::VectorXd uh = input(th);
  const Eigen::VectorXd u1 = input(t1);

  Eigen::VectorXd k1(x.size()), k2(x.size()), k3(x.size()), k4(x.size());
  f.eval(t, x, u0, k1);
  check_finite(k1, t, "derivative");
  f.eval(th, x + 0.5 * dt * k1, uh, k2);
  check_finite(k2, th, "derivative");
  f.eval(th, x + 0.5 * dt * k2, uh, k3);
  check_finite(k3, th, "derivative");
  f.eval(t1, x + dt * k3, u1, k4);
  check_finite(k4, t1, "derivative");

  Eigen::VectorXd out = x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  check_finite(out, t1, "state");
  return out;
}

SimulateResult simulate(const VectorField& f, const Eigen::VectorXd& x0, const InputFn& input,
                        double t_f, double dt, double state_bound) {
  if (!(t_f > 0.0) || !(dt > 0.0)) throw Error("horizon and step must be > 0");
  const double steps_real = t_f / dt;
  const auto steps = static_cast<std::int64_t>(std::llround(steps_real));
  if (steps < 1 || std::fabs(steps_real - static_cast<double>(steps)) > 1e-6)
    throw Error("horizon must be an integer multiple of the step");

  std::vector<std::string> names;
  for (Eigen::Index i = 0; i < f.dim(); ++i) names.push_back("x" + std::to_string(i + 1));
  for (Eigen::Index i = 0; i < f.input_dim(); ++i) names.push_back("u" + std::to_string(i + 1));

  SimulateResult res;
  res.trajectory = Trajectory(names, dt);

  Eigen::VectorXd x = x0;
  std::vector<double> row(static_cast<std::size_t>(f.dim() + f.input_dim()));
  auto record = [&](double t) {
    const Eigen::VectorXd u = input(t);
    if (u.size() != f.input_dim()) throw InvalidDimensionError("input size does not match field");
    for (Eigen::Index i = 0; i < f.dim(); ++i) row[static_cast<std::size_t>(i)] = x[i];
    for (Eigen::Index i = 0; i < f.input_dim(); ++i)
      row[static_cast<std::size_t>(f.dim() + i)] = u[i];
    res.trajectory.append(t, row);
    if (!res.bound_exceeded && x.size() > 0 && x.cwiseAbs().maxCoeff() > state_bound) {
      res.bound_exceeded = true;
      res.bound_exceed_time = t;
    }
  };

  record(0.0);
  for (std::int64_t i = 0; i < steps; ++i) {
    const double t = static_cast<double>(i) * dt;
    x = rk4_step(f, x, t, dt, input);
    record(static_cast<double>(i + 1) * dt);
  }
  return res;
}

}  // namespace direst
