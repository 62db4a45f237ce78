#pragma once

#include <cmath>

#include "direst/errors.hpp"

namespace direst {

// Advance the exponentially-forgetting monitoring signal
//
//     mu' = -lambda * mu + q(t),      q = squared max-norm output error,
//
// over one step: the homogeneous part decays exactly by exp(-lambda dt) and
// the forcing integral is closed with the trapezoidal rule on its endpoint
// samples. With q == 0 the update is the pure decay to the last ulp, and the
// value can never go negative.
inline double monitor_update(double mu, double q_prev, double q_next, double lambda, double dt) {
  if (!(lambda > 0.0) || !(dt > 0.0)) throw Error("monitor needs lambda > 0 and dt > 0");
  if (mu < 0.0 || q_prev < 0.0 || q_next < 0.0 || !std::isfinite(mu) || !std::isfinite(q_prev) ||
      !std::isfinite(q_next))
    throw InvalidCostError("monitor inputs must be finite and >= 0");
  const double decay = std::exp(-lambda * dt);
  return mu * decay + 0.5 * dt * (decay * q_prev + q_next);
}

}  // namespace direst
