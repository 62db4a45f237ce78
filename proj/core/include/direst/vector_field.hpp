#pragma once

#include <functional>

#include <Eigen/Core>

namespace direst {

// Right-hand side of an ODE x' = f(t, x, u). Implementations must be pure:
// eval may run concurrently from multiple threads on shared instances.
class VectorField {
 public:
  virtual ~VectorField() = default;
  virtual Eigen::Index dim() const = 0;
  virtual Eigen::Index input_dim() const = 0;
  virtual void eval(double t, const Eigen::VectorXd& x, const Eigen::VectorXd& u,
                    Eigen::VectorXd& dxdt) const = 0;
};

// Exogenous input sampler; called at stage times t, t+dt/2, t+dt.
using InputFn = std::function<Eigen::VectorXd(double)>;

}  // namespace direst
