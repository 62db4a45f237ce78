#pragma once

#include <Eigen/Core>

#include "direst/grid_point.hpp"

namespace direst {

// Affine map between the physical parameter box [lower, upper] and the
// normalized unit cube the sampler works in.
class ParamBox {
 public:
  ParamBox(Eigen::VectorXd lower, Eigen::VectorXd upper);

  int dim() const { return static_cast<int>(lower_.size()); }
  const Eigen::VectorXd& lower() const { return lower_; }
  const Eigen::VectorXd& upper() const { return upper_; }

  // p = lower + q .* (upper - lower); q must lie in [0,1]^n.
  Eigen::VectorXd denormalize(const Eigen::VectorXd& q) const;
  Eigen::VectorXd denormalize(const GridPoint& q) const;

  // Inverse map; p must lie in the box.
  Eigen::VectorXd normalize(const Eigen::VectorXd& p) const;

 private:
  Eigen::VectorXd lower_, upper_;
};

}  // namespace direst
