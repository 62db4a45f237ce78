#include "direst/param_box.hpp"

#include <cmath>

#include "direst/errors.hpp"

namespace direst {

ParamBox::ParamBox(Eigen::VectorXd lower, Eigen::VectorXd upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.size() != upper_.size() || lower_.size() == 0)
    throw InvalidDimensionError("parameter box bounds must have equal nonzero size");
  for (Eigen::Index i = 0; i < lower_.size(); ++i) {
    if (!std::isfinite(lower_[i]) || !std::isfinite(upper_[i]) || !(lower_[i] < upper_[i]))
      throw DomainError("parameter box needs lower < upper in every coordinate");
  }
}

Eigen::VectorXd ParamBox::denormalize(const Eigen::VectorXd& q) const {
  if (q.size() != lower_.size()) throw InvalidDimensionError("normalized point size mismatch");
  for (Eigen::Index i = 0; i < q.size(); ++i)
    if (!(q[i] >= 0.0 && q[i] <= 1.0))
      throw DomainError("normalized point outside the unit cube");
  return lower_ + q.cwiseProduct(upper_ - lower_);
}

Eigen::VectorXd ParamBox::denormalize(const GridPoint& q) const {
  if (q.dim() != dim()) throw InvalidDimensionError("normalized point size mismatch");
  Eigen::VectorXd v(dim());
  for (int i = 0; i < dim(); ++i) v[i] = q[static_cast<std::size_t>(i)].to_double();
  return denormalize(v);
}

Eigen::VectorXd ParamBox::normalize(const Eigen::VectorXd& p) const {
  if (p.size() != lower_.size()) throw InvalidDimensionError("parameter size mismatch");
  for (Eigen::Index i = 0; i < p.size(); ++i)
    if (!(p[i] >= lower_[i] && p[i] <= upper_[i]))
      throw DomainError("parameter outside the box");
  return (p - lower_).cwiseQuotient(upper_ - lower_);
}

}  // namespace direst
