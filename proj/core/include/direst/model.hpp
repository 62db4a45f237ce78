#pragma once

#include <Eigen/Core>

#include "direst/errors.hpp"
#include "direst/vector_field.hpp"

namespace direst {

// A plant/observer pair for joint state and parameter estimation. The plant
// runs at the true parameter; observers run candidate parameters and are
// driven by the measured input u and output y. Arguments are Eigen::Ref so
// callers can pass segments of a stacked state without copies; dx must be
// presized to state_dim.
class EstimationModel {
 public:
  virtual ~EstimationModel() = default;

  virtual int state_dim() const = 0;
  virtual int output_dim() const = 0;
  virtual int param_dim() const = 0;

  virtual void plant_deriv(const Eigen::Ref<const Eigen::VectorXd>& x,
                           const Eigen::Ref<const Eigen::VectorXd>& p, double u,
                           Eigen::Ref<Eigen::VectorXd> dx) const = 0;
  virtual void output(const Eigen::Ref<const Eigen::VectorXd>& x, Eigen::VectorXd& y) const = 0;
  virtual void observer_deriv(const Eigen::Ref<const Eigen::VectorXd>& xhat,
                              const Eigen::Ref<const Eigen::VectorXd>& p, double u,
                              const Eigen::VectorXd& y, Eigen::Ref<Eigen::VectorXd> dx) const = 0;
};

// The plant as a bare vector field at a fixed parameter (input = scalar u).
class PlantField : public VectorField {
 public:
  PlantField(const EstimationModel& model, Eigen::VectorXd p)
      : model_(model), p_(std::move(p)) {
    if (p_.size() != model_.param_dim()) throw InvalidDimensionError("parameter size mismatch");
  }

  Eigen::Index dim() const override { return model_.state_dim(); }
  Eigen::Index input_dim() const override { return 1; }
  void eval(double /*t*/, const Eigen::VectorXd& x, const Eigen::VectorXd& u,
            Eigen::VectorXd& dxdt) const override {
    model_.plant_deriv(x, p_, u[0], dxdt);
  }

 private:
  const EstimationModel& model_;
  Eigen::VectorXd p_;
};

}  // namespace direst
