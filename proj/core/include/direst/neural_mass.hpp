#pragma once

#include "direst/model.hpp"

namespace direst {

// Cortical-column model: three second-order synaptic blocks coupled through
// sigmoidal firing-rate functions. States are (post-synaptic potential,
// derivative) pairs; the measured signal is the potential difference
// x21 - x31. Two gain parameters p = (p1, p2) scale the excitatory and
// inhibitory branches.
struct NeuralMassConstants {
  double a = 100.0;   // excitatory synaptic rate, 1/s
  double b = 50.0;    // inhibitory synaptic rate, 1/s
  double c1 = 135.0;  // connectivity
  double c2 = 108.0;
  double c3 = 33.75;
  double c4 = 33.75;
  double e0 = 2.5;    // half of the max firing rate
  double v0 = 6.0;    // sigmoid midpoint potential
  double r = 0.56;    // sigmoid steepness
};

// S(v) = 2 e0 / (1 + exp(r (v0 - v))): 0 < S < 2 e0, S(v0) = e0,
// max slope e0 r / 2 at v0.
double sigmoid(double v, const NeuralMassConstants& k = {});

struct ObserverGains {
  Eigen::Vector2d K = Eigen::Vector2d::Zero();                // inside the nonlinearity argument
  Eigen::Matrix<double, 6, 1> L = Eigen::Matrix<double, 6, 1>::Zero();  // output injection
};

struct NeuralMassOptions {
  // The input channel enters both second-order blocks scaled by p1. Setting
  // this pairs the second entry with p2 instead, for sensitivity studies.
  bool input_row4_uses_p2 = false;
};

class NeuralMassModel : public EstimationModel {
 public:
  explicit NeuralMassModel(NeuralMassConstants consts = {}, ObserverGains gains = {},
                           NeuralMassOptions opts = {});

  int state_dim() const override { return 6; }
  int output_dim() const override { return 1; }
  int param_dim() const override { return 2; }

  void plant_deriv(const Eigen::Ref<const Eigen::VectorXd>& x,
                   const Eigen::Ref<const Eigen::VectorXd>& p, double u,
                   Eigen::Ref<Eigen::VectorXd> dx) const override;
  void output(const Eigen::Ref<const Eigen::VectorXd>& x, Eigen::VectorXd& y) const override;
  void observer_deriv(const Eigen::Ref<const Eigen::VectorXd>& xhat,
                      const Eigen::Ref<const Eigen::VectorXd>& p, double u,
                      const Eigen::VectorXd& y, Eigen::Ref<Eigen::VectorXd> dx) const override;

  // System matrices, exposed for verification.
  Eigen::Matrix<double, 6, 6> A() const { return A_; }
  Eigen::Matrix<double, 6, 2> G(const Eigen::Vector2d& p) const;
  Eigen::Matrix<double, 6, 2> B(const Eigen::Vector2d& p) const;
  Eigen::Matrix<double, 2, 6> H() const { return H_; }
  Eigen::Matrix<double, 1, 6> C() const { return C_; }

  const NeuralMassConstants& constants() const { return k_; }
  const ObserverGains& gains() const { return gains_; }

 private:
  NeuralMassConstants k_;
  ObserverGains gains_;
  NeuralMassOptions opts_;
  Eigen::Matrix<double, 6, 6> A_;
  Eigen::Matrix<double, 2, 6> H_;
  Eigen::Matrix<double, 1, 6> C_;
};

}  // namespace direst
