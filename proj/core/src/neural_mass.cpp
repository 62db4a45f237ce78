#include "direst/neural_mass.hpp"

#include <cmath>

namespace direst {

double sigmoid(double v, const NeuralMassConstants& k) {
  return 2.0 * k.e0 / (1.0 + std::exp(k.r * (k.v0 - v)));
}

NeuralMassModel::NeuralMassModel(NeuralMassConstants consts, ObserverGains gains,
                                 NeuralMassOptions opts)
    : k_(consts), gains_(gains), opts_(opts) {
  const double a = k_.a, b = k_.b;
  A_.setZero();
  // Three identical companion blocks: two at rate a, one at rate b.
  for (int blk = 0; blk < 3; ++blk) {
    const double w = blk < 2 ? a : b;
    const int i = 2 * blk;
    A_(i, i + 1) = 1.0;
    A_(i + 1, i) = -w * w;
    A_(i + 1, i + 1) = -2.0 * w;
  }
  H_.setZero();
  H_(0, 0) = k_.c1;
  H_(1, 0) = k_.c3;
  C_.setZero();
  C_(0, 2) = 1.0;
  C_(0, 4) = -1.0;
}

Eigen::Matrix<double, 6, 2> NeuralMassModel::G(const Eigen::Vector2d& p) const {
  Eigen::Matrix<double, 6, 2> g = Eigen::Matrix<double, 6, 2>::Zero();
  g(3, 0) = p[0] * k_.a * k_.c2;
  g(5, 1) = p[1] * k_.b * k_.c4;
  return g;
}

Eigen::Matrix<double, 6, 2> NeuralMassModel::B(const Eigen::Vector2d& p) const {
  Eigen::Matrix<double, 6, 2> m = Eigen::Matrix<double, 6, 2>::Zero();
  m(1, 0) = p[0] * k_.a;
  m(3, 1) = (opts_.input_row4_uses_p2 ? p[1] * k_.b : p[0] * k_.a);
  return m;
}

void NeuralMassModel::plant_deriv(const Eigen::Ref<const Eigen::VectorXd>& x,
                                  const Eigen::Ref<const Eigen::VectorXd>& p, double u,
                                  Eigen::Ref<Eigen::VectorXd> dx) const {
  if (x.size() != 6 || p.size() != 2) throw InvalidDimensionError("neural mass is 6-state, 2-parameter");
  const Eigen::Vector2d pp(p[0], p[1]);
  const Eigen::Matrix<double, 2, 1> hx = H_ * x;
  const Eigen::Vector2d gamma(sigmoid(hx[0], k_), sigmoid(hx[1], k_));
  const double y = (C_ * x)(0);
  const Eigen::Vector2d phi(sigmoid(y, k_), u);
  dx = A_ * x + G(pp) * gamma + B(pp) * phi;
}

void NeuralMassModel::output(const Eigen::Ref<const Eigen::VectorXd>& x, Eigen::VectorXd& y) const {
  if (x.size() != 6) throw InvalidDimensionError("neural mass is 6-state");
  y.resize(1);
  y[0] = (C_ * x)(0);
}

void NeuralMassModel::observer_deriv(const Eigen::Ref<const Eigen::VectorXd>& xhat,
                                     const Eigen::Ref<const Eigen::VectorXd>& p, double u,
                                     const Eigen::VectorXd& y, Eigen::Ref<Eigen::VectorXd> dx) const {
  if (xhat.size() != 6 || p.size() != 2 || y.size() != 1)
    throw InvalidDimensionError("neural mass observer is 6-state, 2-parameter, 1-output");
  const Eigen::Vector2d pp(p[0], p[1]);
  const double innov = y[0] - (C_ * xhat)(0);
  const Eigen::Matrix<double, 2, 1> v = H_ * xhat + gains_.K * innov;
  const Eigen::Vector2d gamma(sigmoid(v[0], k_), sigmoid(v[1], k_));
  // The measured output feeds the nonlinear input channel directly, so at the
  // true parameter the error dynamics decouple from the running plant state.
  const Eigen::Vector2d phi(sigmoid(y[0], k_), u);
  dx = A_ * xhat + G(pp) * gamma + B(pp) * phi + gains_.L * innov;
}

}  // namespace direst
