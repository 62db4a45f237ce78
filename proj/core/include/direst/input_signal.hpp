#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace direst {

enum class InputKind { kMultisine, kPiecewiseConstant, kConstant };

struct InputConfig {
  InputKind kind = InputKind::kMultisine;
  // Multisine: u = offset + amplitude * sum_m (1/M) sin(w_m t + phi_m).
  // Piecewise-constant: values uniform in [-amplitude, amplitude].
  // Constant: u = amplitude.
  double amplitude = 1.0;
  double offset = 0.0;     // multisine only
  int count = 8;           // multisine component count M
  double f_min = 0.2;      // Hz, components log-spaced over [f_min, f_max]
  double f_max = 3.0;
  double hold_time = 1.0;  // piecewise-constant dwell
  std::uint64_t seed = 1;  // phases / held values
};

InputKind parse_input_kind(const std::string& name);
std::string input_kind_name(InputKind k);

// Deterministic scalar excitation signal. Same config, same values, always.
class InputSignal {
 public:
  explicit InputSignal(InputConfig cfg);

  double value(double t) const;

  // Hard amplitude bound: |value(t)| <= bound() for all t.
  double bound() const;

  const InputConfig& config() const { return cfg_; }

 private:
  InputConfig cfg_;
  std::vector<double> omega_;  // rad/s
  std::vector<double> phase_;
};

}  // namespace direst
