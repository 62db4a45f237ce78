#include "direst/input_signal.hpp"

#include <cmath>
#include <random>

#include "direst/errors.hpp"

namespace direst {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// splitmix64: O(1) random access into the held-value sequence.
std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double unit_from_bits(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;  // [0, 1)
}

}  // namespace

InputKind parse_input_kind(const std::string& name) {
  if (name == "multisine") return InputKind::kMultisine;
  if (name == "piecewise_constant") return InputKind::kPiecewiseConstant;
  if (name == "constant") return InputKind::kConstant;
  throw ConfigError("unknown input kind '" + name + "'");
}

std::string input_kind_name(InputKind k) {
  switch (k) {
    case InputKind::kMultisine: return "multisine";
    case InputKind::kPiecewiseConstant: return "piecewise_constant";
    case InputKind::kConstant: return "constant";
  }
  return "?";
}

InputSignal::InputSignal(InputConfig cfg) : cfg_(cfg) {
  if (!std::isfinite(cfg_.amplitude)) throw ConfigError("input amplitude must be finite");
  switch (cfg_.kind) {
    case InputKind::kMultisine: {
      if (cfg_.amplitude < 0) throw ConfigError("multisine amplitude must be >= 0");
      if (cfg_.count < 1) throw ConfigError("multisine needs at least one component");
      if (!(cfg_.f_min > 0) || !(cfg_.f_max >= cfg_.f_min))
        throw ConfigError("multisine needs 0 < f_min <= f_max");
      std::mt19937_64 rng(cfg_.seed);
      const int m = cfg_.count;
      for (int i = 0; i < m; ++i) {
        const double frac = m == 1 ? 0.0 : static_cast<double>(i) / (m - 1);
        const double f = cfg_.f_min * std::pow(cfg_.f_max / cfg_.f_min, frac);
        omega_.push_back(kTwoPi * f);
        phase_.push_back(kTwoPi * unit_from_bits(rng()));
      }
      break;
    }
    case InputKind::kPiecewiseConstant:
      if (cfg_.amplitude < 0) throw ConfigError("piecewise amplitude must be >= 0");
      if (!(cfg_.hold_time > 0)) throw ConfigError("hold time must be > 0");
      break;
    case InputKind::kConstant:
      break;
  }
}

double InputSignal::value(double t) const {
  switch (cfg_.kind) {
    case InputKind::kMultisine: {
      double s = 0.0;
      for (std::size_t i = 0; i < omega_.size(); ++i) s += std::sin(omega_[i] * t + phase_[i]);
      return cfg_.offset + cfg_.amplitude * s / static_cast<double>(omega_.size());
    }
    case InputKind::kPiecewiseConstant: {
      const auto j = static_cast<std::uint64_t>(std::floor(t / cfg_.hold_time));
      return cfg_.amplitude * (2.0 * unit_from_bits(mix64(cfg_.seed ^ (j * 0x9e3779b97f4a7c15ull))) - 1.0);
    }
    case InputKind::kConstant:
      return cfg_.amplitude;
  }
  return 0.0;
}

double InputSignal::bound() const {
  switch (cfg_.kind) {
    case InputKind::kMultisine: return std::fabs(cfg_.offset) + cfg_.amplitude;
    case InputKind::kPiecewiseConstant: return cfg_.amplitude;
    case InputKind::kConstant: return std::fabs(cfg_.amplitude);
  }
  return 0.0;
}

}  // namespace direst
