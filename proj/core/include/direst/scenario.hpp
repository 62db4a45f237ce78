#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "direst/input_signal.hpp"
#include "direst/partition.hpp"

namespace direst {

// Everything a full estimation run needs, loadable from a plain text config
// (sections in brackets, key = value, # comments). Unknown sections or keys
// are errors so typos cannot silently fall back to defaults.
struct Scenario {
  // [run]
  std::uint64_t seed = 1;
  double dt = 1e-3;
  double t_f = 100.0;
  double T_d = 10.0;
  int decimation = 10;

  // [search]
  double lambda = 0.05;
  double epsilon = kDefaultEpsilon;
  std::optional<double> d_star;        // target sample resolution; default 0.8
  std::optional<std::int64_t> k_star;  // explicit budget overrides d_star
  double threshold = 0.72;             // parameter-error level defining convergence
  bool reinitialize_all = false;

  // [model]
  std::string model = "neural_mass";
  std::vector<double> box_lower = {2.0, 22.0};
  std::vector<double> box_upper = {8.0, 28.0};
  std::vector<double> p_true = {5.0, 25.0};
  std::vector<double> x0;     // empty = zeros
  std::vector<double> xhat0;  // empty = zeros
  double state_bound = 1e6;
  std::vector<double> gain_k = {0.0, 0.0};
  std::vector<double> gain_l = {0.0, 0.0, 0.0, 0.0, 0.0, 0.0};
  bool input_row4_uses_p2 = false;

  // [input]
  InputConfig input;

  // Throws ConfigError on any inconsistency.
  void validate() const;

  // Explicit budget if given, otherwise the guarantee-driven iteration count
  // for the requested (or default 0.8) resolution.
  std::int64_t resolve_k_star() const;
};

Scenario load_scenario(std::istream& is);
Scenario load_scenario_file(const std::string& path);

}  // namespace direst
