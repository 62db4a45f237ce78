#pragma once

#include <memory>
#include <string>
#include <vector>

#include "direst/metrics.hpp"
#include "direst/model.hpp"
#include "direst/scenario.hpp"

namespace direst {

// Instantiate the model a scenario names; throws ConfigError for unknown ones.
std::unique_ptr<EstimationModel> make_model(const Scenario& sc);

struct RunOutput {
  RunMetrics metrics;
  bool bound_exceeded = false;
  std::string trajectory_path;
  std::string events_path;
  std::string metrics_path;
  std::vector<std::string> snapshot_paths;
};

// Full estimation run: simulate plant and observer bank over [0, t_f] with an
// update instant at every multiple of T_d strictly inside the horizon, then
// write trajectory.csv (decimated), events.log, metrics.txt and one partition
// snapshot per search-mode update into out_dir (created if needed).
RunOutput run_scenario(const Scenario& sc, const std::string& out_dir);

}  // namespace direst
