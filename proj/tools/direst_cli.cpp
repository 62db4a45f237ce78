// Command-line front end: full estimation runs, standalone sampler runs on
// test cost functions, and metric recomputation from run artifacts.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "direst/errors.hpp"
#include "direst/format.hpp"
#include "direst/metrics.hpp"
#include "direst/run.hpp"
#include "direst/static_direct.hpp"

namespace {

void print_metrics(const direst::RunMetrics& m) {
  direst::write_metrics(std::cout, m);
}

int cmd_run(const std::string& config_path, const std::string& out_dir) {
  const direst::Scenario sc = direst::load_scenario_file(config_path);
  const direst::RunOutput out = direst::run_scenario(sc, out_dir);
  std::cout << "wrote " << out.trajectory_path << "\n";
  std::cout << "wrote " << out.events_path << "\n";
  std::cout << "wrote " << out.metrics_path << "\n";
  for (const auto& p : out.snapshot_paths) std::cout << "wrote " << p << "\n";
  if (out.bound_exceeded) std::cout << "note: plant state bound exceeded during the run\n";
  print_metrics(out.metrics);
  return 0;
}

int cmd_direct_test(const std::string& fn_name, int n_p, std::optional<double> d_star,
                    std::optional<std::int64_t> iters, std::vector<double> target, double eps,
                    const std::string& out_dir) {
  if (d_star.has_value() == iters.has_value())
    throw direst::Error("give exactly one of --d-star and --iters");
  if (target.empty()) target.assign(static_cast<std::size_t>(n_p), 0.5);
  const std::int64_t budget =
      iters ? *iters : direst::termination_iterations(n_p, *d_star);
  std::cout << "iteration budget: " << budget << "\n";

  const direst::CostFn fn = direst::make_cost_function(fn_name, target);
  const direst::StaticRunResult res = direst::run_static_direct(fn, n_p, budget, target, eps);

  for (const direst::IterationRecord& r : res.log) {
    std::cout << "k=" << r.k << " rects=" << r.n_rects << " po=" << r.n_potentially_optimal
              << " new=" << r.n_new_samples << " best=" << direst::fmt_g17(r.best_cost) << " at=";
    for (std::size_t i = 0; i < r.best_point.size(); ++i) {
      if (i) std::cout << ",";
      std::cout << direst::fmt_g17(r.best_point[i]);
    }
    std::cout << " dist=" << direst::fmt_g17(r.dist_to_target) << "\n";
  }
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    const std::string path = (std::filesystem::path(out_dir) / "direct.snapshot").string();
    std::ofstream f(path);
    if (!f) throw direst::Error("cannot open '" + path + "' for writing");
    res.partition.write_snapshot(f);
    std::cout << "wrote " << path << "\n";
  }
  return 0;
}

int cmd_metrics(const std::string& run_dir, double threshold, std::optional<double> t_f) {
  namespace fs = std::filesystem;
  const std::string traj_path = (fs::path(run_dir) / "trajectory.csv").string();
  const std::string events_path = (fs::path(run_dir) / "events.log").string();
  std::ifstream tf(traj_path);
  if (!tf) throw direst::Error("cannot open '" + traj_path + "'");
  const direst::Trajectory traj = direst::Trajectory::read_csv(tf);
  std::ifstream ef(events_path);
  if (!ef) throw direst::Error("cannot open '" + events_path + "'");
  const std::vector<direst::EventRecord> events = direst::read_events(ef);
  const double horizon = t_f ? *t_f : traj.time(traj.size() - 1);
  print_metrics(direst::compute_metrics(traj, events, threshold, horizon));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Joint state and parameter estimation via an adaptive observer bank"};
  app.require_subcommand(1);

  std::string config_path, out_dir = "run_out";
  CLI::App* run = app.add_subcommand("run", "Execute a scenario config and write artifacts");
  run->add_option("config", config_path, "scenario config file")->required();
  run->add_option("--out", out_dir, "output directory (default run_out)");

  std::string fn_name;
  int n_p = 2;
  std::optional<double> d_star;
  std::optional<std::int64_t> iters;
  std::string p_star_csv;
  double eps = direst::kDefaultEpsilon;
  std::string direct_out;
  CLI::App* dt = app.add_subcommand("direct-test", "Run the sampler on a named cost function");
  dt->add_option("fn", fn_name, "cost: sphere, shifted-inf, constant")->required();
  dt->add_option("n_p", n_p, "cube dimension")->required();
  dt->add_option("--d-star", d_star, "target resolution (sets the iteration budget)");
  dt->add_option("--iters", iters, "explicit iteration budget");
  dt->add_option("--p-star", p_star_csv, "target point, comma separated (default cube center)");
  dt->add_option("--eps", eps, "improvement filter parameter");
  dt->add_option("--out", direct_out, "directory for the final partition snapshot");

  std::string run_dir;
  double threshold = 0.72;
  std::optional<double> t_f;
  CLI::App* mx = app.add_subcommand("metrics", "Recompute metrics from run artifacts");
  mx->add_option("run_dir", run_dir, "directory holding trajectory.csv and events.log")
      ->required();
  mx->add_option("--threshold", threshold, "convergence threshold on the parameter error");
  mx->add_option("--t-f", t_f, "averaging horizon (default: last trajectory time)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(config_path, out_dir);
    if (dt->parsed()) {
      std::vector<double> target;
      if (!p_star_csv.empty()) {
        std::stringstream ss(p_star_csv);
        std::string item;
        while (std::getline(ss, item, ',')) target.push_back(std::stod(item));
      }
      return cmd_direct_test(fn_name, n_p, d_star, iters, std::move(target), eps, direct_out);
    }
    if (mx->parsed()) return cmd_metrics(run_dir, threshold, t_f);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
