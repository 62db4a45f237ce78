#include "direst/run.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "direst/errors.hpp"
#include "direst/neural_mass.hpp"
#include "direst/supervisor.hpp"

namespace direst {

namespace {

Eigen::VectorXd to_eigen(const std::vector<double>& v, Eigen::Index fallback_size) {
  if (v.empty()) return Eigen::VectorXd::Zero(fallback_size);
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i)] = v[i];
  return out;
}

std::ofstream open_or_throw(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw Error("cannot open '" + path + "' for writing");
  return f;
}

}  // namespace

std::unique_ptr<EstimationModel> make_model(const Scenario& sc) {
  if (sc.model == "neural_mass") {
    ObserverGains gains;
    gains.K = Eigen::Vector2d(sc.gain_k[0], sc.gain_k[1]);
    for (int i = 0; i < 6; ++i) gains.L[i] = sc.gain_l[static_cast<std::size_t>(i)];
    NeuralMassOptions opts;
    opts.input_row4_uses_p2 = sc.input_row4_uses_p2;
    return std::make_unique<NeuralMassModel>(NeuralMassConstants{}, gains, opts);
  }
  throw ConfigError("unknown model '" + sc.model + "'");
}

RunOutput run_scenario(const Scenario& sc, const std::string& out_dir) {
  sc.validate();
  const auto model = make_model(sc);
  ParamBox box(to_eigen(sc.box_lower, 0), to_eigen(sc.box_upper, 0));

  SupervisorConfig cfg;
  cfg.dt = sc.dt;
  cfg.T_d = sc.T_d;
  cfg.lambda = sc.lambda;
  cfg.eps = sc.epsilon;
  cfg.k_star = sc.resolve_k_star();
  cfg.x0 = to_eigen(sc.x0, model->state_dim());
  cfg.xhat0 = to_eigen(sc.xhat0, model->state_dim());
  cfg.p_true = to_eigen(sc.p_true, model->param_dim());
  cfg.state_bound = sc.state_bound;
  cfg.reinitialize_all = sc.reinitialize_all;

  const InputSignal input(sc.input);
  Supervisor sup(*model, box, cfg);

  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  RunOutput out;

  const auto total_steps = static_cast<std::int64_t>(std::llround(sc.t_f / sc.dt));
  const std::int64_t window = sup.steps_per_window();
  for (std::int64_t s = 1; s <= total_steps; ++s) {
    sup.advance(input);
    if (s % window == 0 && s < total_steps) {
      const bool was_single = sup.single_mode();
      sup.on_update_instant();
      if (sup.partition() != nullptr && !was_single) {
        char name[64];
        std::snprintf(name, sizeof(name), "partition_%03lld.snapshot",
                      static_cast<long long>(sup.partition()->iteration()));
        const std::string path = (fs::path(out_dir) / name).string();
        auto f = open_or_throw(path);
        sup.partition()->write_snapshot(f);
        out.snapshot_paths.push_back(path);
      }
    }
  }

  out.metrics = compute_metrics(sup.trajectory(), sup.events(), sc.threshold, sc.t_f);
  out.bound_exceeded = sup.bound_exceeded();

  out.trajectory_path = (fs::path(out_dir) / "trajectory.csv").string();
  {
    auto f = open_or_throw(out.trajectory_path);
    sup.trajectory().write_csv(f, sc.decimation);
  }
  out.events_path = (fs::path(out_dir) / "events.log").string();
  {
    auto f = open_or_throw(out.events_path);
    write_events(f, sup.events());
  }
  out.metrics_path = (fs::path(out_dir) / "metrics.txt").string();
  {
    auto f = open_or_throw(out.metrics_path);
    write_metrics(f, out.metrics);
  }
  return out;
}

}  // namespace direst
