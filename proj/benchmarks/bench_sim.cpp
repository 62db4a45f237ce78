#include <benchmark/benchmark.h>

#include <Eigen/Core>

#include "direst/integrate.hpp"
#include "direst/monitor.hpp"
#include "direst/neural_mass.hpp"
#include "direst/supervisor.hpp"

namespace {

void BM_plant_rk4_step(benchmark::State& state) {
  const direst::NeuralMassModel model;
  const direst::PlantField field(model, Eigen::Vector2d(5.0, 25.0));
  const auto input = [](double t) { return Eigen::VectorXd::Constant(1, std::sin(t)); };
  Eigen::VectorXd x = Eigen::VectorXd::Zero(6);
  double t = 0.0;
  for (auto _ : state) {
    x = direst::rk4_step(field, x, t, 1e-3, input);
    t += 1e-3;
  }
  benchmark::DoNotOptimize(x);
}
BENCHMARK(BM_plant_rk4_step);

void BM_monitor_update(benchmark::State& state) {
  double mu = 0.1;
  for (auto _ : state) {
    mu = direst::monitor_update(mu, 0.3, 0.31, 0.05, 1e-3);
    benchmark::DoNotOptimize(mu);
  }
}
BENCHMARK(BM_monitor_update);

// One joint step of plant plus a bank of the given size.
void BM_supervisor_advance(benchmark::State& state) {
  const direst::NeuralMassModel model;
  direst::ParamBox box(Eigen::Vector2d(2.0, 22.0), Eigen::Vector2d(8.0, 28.0));
  direst::SupervisorConfig cfg;
  cfg.x0 = Eigen::VectorXd::Zero(6);
  cfg.xhat0 = Eigen::VectorXd::Zero(6);
  cfg.p_true = Eigen::Vector2d(5.0, 25.0);

  std::vector<direst::GridPoint> pts;
  const auto root = direst::GridPoint::center(2);
  pts.push_back(root);
  for (std::size_t d = 0; d < 2; ++d) {
    pts.push_back(root.with_offset(d, -1, 0));
    pts.push_back(root.with_offset(d, +1, 0));
  }
  while (pts.size() < static_cast<std::size_t>(state.range(0)))
    pts.push_back(pts[pts.size() - 5].with_offset(0, +1, 2));

  direst::Supervisor sup(model, box, cfg, pts);
  const direst::InputSignal input({});
  for (auto _ : state) sup.advance(input);
  benchmark::DoNotOptimize(sup.bank().size());
}
BENCHMARK(BM_supervisor_advance)->Arg(5)->Arg(20);

}  // namespace

BENCHMARK_MAIN();
