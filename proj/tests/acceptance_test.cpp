// Acceptance checks for the whole toolkit. Every case prints one
// "ACCEPTANCE Cn <name>: PASS/FAIL" line so a log scan shows the verdicts
// without digging through doctest output; the CHECKs make ctest agree.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "direst/errors.hpp"
#include "direst/event_log.hpp"
#include "direst/input_signal.hpp"
#include "direst/integrate.hpp"
#include "direst/monitor.hpp"
#include "direst/neural_mass.hpp"
#include "direst/param_box.hpp"
#include "direst/partition.hpp"
#include "direst/run.hpp"
#include "direst/scenario.hpp"
#include "direst/static_direct.hpp"
#include "direst/supervisor.hpp"
#include "support/po_oracle.hpp"

using namespace direst;

namespace {

void report(const std::string& id, const std::string& name, bool pass,
            const std::string& detail = "") {
  std::string line = "ACCEPTANCE " + id + " " + name + ": " + (pass ? "PASS" : "FAIL");
  if (!detail.empty()) line += " (" + detail + ")";
  std::printf("%s\n", line.c_str());
  std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  REQUIRE(f.good());
  std::string s((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  return s;
}

// The flagship scenario runs once; later cases reuse its artifacts.
struct FlagshipRun {
  Scenario sc;
  RunOutput out;
  std::vector<EventRecord> events;
  Trajectory traj;
  double elapsed_s = 0.0;
  std::string dir;
};

const FlagshipRun& flagship() {
  static const FlagshipRun run = [] {
    FlagshipRun f;
    f.sc = load_scenario_file(std::string(DIREST_CONFIG_DIR) + "/flagship.cfg");
    f.dir = (std::filesystem::temp_directory_path() / "direst_acceptance_flagship").string();
    std::filesystem::remove_all(f.dir);
    const auto t0 = std::chrono::steady_clock::now();
    f.out = run_scenario(f.sc, f.dir);
    f.elapsed_s = seconds_since(t0);
    std::ifstream ev(f.out.events_path);
    f.events = read_events(ev);
    std::ifstream tr(f.out.trajectory_path);
    f.traj = Trajectory::read_csv(tr);
    return f;
  }();
  return run;
}

}  // namespace

TEST_CASE("C1 exact tiling under random division sequences") {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  for (int trial = 0; trial < 1000 && ok; ++trial) {
    std::mt19937_64 rng(9100 + static_cast<std::uint64_t>(trial));
    const int n_p = 1 + trial % 3;
    const int rounds = 2 + (trial / 3) % 3;
    const Partition part = testing::random_partition(rng, n_p, rounds);
    ok = part.volume_sums_to_one() && part.interiors_pairwise_disjoint();
    CHECK(part.volume_sums_to_one());
    CHECK(part.interiors_pairwise_disjoint());
  }
  const double el = seconds_since(t0);
  const bool in_budget = el < 10.0;
  CHECK(in_budget);
  report("C1", "exact-tiling", ok && in_budget,
         "1000 partitions, " + std::to_string(el).substr(0, 5) + " s");
}

TEST_CASE("C2 hull selection matches the pairwise-interval oracle") {
  bool ok = true;
  int compared = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n_p = 1 + trial % 3;
    int rounds = 2 + trial % 3;
    for (const double eps : {0.0, 1e-5, 1e-3}) {
      // Same seed for every eps: identical structure, different threshold.
      std::mt19937_64 rng(26100 + static_cast<std::uint64_t>(trial));
      Partition part = testing::random_partition(rng, n_p, rounds, eps);
      if (part.rects().size() > 50) {
        std::mt19937_64 rng2(26100 + static_cast<std::uint64_t>(trial));
        part = testing::random_partition(rng2, n_p, 2, eps);
      }
      REQUIRE(part.rects().size() <= 50);
      std::vector<std::uint64_t> got = part.identify_potentially_optimal();
      std::vector<std::uint64_t> want = testing::po_oracle(part, eps);
      std::sort(got.begin(), got.end());
      std::sort(want.begin(), want.end());
      ok = ok && got == want;
      CHECK(got == want);
      ++compared;
    }
  }
  report("C2", "selection-oracle", ok, std::to_string(compared) + " comparisons");
}

TEST_CASE("C3 guaranteed resolution after the published iteration count") {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  int runs = 0;
  for (const int n_p : {1, 2}) {
    std::vector<std::vector<double>> targets;
    if (n_p == 1) {
      for (int i = 1; i <= 25; ++i) targets.push_back({i / 26.0});
    } else {
      for (double a : {0.1, 0.3, 0.5, 0.7, 0.9})
        for (double b : {0.1, 0.3, 0.5, 0.7, 0.9}) targets.push_back({a, b});
    }
    for (const double d_star : {0.5, 0.1}) {
      const std::int64_t k = termination_iterations(n_p, d_star);
      for (const auto& target : targets) {
        const StaticRunResult res =
            run_static_direct(make_cost_function("sphere", target), n_p, k, target);
        REQUIRE(!res.log.empty());
        const double dist = res.log.back().dist_to_target;
        ok = ok && dist <= d_star;
        CHECK(dist <= d_star);
        ++runs;
      }
    }
  }
  const double el = seconds_since(t0);
  const bool in_budget = el < 60.0;
  CHECK(in_budget);
  report("C3", "coverage-guarantee", ok && in_budget,
         std::to_string(runs) + " runs, " + std::to_string(el).substr(0, 5) + " s");
}

TEST_CASE("C4 sampling gets dense even under adversarial costs") {
  const std::vector<double> target = {0.95, 0.95};
  bool ok = true;
  std::string detail;
  // Flat costs exercise pure space filling; the max-norm cone around the
  // opposite corner pulls every greedy division away from the target.
  const std::vector<std::pair<std::string, CostFn>> cases = {
      {"constant", make_cost_function("constant", target)},
      {"adversarial", make_cost_function("shifted-inf", {0.05, 0.05})}};
  for (const auto& [label, fn] : cases) {
    const StaticRunResult res =
        run_static_direct(fn, 2, 2000, target, kDefaultEpsilon, 0.05);
    REQUIRE(!res.log.empty());
    bool monotone = true;
    for (std::size_t i = 1; i < res.log.size(); ++i)
      monotone = monotone && res.log[i].dist_to_target <= res.log[i - 1].dist_to_target;
    const double dist = res.log.back().dist_to_target;
    const auto iters = static_cast<long long>(res.log.size());
    CHECK(monotone);
    CHECK(dist <= 0.05);
    CHECK(iters <= 2000);
    ok = ok && monotone && dist <= 0.05 && iters <= 2000;
    if (!detail.empty()) detail += ", ";
    detail += label + " " + std::to_string(iters) + " iters";
  }
  report("C4", "sampling-density", ok, detail);
}

namespace {
class DecayField : public VectorField {
 public:
  Eigen::Index dim() const override { return 1; }
  Eigen::Index input_dim() const override { return 0; }
  void eval(double, const Eigen::VectorXd& x, const Eigen::VectorXd&,
            Eigen::VectorXd& dxdt) const override {
    dxdt[0] = -x[0];
  }
};
}  // namespace

TEST_CASE("C5 integrator shows fourth-order step-halving behavior") {
  const DecayField f;
  const InputFn no_input = [](double) { return Eigen::VectorXd(0); };
  const double exact = std::exp(-1.0);
  auto end_error = [&](double dt) {
    Eigen::VectorXd x = Eigen::VectorXd::Ones(1);
    const auto steps = static_cast<int>(std::llround(1.0 / dt));
    for (int i = 0; i < steps; ++i) x = rk4_step(f, x, i * dt, dt, no_input);
    return std::fabs(x[0] - exact);
  };
  const double ratio = end_error(0.1) / end_error(0.05);
  const bool ok = ratio >= 12.0 && ratio <= 20.0;
  CHECK(ratio >= 12.0);
  CHECK(ratio <= 20.0);
  report("C5", "integrator-order", ok, "error ratio " + std::to_string(ratio));
}

TEST_CASE("C6 monitor decays exactly and tracks constant forcing") {
  const double lambda = 0.05;
  const double dt = 1e-3;

  // Zero output error: nothing but the exponential factor, bit for bit.
  const double decay = std::exp(-lambda * dt);
  double mu = 3.7;
  double expected = 3.7;
  bool exact = true;
  for (int i = 0; i < 100000; ++i) {
    mu = monitor_update(mu, 0.0, 0.0, lambda, dt);
    expected *= decay;
    exact = exact && mu == expected;
  }
  CHECK(exact);

  // Constant forcing c settles at c / lambda; five time constants get
  // within one percent.
  const double c = 0.2;
  double mu2 = 0.0;
  const auto steps = static_cast<int>(std::llround(5.0 / lambda / dt));
  for (int i = 0; i < steps; ++i) mu2 = monitor_update(mu2, c, c, lambda, dt);
  const double rel = std::fabs(mu2 - c / lambda) / (c / lambda);
  const bool settled = rel <= 0.01;
  CHECK(settled);

  report("C6", "monitor-forgetting", exact && settled,
         "relative gap " + std::to_string(rel));
}

TEST_CASE("C7 matched observer contracts the state error") {
  // Settle-time commitment: the error must shrink by 1e3 within 5 seconds.
  // The copied dynamics are open-loop stable with the slowest pole near 50/s,
  // so this leaves two orders of magnitude of slack.
  constexpr double kSettleTime = 5.0;

  const FlagshipRun& f = flagship();
  const auto model = make_model(f.sc);
  Eigen::VectorXd lo(2), hi(2);
  lo << f.sc.box_lower[0], f.sc.box_lower[1];
  hi << f.sc.box_upper[0], f.sc.box_upper[1];
  const ParamBox box(lo, hi);

  SupervisorConfig cfg;
  cfg.dt = f.sc.dt;
  cfg.T_d = f.sc.T_d;
  cfg.lambda = f.sc.lambda;
  cfg.x0 = Eigen::VectorXd::Zero(6);
  cfg.xhat0 = Eigen::VectorXd::Zero(6);
  cfg.xhat0 << 0.5, 0.0, 0.5, 0.0, 0.5, 0.0;  // deliberately off the plant state
  cfg.p_true = box.denormalize(GridPoint::center(2));  // exactly representable
  cfg.state_bound = f.sc.state_bound;

  Supervisor sup(*model, box, cfg, {GridPoint::center(2)});
  const InputSignal input(f.sc.input);
  const double err0 = (cfg.x0 - cfg.xhat0).cwiseAbs().maxCoeff();
  REQUIRE(err0 > 0.0);

  const auto steps = static_cast<int>(std::llround(kSettleTime / cfg.dt));
  for (int i = 0; i < steps; ++i) sup.advance(input);

  const double err =
      (sup.plant_state() - sup.bank()[0].xhat).cwiseAbs().maxCoeff();
  const bool contracted = err < 1e-3 * err0;
  const bool bounded = !sup.bound_exceeded();
  CHECK(contracted);
  CHECK(bounded);
  char ratio[32];
  std::snprintf(ratio, sizeof(ratio), "%.2e", err / err0);
  report("C7", "matched-contraction", contracted && bounded,
         std::string("final/initial = ") + ratio);
}

TEST_CASE("C8 end-to-end joint estimation hits the error bounds") {
  const FlagshipRun& f = flagship();
  // The claim is tied to this operating point; fail loudly if the config drifts.
  REQUIRE(f.sc.dt == 1e-3);
  REQUIRE(f.sc.T_d == 10.0);
  REQUIRE(f.sc.t_f == 100.0);
  REQUIRE(f.sc.lambda == 0.05);
  REQUIRE(f.sc.epsilon == 1e-5);

  const bool param_ok = f.out.metrics.final_param_error <= 0.5;
  const bool state_ok = f.out.metrics.normalized_state_error <= 0.05;
  const bool start_ok = !f.events.empty() && f.events.front().n_observers == 5;
  const bool time_ok = f.elapsed_s < 300.0;
  CHECK(param_ok);
  CHECK(state_ok);
  CHECK(start_ok);
  CHECK(time_ok);
  report("C8", "joint-estimation", param_ok && state_ok && start_ok && time_ok,
         "param err " + std::to_string(f.out.metrics.final_param_error) + ", state err " +
             std::to_string(f.out.metrics.normalized_state_error) + ", " +
             std::to_string(f.elapsed_s).substr(0, 5) + " s");
}

TEST_CASE("C9 the bank collapses on schedule and the estimate freezes") {
  const FlagshipRun& f = flagship();
  const double t_term = static_cast<double>(f.sc.resolve_k_star()) * f.sc.T_d;

  bool saw_terminal_event = false;
  bool bank_ok = true;
  for (const EventRecord& e : f.events) {
    if (e.t >= t_term - 1e-9) {
      saw_terminal_event = true;
      bank_ok = bank_ok && e.n_observers == 1 && e.single_mode;
    }
  }
  CHECK(saw_terminal_event);
  CHECK(bank_ok);

  const std::size_t p1 = f.traj.col_index("phat1");
  const std::size_t p2 = f.traj.col_index("phat2");
  const std::size_t n_obs = f.traj.col_index("n_obs");
  const std::size_t last = f.traj.size() - 1;
  bool frozen = true;
  bool single = true;
  for (std::size_t r = 0; r < f.traj.size(); ++r) {
    if (f.traj.time(r) < t_term - 1e-9) continue;
    frozen = frozen && f.traj.value(r, p1) == f.traj.value(last, p1) &&
             f.traj.value(r, p2) == f.traj.value(last, p2);
    // The row at the collapse instant itself is written before the event.
    if (f.traj.time(r) > t_term + 1e-9) single = single && f.traj.value(r, n_obs) == 1.0;
  }
  CHECK(frozen);
  CHECK(single);
  report("C9", "scheduled-termination", saw_terminal_event && bank_ok && frozen && single,
         "freeze at t = " + std::to_string(t_term).substr(0, 4));
}

TEST_CASE("C10 a rerun reproduces every artifact byte for byte") {
  const FlagshipRun& f = flagship();
  const auto dir2 =
      std::filesystem::temp_directory_path() / "direst_acceptance_flagship_rerun";
  std::filesystem::remove_all(dir2);
  const RunOutput again = run_scenario(f.sc, dir2.string());

  const bool traj_same = slurp(f.out.trajectory_path) == slurp(again.trajectory_path);
  const bool events_same = slurp(f.out.events_path) == slurp(again.events_path);
  const bool metrics_same = slurp(f.out.metrics_path) == slurp(again.metrics_path);
  CHECK(traj_same);
  CHECK(events_same);
  CHECK(metrics_same);
  report("C10", "determinism", traj_same && events_same && metrics_same);
  std::filesystem::remove_all(dir2);
}
