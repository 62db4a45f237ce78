#include "direst/static_direct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "direst/errors.hpp"

namespace direst {

CostFn make_cost_function(const std::string& name, std::vector<double> target) {
  if (target.empty()) throw Error("cost function needs a target point");
  if (name == "sphere") {
    return [target](const std::vector<double>& q) {
      if (q.size() != target.size()) throw InvalidDimensionError("point/target size mismatch");
      double s = 0.0;
      for (std::size_t i = 0; i < q.size(); ++i) s += (q[i] - target[i]) * (q[i] - target[i]);
      return s;
    };
  }
  if (name == "shifted-inf") {
    return [target](const std::vector<double>& q) {
      if (q.size() != target.size()) throw InvalidDimensionError("point/target size mismatch");
      double s = 0.0;
      for (std::size_t i = 0; i < q.size(); ++i) s = std::max(s, std::fabs(q[i] - target[i]));
      return s;
    };
  }
  if (name == "constant") {
    return [](const std::vector<double>&) { return 1.0; };
  }
  throw Error("unknown cost function '" + name + "'");
}

StaticRunResult run_static_direct(const CostFn& fn, int n_p, std::int64_t max_iterations,
                                  const std::vector<double>& target, double eps,
                                  std::optional<double> stop_distance) {
  if (max_iterations < 1) throw Error("need at least one iteration");
  if (stop_distance && target.empty()) throw Error("a stop distance needs a target");
  if (!target.empty() && target.size() != static_cast<std::size_t>(n_p))
    throw InvalidDimensionError("target dimension mismatch");

  StaticRunResult res{Partition(n_p, eps), {}};
  Partition& part = res.partition;

  // Samples only accumulate, so the running minimum over points evaluated so
  // far equals a full scan of part.sample_points() each round.
  double best_dist = std::numeric_limits<double>::infinity();

  while (part.iteration() < max_iterations) {
    CostMap costs;
    for (const GridPoint& p : part.pending_points()) {
      const std::vector<double> q = p.to_doubles();
      if (!target.empty()) {
        double dist = 0.0;
        for (std::size_t d = 0; d < q.size(); ++d)
          dist = std::max(dist, std::fabs(target[d] - q[d]));
        best_dist = std::min(best_dist, dist);
      }
      costs[p] = fn(q);
    }
    part.complete_pending_divisions(costs);

    IterationRecord rec;
    rec.k = part.iteration();
    rec.n_rects = part.rects().size();
    double best = std::numeric_limits<double>::infinity();
    const HyperRect* best_rect = nullptr;
    for (const HyperRect& r : part.rects()) {
      if (*r.last_cost < best) {
        best = *r.last_cost;
        best_rect = &r;
      }
    }
    rec.best_cost = best;
    rec.best_point = best_rect->center.to_doubles();
    rec.dist_to_target =
        target.empty() ? std::numeric_limits<double>::quiet_NaN() : best_dist;
    const bool stop = (stop_distance && rec.dist_to_target <= *stop_distance) ||
                      part.iteration() >= max_iterations;
    if (!stop) {
      auto po = part.identify_potentially_optimal();
      std::erase_if(po, [&part](std::uint64_t id) {
        return part.rect_by_id(id).min_side_exp() >= kMaxDivisionDepth;
      });
      rec.n_potentially_optimal = po.size();
      rec.n_new_samples = part.request_divisions(po).size();
      if (po.empty()) {
        res.log.push_back(std::move(rec));
        break;  // everything left is at the refinement cap
      }
    }
    res.log.push_back(std::move(rec));
    if (stop) break;
  }
  return res;
}

}  // namespace direst
