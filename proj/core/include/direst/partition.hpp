#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <vector>

#include "direst/hyper_rect.hpp"

namespace direst {

// Relative-improvement filter on the potentially-optimal selection.
inline constexpr double kDefaultEpsilon = 1e-5;

// Drivers skip dividing rects whose longest side is already 3^-32 (~1.5e-15).
// Below that scale neighboring centers collapse onto identical doubles, whole
// subtrees tie at exactly the running best cost, and the improvement filter
// loses its margin (eps * |best| is zero at best == 0), so the tied family
// would otherwise grow without bound. The cap sits far below any useful
// sample resolution, leaving the space-coverage guarantees untouched.
inline constexpr std::uint32_t kMaxDivisionDepth = 32;

// Costs keyed by exact sample point.
using CostMap = std::map<GridPoint, double>;

// Adaptive trisection partition of the normalized cube [0,1]^n_p.
//
// The cube starts as a single rect. Each iteration the driver asks for the
// potentially-optimal rects, requests their division (which emits new sample
// points at center +- side/3 along every longest dimension), obtains costs for
// those points, and completes the divisions. Completion is deferred so that
// cost evaluation can overlap whatever process produces the costs.
//
// All geometry is exact: centers are half-integers over powers of 3, so
// tiling, dedup and containment are integer checks.
class Partition {
 public:
  // Fresh partition: one root rect covering the cube, with the root center
  // and one +-side/3 offset pair per dimension pending evaluation.
  explicit Partition(int n_p, double eps = kDefaultEpsilon);

  int dim() const { return n_p_; }
  double eps() const { return eps_; }
  std::int64_t iteration() const { return iteration_; }
  std::optional<double> mu_hat() const { return mu_hat_; }

  const std::vector<HyperRect>& rects() const { return rects_; }
  const HyperRect& rect_by_id(std::uint64_t id) const;

  // Id of the rect centered exactly at the given point, if there is one.
  std::optional<std::uint64_t> rect_id_at(const GridPoint& center) const;

  // Centers of all current rects. Every point ever sampled stays a center
  // (divisions shrink the rect around it), so this is the full sample set.
  std::vector<GridPoint> sample_points() const;

  // Outstanding evaluation requests, in emission order.
  std::vector<GridPoint> pending_points() const;
  bool has_pending() const { return !pending_.empty(); }

  // Finalize every outstanding division using the supplied costs. For each
  // dividing rect the trisection order is ascending in
  //     w_d = min(cost(center - delta e_d), cost(center + delta e_d)),
  // ties broken toward the lower dimension index; the first-divided
  // dimension's outer thirds keep the other dimensions' full lengths. New
  // rects take the supplied cost at their center; existing rects whose center
  // appears in the map get their cost refreshed. Afterwards the running best
  // cost is updated (first completion: the root-center cost; later ones: the
  // minimum over all rect costs) and the iteration counter advances.
  void complete_pending_divisions(const CostMap& costs);

  // Rect ids that are potentially optimal at the current costs: there must be
  // a weight L > 0 making the rect's cost-minus-L*halfdiagonal minimal over
  // all rects and at least eps*|best| below the running best cost. Computed
  // via the lower-right convex hull of (half-diagonal, cost) per size group.
  // Never empty: the largest-size group's best rect always qualifies; should
  // the filter ever reject everything, that rect is returned with a warning.
  std::vector<std::uint64_t> identify_potentially_optimal() const;

  // Emit division requests for the given rects: for every longest dimension,
  // the two offset points become pending samples. Returns the new points in
  // emission order (rect id ascending, dimension ascending, minus before
  // plus), coalesced to unique points.
  std::vector<GridPoint> request_divisions(const std::vector<std::uint64_t>& ids);

  // Exact integrity checks (integer arithmetic, no floating point).
  bool volume_sums_to_one() const;
  bool interiors_pairwise_disjoint() const;

  // Structured text snapshot (one line per rect), schema "partition v1".
  void write_snapshot(std::ostream& os) const;

 private:
  struct PendingEntry {
    std::uint64_t rect_id;
    std::size_t dim;
    GridPoint minus, plus;
  };

  std::size_t index_of(std::uint64_t id) const;

  int n_p_;
  double eps_;
  std::int64_t iteration_ = 0;
  std::optional<double> mu_hat_;
  std::uint64_t next_id_ = 0;
  std::vector<HyperRect> rects_;
  std::map<GridPoint, std::size_t> center_to_rect_;
  std::vector<PendingEntry> pending_;
  bool root_center_pending_ = false;
};

// Smallest iteration budget that guarantees every point of the cube has a
// sample within d_star (Euclidean, hence also max-norm): with i the smallest
// integer such that sqrt(n_p * 3^(-2i)) / 2 <= d_star,
//     k_star = 3^(n_p-1) * (3^(n_p (i+1)) - 1) / (3^n_p - 1).
std::int64_t termination_iterations(int n_p, double d_star);

// Smallest max-norm distance from p_star to any sample point.
double min_distance_to_samples(const std::vector<double>& p_star,
                               const std::vector<GridPoint>& samples);

}  // namespace direst
