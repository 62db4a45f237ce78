#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <limits>
#include <random>
#include <set>
#include <sstream>

#include "direst/partition.hpp"
#include "support/po_oracle.hpp"

using namespace direst;

namespace {

GridPoint pt2(const Coord& a, const Coord& b) { return GridPoint({a, b}); }

const Coord kHalf;           // 1/2
const Coord kLo(1, 1);       // 1/6
const Coord kHi(5, 1);       // 5/6

}  // namespace

TEST_CASE("a fresh partition pends the center and one offset pair per dimension") {
  Partition part(2);
  CHECK(part.dim() == 2);
  CHECK(part.iteration() == 0);
  CHECK(!part.mu_hat());
  CHECK(part.rects().size() == 1);
  CHECK(part.rects()[0].side_exp == std::vector<std::uint32_t>{0, 0});
  CHECK(part.has_pending());

  const auto pending = part.pending_points();
  REQUIRE(pending.size() == 5);
  CHECK(pending[0] == GridPoint::center(2));
  CHECK(pending[1] == pt2(kLo, kHalf));
  CHECK(pending[2] == pt2(kHi, kHalf));
  CHECK(pending[3] == pt2(kHalf, kLo));
  CHECK(pending[4] == pt2(kHalf, kHi));
}

TEST_CASE("first division trisects the cheaper dimension first") {
  Partition part(2);
  CostMap costs;
  costs[GridPoint::center(2)] = 1.0;
  costs[pt2(kLo, kHalf)] = 3.0;   // dim 0 best offspring: min(3, 2) = 2
  costs[pt2(kHi, kHalf)] = 2.0;
  costs[pt2(kHalf, kLo)] = 5.0;   // dim 1 best offspring: min(5, 4) = 4
  costs[pt2(kHalf, kHi)] = 4.0;
  part.complete_pending_divisions(costs);

  CHECK(part.iteration() == 1);
  CHECK(part.mu_hat() == 1.0);  // the center cost seeds the running best
  CHECK(!part.has_pending());
  REQUIRE(part.rects().size() == 5);

  // Dim 0 is divided first, so its outer thirds keep dim 1's full length.
  CHECK(part.rect_by_id(0).center == GridPoint::center(2));
  CHECK(part.rect_by_id(0).side_exp == std::vector<std::uint32_t>{1, 1});
  CHECK(part.rect_by_id(1).center == pt2(kLo, kHalf));
  CHECK(part.rect_by_id(1).side_exp == std::vector<std::uint32_t>{1, 0});
  CHECK(part.rect_by_id(2).center == pt2(kHi, kHalf));
  CHECK(part.rect_by_id(2).side_exp == std::vector<std::uint32_t>{1, 0});
  CHECK(part.rect_by_id(3).center == pt2(kHalf, kLo));
  CHECK(part.rect_by_id(3).side_exp == std::vector<std::uint32_t>{1, 1});
  CHECK(part.rect_by_id(4).center == pt2(kHalf, kHi));
  CHECK(part.rect_by_id(4).side_exp == std::vector<std::uint32_t>{1, 1});

  CHECK(*part.rect_by_id(0).last_cost == 1.0);
  CHECK(*part.rect_by_id(3).last_cost == 5.0);
  CHECK(part.volume_sums_to_one());
  CHECK(part.interiors_pairwise_disjoint());
}

TEST_CASE("division order flips when the other dimension looks better") {
  Partition part(2);
  CostMap costs;
  costs[GridPoint::center(2)] = 1.0;
  costs[pt2(kLo, kHalf)] = 5.0;
  costs[pt2(kHi, kHalf)] = 4.0;
  costs[pt2(kHalf, kLo)] = 3.0;
  costs[pt2(kHalf, kHi)] = 2.0;
  part.complete_pending_divisions(costs);

  // Children are created in division order: dim 1 first here.
  CHECK(part.rect_by_id(1).center == pt2(kHalf, kLo));
  CHECK(part.rect_by_id(1).side_exp == std::vector<std::uint32_t>{0, 1});
  CHECK(part.rect_by_id(2).center == pt2(kHalf, kHi));
  CHECK(part.rect_by_id(2).side_exp == std::vector<std::uint32_t>{0, 1});
  CHECK(part.rect_by_id(3).center == pt2(kLo, kHalf));
  CHECK(part.rect_by_id(3).side_exp == std::vector<std::uint32_t>{1, 1});
  CHECK(part.rect_by_id(4).center == pt2(kHi, kHalf));
  CHECK(part.rect_by_id(4).side_exp == std::vector<std::uint32_t>{1, 1});
}

TEST_CASE("equal offspring costs break ties toward the lower dimension") {
  Partition part(2);
  CostMap costs;
  costs[GridPoint::center(2)] = 1.0;
  costs[pt2(kLo, kHalf)] = 2.0;
  costs[pt2(kHi, kHalf)] = 7.0;
  costs[pt2(kHalf, kLo)] = 2.0;
  costs[pt2(kHalf, kHi)] = 7.0;
  part.complete_pending_divisions(costs);
  CHECK(part.rect_by_id(1).center == pt2(kLo, kHalf));
  CHECK(part.rect_by_id(1).side_exp == std::vector<std::uint32_t>{1, 0});
}

TEST_CASE("later divisions only trisect the longest dimensions") {
  Partition part(2);
  CostMap costs;
  costs[GridPoint::center(2)] = 1.0;
  costs[pt2(kLo, kHalf)] = 3.0;
  costs[pt2(kHi, kHalf)] = 2.0;
  costs[pt2(kHalf, kLo)] = 5.0;
  costs[pt2(kHalf, kHi)] = 4.0;
  part.complete_pending_divisions(costs);

  // Rect 2 is (5/6, 1/2) with sides (1/3, 1): only dim 1 is longest.
  const auto fresh = part.request_divisions({2});
  REQUIRE(fresh.size() == 2);
  CHECK(fresh[0] == pt2(kHi, kLo));
  CHECK(fresh[1] == pt2(kHi, kHi));
  CHECK(part.has_pending());
  CHECK(part.pending_points() == fresh);

  CostMap round2;
  round2[fresh[0]] = 0.5;
  round2[fresh[1]] = 6.0;
  part.complete_pending_divisions(round2);
  CHECK(part.iteration() == 2);
  CHECK(part.mu_hat() == 0.5);  // global minimum from the second round on
  REQUIRE(part.rects().size() == 7);
  CHECK(part.rect_by_id(2).side_exp == std::vector<std::uint32_t>{1, 1});
  CHECK(part.rect_by_id(5).center == pt2(kHi, kLo));
  CHECK(part.rect_by_id(5).side_exp == std::vector<std::uint32_t>{1, 1});
  CHECK(*part.rect_by_id(5).last_cost == 0.5);
  CHECK(part.volume_sums_to_one());
  CHECK(part.interiors_pairwise_disjoint());
}

TEST_CASE("re-evaluated centers refresh the stored cost") {
  Partition part(1);
  CostMap costs;
  costs[GridPoint::center(1)] = 2.0;
  costs[GridPoint({kLo})] = 3.0;
  costs[GridPoint({kHi})] = 4.0;
  part.complete_pending_divisions(costs);
  CHECK(*part.rect_by_id(0).last_cost == 2.0);

  part.request_divisions({1});
  CostMap round2;
  round2[GridPoint({Coord(1, 2)})] = 1.0;  // 1/18
  round2[GridPoint({Coord(5, 2)})] = 1.5;  // 5/18
  round2[GridPoint::center(1)] = 0.25;     // refresh an existing center
  part.complete_pending_divisions(round2);
  CHECK(*part.rect_by_id(0).last_cost == 0.25);
  CHECK(part.mu_hat() == 0.25);
}

TEST_CASE("lookup helpers answer by exact center") {
  Partition part(2);
  CostMap costs;
  for (const GridPoint& p : part.pending_points()) costs[p] = 1.0;
  part.complete_pending_divisions(costs);

  CHECK(part.rect_id_at(GridPoint::center(2)) == 0);
  CHECK(part.rect_id_at(pt2(kHi, kHalf)) == 2);
  CHECK(!part.rect_id_at(pt2(kLo, kLo)));

  const auto samples = part.sample_points();
  REQUIRE(samples.size() == 5);
  CHECK(samples[0] == GridPoint::center(2));
  CHECK_THROWS_AS(part.rect_by_id(99), Error);
}

TEST_CASE("misuse is rejected") {
  Partition part(1);
  CHECK_THROWS_AS(part.complete_pending_divisions({}), IncompleteEvaluationError);

  CostMap costs;
  costs[GridPoint::center(1)] = 1.0;
  costs[GridPoint({kLo})] = 2.0;
  costs[GridPoint({kHi})] = 3.0;

  CostMap bad = costs;
  bad[GridPoint({kLo})] = -1.0;
  CHECK_THROWS_AS(part.complete_pending_divisions(bad), InvalidCostError);
  bad[GridPoint({kLo})] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(part.complete_pending_divisions(bad), InvalidCostError);

  part.complete_pending_divisions(costs);
  CHECK_THROWS_AS(part.complete_pending_divisions(costs), Error);

  part.request_divisions({1});
  CHECK_THROWS_AS(part.request_divisions({1}), DoubleDivisionError);
  CHECK_THROWS_AS(part.request_divisions({42}), Error);

  CHECK_THROWS_AS(Partition(0), InvalidDimensionError);
  CHECK_THROWS_AS(Partition(1, -0.5), InvalidResolutionError);
}

TEST_CASE("snapshots carry the full rect table") {
  Partition part(1);
  CostMap costs;
  costs[GridPoint::center(1)] = 1.0;
  costs[GridPoint({kLo})] = 2.0;
  costs[GridPoint({kHi})] = 3.0;
  part.complete_pending_divisions(costs);

  std::ostringstream os;
  part.write_snapshot(os);
  const std::string snap = os.str();
  CHECK(snap.find("# direst partition snapshot v1") == 0);
  CHECK(snap.find("n_p=1 iteration=1") != std::string::npos);
  CHECK(snap.find("rect id=0 center=1/2 sides=1 divisions=1 cost=1") != std::string::npos);
  CHECK(snap.find("rect id=1 center=1/6 sides=1 divisions=1 cost=2") != std::string::npos);
}

TEST_CASE("random division sequences keep the exact tiling invariants") {
  std::mt19937_64 rng(20260819);
  for (int trial = 0; trial < 30; ++trial) {
    const int n_p = 1 + trial % 3;
    Partition part = testing::random_partition(rng, n_p, 2 + trial % 4);

    CHECK(part.volume_sums_to_one());
    CHECK(part.interiors_pairwise_disjoint());

    // Every sample is a distinct rect center, and side exponents stay within
    // spread one (longest dimensions always divide first).
    std::set<GridPoint> seen;
    for (const HyperRect& r : part.rects()) {
      CHECK(seen.insert(r.center).second);
      std::uint32_t lo = r.side_exp[0], hi = r.side_exp[0];
      for (std::uint32_t e : r.side_exp) {
        lo = std::min(lo, e);
        hi = std::max(hi, e);
      }
      CHECK(hi - lo <= 1);
      CHECK(r.last_cost.has_value());
    }
    CHECK(seen.size() == part.rects().size());
  }
}
