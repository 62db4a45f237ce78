#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <vector>

#include "direst/partition.hpp"

using namespace direst;

TEST_CASE("guaranteed-coverage iteration counts") {
  // Hand-evaluated from the closed form: i is the smallest integer with
  // sqrt(n_p) / (2 * 3^i) <= d_star, then
  // k = 3^(n_p-1) * (3^(n_p (i+1)) - 1) / (3^n_p - 1).
  CHECK(termination_iterations(1, 0.5) == 1);
  CHECK(termination_iterations(1, 0.17) == 4);    // i = 1: 1/6 <= 0.17
  CHECK(termination_iterations(1, 0.1) == 13);    // i = 2
  CHECK(termination_iterations(2, 0.8) == 3);     // i = 0: sqrt(2)/2 <= 0.8
  CHECK(termination_iterations(2, 0.71) == 3);
  CHECK(termination_iterations(2, 0.5) == 30);    // i = 1
  CHECK(termination_iterations(2, 0.1) == 273);   // i = 2
  CHECK(termination_iterations(3, 0.9) == 9);     // i = 0
}

TEST_CASE("coverage counts grow with tighter resolution and more dimensions") {
  long long prev = 0;
  for (double d = 0.9; d > 0.05; d *= 0.5) {
    const long long k = termination_iterations(2, d);
    CHECK(k >= prev);
    prev = k;
  }
  CHECK(termination_iterations(3, 0.1) > termination_iterations(2, 0.1));
}

TEST_CASE("invalid coverage arguments are rejected") {
  CHECK_THROWS_AS(termination_iterations(0, 0.5), InvalidDimensionError);
  CHECK_THROWS_AS(termination_iterations(1, 0.0), InvalidResolutionError);
  CHECK_THROWS_AS(termination_iterations(1, -1.0), InvalidResolutionError);
  CHECK_THROWS_AS(termination_iterations(1, std::numeric_limits<double>::infinity()),
                  InvalidResolutionError);
  // The exact count for this resolution exceeds a 64-bit counter.
  CHECK_THROWS_AS(termination_iterations(40, 1e-9), InvalidResolutionError);
}

TEST_CASE("nearest-sample distance uses the max norm") {
  const std::vector<GridPoint> one = {GridPoint::center(1)};
  CHECK(min_distance_to_samples({0.3}, one) == doctest::Approx(0.2).epsilon(1e-15));

  const std::vector<GridPoint> pair = {GridPoint({Coord(1, 1)}), GridPoint({Coord(5, 1)})};
  CHECK(min_distance_to_samples({0.0}, pair) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));

  const std::vector<GridPoint> c2 = {GridPoint::center(2)};
  CHECK(min_distance_to_samples({0.1, 0.4}, c2) == doctest::Approx(0.4).epsilon(1e-15));
}

TEST_CASE("nearest-sample distance rejects malformed queries") {
  CHECK_THROWS_AS(min_distance_to_samples({0.5}, {}), Error);
  CHECK_THROWS_AS(min_distance_to_samples({0.5, 0.5}, {GridPoint::center(1)}),
                  InvalidDimensionError);
}
