#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "direst/grid_point.hpp"

namespace direst {

// Axis-aligned cell of the normalized cube. The side length along dimension d
// is exactly 3^-side_exp[d]; the center lies on the half-integer base-3 grid.
struct HyperRect {
  std::uint64_t id = 0;
  GridPoint center;
  std::vector<std::uint32_t> side_exp;  // trisection count per dimension
  std::optional<double> last_cost;      // most recent cost observed at center

  int dim() const { return static_cast<int>(side_exp.size()); }

  // Total number of single-dimension trisections this rect has undergone.
  std::uint64_t divisions() const {
    return std::accumulate(side_exp.begin(), side_exp.end(), std::uint64_t{0});
  }

  std::uint32_t min_side_exp() const {
    std::uint32_t m = side_exp[0];
    for (std::uint32_t e : side_exp) m = std::min(m, e);
    return m;
  }

  // Dimensions with maximal side length (minimal exponent), ascending.
  std::vector<std::size_t> longest_dims() const {
    std::uint32_t m = min_side_exp();
    std::vector<std::size_t> dims;
    for (std::size_t d = 0; d < side_exp.size(); ++d)
      if (side_exp[d] == m) dims.push_back(d);
    return dims;
  }

  // Center-to-vertex (half-diagonal) distance. long double keeps 3^-2j alive
  // to depths far past anything a test horizon can reach.
  long double half_diagonal() const {
    long double s = 0.0L;
    for (std::uint32_t e : side_exp) s += inv9(e);
    return 0.5L * sqrtl(s);
  }

  // 9^-e, table-backed: half-diagonal runs over every rect each selection.
  static long double inv9(std::uint32_t e) {
    static constexpr std::uint32_t kTable = 256;
    struct Table {
      long double v[kTable];
      Table() {
        v[0] = 1.0L;
        for (std::uint32_t i = 1; i < kTable; ++i) v[i] = v[i - 1] / 9.0L;
      }
    };
    static const Table t;
    if (e < kTable) return t.v[e];
    long double x = t.v[kTable - 1];
    for (std::uint32_t i = kTable - 1; i < e; ++i) x /= 9.0L;
    return x;
  }

  // Exact face interval along dimension d: [a, a+1] / 3^side_exp[d].
  // The center coordinate unreduces to (2a+1) / (2 * 3^side_exp[d]).
  std::pair<BigInt, BigInt> interval(std::size_t d) const {
    BigInt n = center[d].num_at_depth(side_exp[d]);  // odd
    BigInt a = (n - 1) / 2;
    return {a, a + 1};
  }

  // Exact comparison of half-diagonals via sum of 9^-j over a common
  // denominator; used where float ties would be ambiguous.
  static int compare_half_diagonal(const HyperRect& x, const HyperRect& y) {
    std::uint32_t m = 0;
    for (std::uint32_t e : x.side_exp) m = std::max(m, e);
    for (std::uint32_t e : y.side_exp) m = std::max(m, e);
    BigInt sx = 0, sy = 0;
    for (std::uint32_t e : x.side_exp) sx += pow3(2 * (m - e));
    for (std::uint32_t e : y.side_exp) sy += pow3(2 * (m - e));
    if (sx < sy) return -1;
    if (sx > sy) return 1;
    return 0;
  }
};

}  // namespace direst
