#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "direst/errors.hpp"
#include "direst/exact.hpp"

namespace direst {

// One coordinate of a sample point in the normalized cube, held exactly as
//
//   value = num / (2 * 3^depth),   0 <= num <= 2 * 3^depth.
//
// Every point the dividing procedure produces is a rect center, and centers
// live on this lattice: the root center is 1/2 and each trisection offsets a
// center by 3^-(j+1). The representation is canonical (num not divisible by 3
// unless depth is 0), so equality and ordering are plain integer comparisons.
class Coord {
 public:
  Coord() : num_(1), depth_(0) {}  // 1/2
  Coord(BigInt num, std::uint32_t depth) : num_(std::move(num)), depth_(depth) {
    if (num_ < 0 || num_ > 2 * pow3(depth_))
      throw DomainError("coordinate outside [0,1]");
    canonicalize();
  }

  const BigInt& num() const { return num_; }
  std::uint32_t depth() const { return depth_; }
  BigInt den() const { return 2 * pow3(depth_); }

  // Numerator after unreducing to the given depth (depth >= this->depth()).
  BigInt num_at_depth(std::uint32_t d) const { return num_ * pow3(d - depth_); }

  // This coordinate shifted by sign * 3^-(j+1); stays canonical because the
  // unreduced numerator is divisible by 3 and the shift adds +-2.
  Coord offset(int sign, std::uint32_t j) const {
    BigInt n = num_at_depth(j + 1) + (sign >= 0 ? 2 : -2);
    return Coord(std::move(n), j + 1);
  }

  double to_double() const {
    long double v = num_.convert_to<long double>();
    for (std::uint32_t i = 0; i < depth_; ++i) v /= 3.0L;
    return static_cast<double>(v / 2.0L);
  }

  std::string to_string() const {
    return num_.str() + "/" + den().str();
  }

  friend bool operator==(const Coord& a, const Coord& b) {
    return a.depth_ == b.depth_ && a.num_ == b.num_;
  }
  friend bool operator!=(const Coord& a, const Coord& b) { return !(a == b); }
  friend bool operator<(const Coord& a, const Coord& b) {
    if (a.depth_ == b.depth_) return a.num_ < b.num_;
    // Cross-multiply over the common denominator 2 * 3^max.
    if (a.depth_ < b.depth_) return a.num_at_depth(b.depth_) < b.num_;
    return a.num_ < b.num_at_depth(a.depth_);
  }

 private:
  void canonicalize() {
    while (depth_ > 0 && num_ % 3 == 0) {
      num_ /= 3;
      --depth_;
    }
  }

  BigInt num_;
  std::uint32_t depth_;
};

// A sample point: one Coord per parameter dimension.
class GridPoint {
 public:
  GridPoint() = default;
  explicit GridPoint(std::vector<Coord> coords) : coords_(std::move(coords)) {}

  // Center of the normalized cube (1/2, ..., 1/2).
  static GridPoint center(int n_p) {
    if (n_p < 1) throw InvalidDimensionError("parameter dimension must be >= 1");
    return GridPoint(std::vector<Coord>(static_cast<std::size_t>(n_p)));
  }

  int dim() const { return static_cast<int>(coords_.size()); }
  const Coord& operator[](std::size_t i) const { return coords_[i]; }
  const std::vector<Coord>& coords() const { return coords_; }

  GridPoint with_offset(std::size_t d, int sign, std::uint32_t j) const {
    std::vector<Coord> c = coords_;
    c[d] = c[d].offset(sign, j);
    return GridPoint(std::move(c));
  }

  std::vector<double> to_doubles() const {
    std::vector<double> v;
    v.reserve(coords_.size());
    for (const Coord& c : coords_) v.push_back(c.to_double());
    return v;
  }

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      if (i) s += ",";
      s += coords_[i].to_string();
    }
    return s;
  }

  friend bool operator==(const GridPoint& a, const GridPoint& b) {
    return a.coords_ == b.coords_;
  }
  friend bool operator!=(const GridPoint& a, const GridPoint& b) { return !(a == b); }
  friend bool operator<(const GridPoint& a, const GridPoint& b) {
    return a.coords_ < b.coords_;
  }

 private:
  std::vector<Coord> coords_;
};

}  // namespace direst
