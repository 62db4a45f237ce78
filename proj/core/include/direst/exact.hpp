#pragma once

#include <cstdint>

#include <boost/multiprecision/cpp_int.hpp>

namespace direst {

// Exact integer used for base-3 grid geometry. Division sequences can push
// per-coordinate depth far beyond what 3^depth fits in 64 bits, so all
// tiling/dedup arithmetic runs on arbitrary-precision integers.
using BigInt = boost::multiprecision::cpp_int;

inline BigInt pow3(std::uint32_t e) {
  BigInt r = 1;
  BigInt base = 3;
  while (e) {
    if (e & 1u) r *= base;
    base *= base;
    e >>= 1u;
  }
  return r;
}

}  // namespace direst
