#pragma once

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>

// boost 1.74's byte-container constructor probe hard-errors when Eigen's
// scalar-promotion machinery asks whether a matrix expression converts to a
// number. Short-circuit the trait for Eigen matrices before pulling in the
// NumTraits glue.
namespace boost {
namespace multiprecision {
namespace detail {
template <class S, int R, int C, int O, int MR, int MC>
struct is_byte_container<Eigen::Matrix<S, R, C, O, MR, MC>> : public std::false_type {};
}  // namespace detail
}  // namespace multiprecision
}  // namespace boost

#include <boost/multiprecision/eigen.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ppp {

using Int = boost::multiprecision::cpp_int;
using IntMat = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;
using IntVec = Eigen::Matrix<Int, Eigen::Dynamic, 1>;

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class BudgetExceeded : public Error {
 public:
  explicit BudgetExceeded(const std::string& what) : Error(what) {}
};

// Mathematical (non-negative) remainder, m > 0.
inline Int mod_floor(const Int& x, const Int& m) {
  Int r = x % m;
  if (r < 0) r += m;
  return r;
}

inline Int abs_int(const Int& x) { return x < 0 ? Int(-x) : x; }

// Largest r >= 0 with r^n <= x, for x >= 0, n >= 1. Binary search on exact
// integers.
inline Int iroot(const Int& x, int n) {
  if (n < 1) throw Error("iroot: n must be >= 1");
  if (x < 0) throw Error("iroot: negative radicand");
  if (n == 1 || x <= 1) return x;
  Int lo = 0, hi = 1;
  while (boost::multiprecision::pow(hi, n) <= x) hi <<= 1;
  // invariant: lo^n <= x < hi^n
  while (hi - lo > 1) {
    Int mid = (lo + hi) / 2;
    if (boost::multiprecision::pow(mid, n) <= x) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

// uint64 fast path used by the bulk floor-claim sweep.
inline std::uint64_t iroot_u64(std::uint64_t x, int n) {
  if (n == 1 || x <= 1) return x;
  std::uint64_t lo = 0, hi = 1;
  auto pow_le = [n](std::uint64_t r, std::uint64_t bound) {
    // true iff r^n <= bound, overflow-safe
    std::uint64_t acc = 1;
    for (int i = 0; i < n; ++i) {
      if (r != 0 && acc > bound / r) return false;
      acc *= r;
    }
    return acc <= bound;
  };
  while (pow_le(hi, x)) hi <<= 1;
  while (hi - lo > 1) {
    std::uint64_t mid = lo + (hi - lo) / 2;
    if (pow_le(mid, x)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

inline int bit_width_int(const Int& x) {
  if (x <= 0) return 0;
  return static_cast<int>(boost::multiprecision::msb(x)) + 1;
}

// Number of bits needed to index [s] = {0, ..., s-1}, i.e. ceil(log2(s)).
inline int ceil_log2(const Int& s) {
  if (s <= 0) throw Error("ceil_log2: nonpositive argument");
  return bit_width_int(s - 1);
}

}  // namespace ppp
