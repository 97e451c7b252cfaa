/*
  Shared scalar types and error taxonomy.

  Everything downstream is exact: lattice coordinates are 64-bit (they stay
  tiny), polynomial coefficients are arbitrary-precision integers.
*/
#ifndef QSV_COMMON_HPP
#define QSV_COMMON_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace qsv {

using Int = boost::multiprecision::cpp_int;
using Coord = long long;
using CoordVec = std::vector<Coord>;

// Rejected input: preconditions violated by the caller.
class InvalidInputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A configured resource cap was hit; never a silent truncation.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal invariant failed; signals a bug, not bad input.
class InvariantViolationError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class ParamMode { Quantum, Modular };

inline const char* to_string(ParamMode m) {
  return m == ParamMode::Quantum ? "quantum" : "modular";
}

namespace detail {

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw InvalidInputError(msg);
}

inline void ensure(bool cond, const std::string& msg) {
  if (!cond) throw InvariantViolationError(msg);
}

// FNV-1a over a coordinate vector; used for memo keys.
inline std::size_t hash_coords(const CoordVec& v) {
  std::size_t h = 1469598103934665603ull;
  for (Coord c : v) {
    auto u = static_cast<std::uint64_t>(c);
    for (int i = 0; i < 8; ++i) {
      h ^= (u >> (8 * i)) & 0xff;
      h *= 1099511628211ull;
    }
  }
  return h;
}

struct CoordVecHash {
  std::size_t operator()(const CoordVec& v) const { return hash_coords(v); }
};

}  // namespace detail

}  // namespace qsv

#endif  // QSV_COMMON_HPP
