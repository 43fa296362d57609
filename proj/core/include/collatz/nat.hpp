#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>

namespace collatz {

// Exact unbounded integer used for iterate values and octave indices.
using Nat = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// 2-adic valuation of a positive integer.
inline unsigned v2(const Nat& a) {
  if (a <= 0) throw std::invalid_argument("v2: argument must be >= 1");
  return static_cast<unsigned>(boost::multiprecision::lsb(a));
}

inline unsigned v2_u64(std::uint64_t a) {
  if (a == 0) throw std::invalid_argument("v2: argument must be >= 1");
  return static_cast<unsigned>(__builtin_ctzll(a));
}

}  // namespace collatz
