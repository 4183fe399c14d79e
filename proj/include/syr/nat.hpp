#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

namespace syr {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

// Arbitrary-precision non-negative integer.
using Nat = mpz_class;

inline constexpr double kLn2 = std::numbers::ln2;
inline constexpr double kLn3 = 1.0986122886681096913952452369225;
inline constexpr double kInvLn2 = 1.4426950408889634073599246810019;  // log2(e)

// Largest value whose 3n+1 still fits in 128 bits.
inline constexpr u128 kMaxSafeStep = ((~u128{0}) - 1) / 3;

inline bool fits_u128(const Nat& n) {
  return mpz_sgn(n.get_mpz_t()) >= 0 && mpz_sizeinbase(n.get_mpz_t(), 2) <= 128;
}

inline u128 to_u128(const Nat& n) {
  Nat hi = n >> 64;
  return (u128{mpz_get_ui(hi.get_mpz_t())} << 64) | mpz_get_ui(n.get_mpz_t());
}

inline Nat from_u128(u128 v) {
  Nat hi{static_cast<unsigned long>(v >> 64)};
  hi <<= 64;
  hi += static_cast<unsigned long>(v);
  return hi;
}

inline std::string to_string(u128 v) {
  if (v == 0) return "0";
  char buf[48];
  int pos = 0;
  while (v > 0) {
    buf[pos++] = char('0' + int(v % 10));
    v /= 10;
  }
  std::string s;
  s.reserve(pos);
  while (pos > 0) s += buf[--pos];
  return s;
}

// log2 of a big integer from its bit length and leading mantissa bits.
// Absolute error is a few ulps, far below the 1e-9 tolerances used anywhere.
inline double log2_nat(const Nat& n) {
  if (mpz_sgn(n.get_mpz_t()) <= 0) throw std::domain_error("log2_nat: n must be >= 1");
  signed long e = 0;
  double d = mpz_get_d_2exp(&e, n.get_mpz_t());
  return double(e) + std::log2(d);
}

inline double ln_nat(const Nat& n) { return log2_nat(n) * kLn2; }

}  // namespace syr
