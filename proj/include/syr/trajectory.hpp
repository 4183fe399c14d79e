#pragma once

#include "syr/nat.hpp"

#include <optional>
#include <vector>

namespace syr {

// Default exploration cap for range scans, far above any total stopping
// time in the supported ranges.
inline constexpr u64 kDefaultStepCap = 100000;

// One step of the accelerated map: (3n+1)/2 on odd n, n/2 on even n.
Nat t_step(const Nat& n);

// Packed parity bits along an orbit; bit i is the parity of the i-th iterate
// (bit 0 is the parity of the start value itself).
class ParityVector {
 public:
  ParityVector() = default;
  explicit ParityVector(u64 length) : len_(length), words_((length + 63) / 64, 0) {}

  u64 size() const { return len_; }
  bool bit(u64 i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
  void set_bit(u64 i, bool v) {
    u64 mask = u64{1} << (i & 63);
    if (v) words_[i >> 6] |= mask;
    else words_[i >> 6] &= ~mask;
  }
  u64 ones() const {
    u64 c = 0;
    for (u64 w : words_) c += u64(__builtin_popcountll(w));
    return c;
  }
  // The vector as an integer, valid for size() <= 64.
  u64 as_word() const;

  bool operator==(const ParityVector&) const = default;

 private:
  u64 len_ = 0;
  std::vector<u64> words_;
};

struct TrajectoryProfile {
  Nat n;
  std::optional<u64> sigma_inf;  // first step count reaching 1; empty = not reached in cap
  Nat t;                         // maximum excursion over the explored prefix
  std::vector<u64> odd_prefix;   // odd_prefix[i] = number of odd terms among the first i+1
  u64 cap = 0;
  u64 explored = 0;              // steps actually taken
  bool end_is_one = false;       // value after `explored` steps is 1

  // Number of odd terms among the first j iterates; for j beyond the explored
  // prefix this extends through the trivial cycle (valid once 1 was reached).
  u64 odd_count_at(u64 j) const;

  bool operator==(const TrajectoryProfile&) const = default;
};

ParityVector parity_vector(const Nat& n, u64 j);
u64 odd_count(const Nat& n, u64 j);
TrajectoryProfile profile(const Nat& n, u64 cap = kDefaultStepCap);

// Exact rational check of T^(j)(n)/n = 2^(-j) * prod(3 + 1/m_k) over the odd
// terms m_k of the first j iterates. q = 0 reduces to the empty product.
bool eliahou_identity_check(const Nat& n, u64 j);

// Promotion-free arbitrary-precision paths, kept as the reference the
// fixed-width fast path is checked against.
ParityVector parity_vector_bignum(const Nat& n, u64 j);
TrajectoryProfile profile_bignum(const Nat& n, u64 cap = kDefaultStepCap);

// Iterates the map in 128-bit arithmetic and promotes the whole remaining
// computation to arbitrary precision when 3n+1 would overflow.
class TWalker {
 public:
  explicit TWalker(const Nat& n);
  explicit TWalker(u64 n) : fast_(n) {
    if (n < 1) throw std::invalid_argument("trajectory start must be >= 1");
  }

  bool odd() const {
    return big_mode_ ? mpz_odd_p(big_.get_mpz_t()) != 0 : (fast_ & 1) != 0;
  }
  bool is_one() const {
    return big_mode_ ? mpz_cmp_ui(big_.get_mpz_t(), 1) == 0 : fast_ == 1;
  }
  void advance() {
    if (!big_mode_) {
      if (fast_ & 1) {
        if (fast_ <= kMaxSafeStep) {
          fast_ = (3 * fast_ + 1) >> 1;
          return;
        }
        big_ = from_u128(fast_);
        big_mode_ = true;
      } else {
        fast_ >>= 1;
        return;
      }
    }
    if (mpz_odd_p(big_.get_mpz_t())) {
      big_ *= 3;
      big_ += 1;
      big_ >>= 1;
    } else {
      big_ >>= 1;
    }
  }

  bool fast() const { return !big_mode_; }
  u128 fast_value() const { return fast_; }
  const Nat& big_value() const { return big_; }
  Nat value() const { return big_mode_ ? big_ : from_u128(fast_); }

 private:
  u128 fast_ = 0;
  Nat big_;
  bool big_mode_ = false;
};

// Arbitrary-precision-only walker.
class BigWalker {
 public:
  explicit BigWalker(const Nat& n) : v_(n) {
    if (n < 1) throw std::invalid_argument("trajectory start must be >= 1");
  }
  bool odd() const { return mpz_odd_p(v_.get_mpz_t()) != 0; }
  bool is_one() const { return mpz_cmp_ui(v_.get_mpz_t(), 1) == 0; }
  void advance() {
    if (odd()) {
      v_ *= 3;
      v_ += 1;
      v_ >>= 1;
    } else {
      v_ >>= 1;
    }
  }
  bool fast() const { return false; }
  u128 fast_value() const { return 0; }
  const Nat& big_value() const { return v_; }
  Nat value() const { return v_; }

 private:
  Nat v_;
};

}  // namespace syr
