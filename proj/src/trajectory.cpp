#include "syr/trajectory.hpp"

#include <algorithm>
#include <stdexcept>

namespace syr {

Nat t_step(const Nat& n) {
  if (n < 1) throw std::invalid_argument("t_step: n must be >= 1");
  Nat r;
  if (mpz_odd_p(n.get_mpz_t())) {
    r = n * 3 + 1;
    r >>= 1;
  } else {
    r = n >> 1;
  }
  return r;
}

u64 ParityVector::as_word() const {
  if (len_ > 64) throw std::logic_error("ParityVector::as_word: length > 64");
  if (words_.empty()) return 0;
  u64 w = words_[0];
  if (len_ < 64) w &= (u64{1} << len_) - 1;
  return w;
}

TWalker::TWalker(const Nat& n) {
  if (n < 1) throw std::invalid_argument("trajectory start must be >= 1");
  if (fits_u128(n)) {
    fast_ = to_u128(n);
  } else {
    big_ = n;
    big_mode_ = true;
  }
}

namespace {

template <class W>
ParityVector parity_vector_impl(const Nat& n, u64 j) {
  if (n < 1) throw std::invalid_argument("parity_vector: n must be >= 1");
  if (j < 1) throw std::invalid_argument("parity_vector: j must be >= 1");
  ParityVector v(j);
  W w(n);
  for (u64 i = 0; i < j; ++i) {
    v.set_bit(i, w.odd());
    w.advance();
  }
  return v;
}

template <class W>
TrajectoryProfile profile_impl(const Nat& n, u64 cap) {
  if (n < 1) throw std::invalid_argument("profile: n must be >= 1");
  if (cap < 1) throw std::invalid_argument("profile: cap must be >= 1");
  TrajectoryProfile p;
  p.n = n;
  p.cap = cap;
  if (n == 1) p.sigma_inf = 0;

  W w(n);
  // Track the maximum in the walker's native width, widening on promotion.
  u128 tmax_fast = 0;
  Nat tmax_big;
  bool max_is_big = !w.fast();
  if (max_is_big) tmax_big = w.big_value();
  else tmax_fast = w.fast_value();

  u64 q = 0, steps = 0;
  p.odd_prefix.reserve(std::min<u64>(cap, 4096));
  while (steps < cap) {
    q += w.odd();
    ++steps;
    p.odd_prefix.push_back(q);
    w.advance();
    if (!max_is_big && !w.fast()) {
      tmax_big = from_u128(tmax_fast);
      max_is_big = true;
    }
    if (max_is_big) {
      if (w.big_value() > tmax_big) tmax_big = w.big_value();
    } else if (w.fast_value() > tmax_fast) {
      tmax_fast = w.fast_value();
    }
    if (w.is_one()) {
      if (!p.sigma_inf.has_value()) p.sigma_inf = steps;
      break;
    }
  }
  p.explored = steps;
  p.end_is_one = w.is_one();
  p.t = max_is_big ? tmax_big : from_u128(tmax_fast);
  return p;
}

}  // namespace

ParityVector parity_vector(const Nat& n, u64 j) { return parity_vector_impl<TWalker>(n, j); }

ParityVector parity_vector_bignum(const Nat& n, u64 j) {
  return parity_vector_impl<BigWalker>(n, j);
}

u64 odd_count(const Nat& n, u64 j) {
  if (n < 1) throw std::invalid_argument("odd_count: n must be >= 1");
  if (j < 1) throw std::invalid_argument("odd_count: j must be >= 1");
  TWalker w(n);
  u64 q = 0;
  for (u64 i = 0; i < j; ++i) {
    q += w.odd();
    w.advance();
  }
  return q;
}

TrajectoryProfile profile(const Nat& n, u64 cap) { return profile_impl<TWalker>(n, cap); }

TrajectoryProfile profile_bignum(const Nat& n, u64 cap) {
  return profile_impl<BigWalker>(n, cap);
}

u64 TrajectoryProfile::odd_count_at(u64 j) const {
  if (j == 0) throw std::invalid_argument("odd_count_at: j must be >= 1");
  if (j <= odd_prefix.size()) return odd_prefix[j - 1];
  if (!end_is_one)
    throw std::logic_error("odd_count_at: prefix too short and orbit not in the trivial cycle");
  // Terms from index `explored` on are 1,2,1,2,...
  u64 extra = j - explored;
  return odd_prefix.back() + (extra + 1) / 2;
}

bool eliahou_identity_check(const Nat& n, u64 j) {
  if (n < 1) throw std::invalid_argument("eliahou_identity_check: n must be >= 1");
  if (j < 1) throw std::invalid_argument("eliahou_identity_check: j must be >= 1");
  TWalker w(n);
  mpq_class rhs(1);
  for (u64 i = 0; i < j; ++i) {
    if (w.odd()) {
      Nat m = w.value();
      mpq_class f(m * 3 + 1, m);
      f.canonicalize();
      rhs *= f;
    }
    w.advance();
  }
  mpq_class half_pow(Nat(1), Nat(1) << j);
  half_pow.canonicalize();
  rhs *= half_pow;
  mpq_class lhs(w.value(), n);
  lhs.canonicalize();
  return lhs == rhs;
}

}  // namespace syr
