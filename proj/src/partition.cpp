#include "syr/partition.hpp"

#include "syr/entropy.hpp"
#include "syr/trajectory.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <random>

namespace syr {

namespace {

constexpr u32 kMaxJ = 28;
constexpr u32 kMembershipMaxJ = 16;  // 2^j <= 2^16

// Number of odd terms among the first j iterates, 64-bit arithmetic.
// Safe for n <= 2^28 and j <= 28: terms stay below 2^56.
inline u32 odd_count_u64(u64 n, u32 j) {
  u64 cur = n;
  u32 q = 0;
  for (u32 i = 0; i < j; ++i) {
    if (cur & 1) {
      ++q;
      cur = (3 * cur + 1) >> 1;
    } else {
      cur >>= 1;
    }
  }
  return q;
}

// Parity vector of n packed into a word, bit i = parity of the i-th iterate.
inline u64 parity_word_u64(u64 n, u32 j) {
  u64 cur = n, w = 0;
  for (u32 i = 0; i < j; ++i) {
    if (cur & 1) {
      w |= u64{1} << i;
      cur = (3 * cur + 1) >> 1;
    } else {
      cur >>= 1;
    }
  }
  return w;
}

struct BlockAccum {
  std::vector<u64> count;
  std::vector<u64> min;
};

}  // namespace

PartitionSummary enumerate_partition(u32 j, bool keep_membership) {
  if (j < 1 || j > kMaxJ) throw std::invalid_argument("enumerate_partition: j must be in [1,28]");
  if (keep_membership && j > kMembershipMaxJ)
    throw std::invalid_argument("enumerate_partition: membership lists only kept for j <= 16");

  const u64 total = u64{1} << j;
  const u64 bs = std::min<u64>(total, u64{1} << 16);
  const u64 nblocks = (total + bs - 1) / bs;
  const double scale = std::ldexp(1.0, -int(j));  // 1/2^j

  // pass 1: per-block counts and minima
  std::vector<BlockAccum> acc(nblocks);
  #pragma omp parallel for schedule(static)
  for (i64 b = 0; b < i64(nblocks); ++b) {
    BlockAccum a;
    a.count.assign(j + 1, 0);
    a.min.assign(j + 1, 0);
    const u64 lo = 1 + u64(b) * bs;
    const u64 hi = std::min(total, lo + bs - 1);
    for (u64 n = lo; n <= hi; ++n) {
      u32 q = odd_count_u64(n, j);
      if (a.count[q] == 0) a.min[q] = n;
      ++a.count[q];
    }
    acc[b] = std::move(a);
  }

  PartitionSummary s;
  s.j = j;
  s.cardinality.assign(j + 1, 0);
  s.minimum.assign(j + 1, 0);
  s.discrepancy.assign(j + 1, 0.0);
  for (const auto& a : acc) {
    for (u32 q = 0; q <= j; ++q) {
      if (a.count[q] && (s.cardinality[q] == 0 || a.min[q] < s.minimum[q]))
        s.minimum[q] = a.min[q];
      // order matters: the minimum test above keys off the running count
      s.cardinality[q] += a.count[q];
    }
  }

  // pass 2: rank-based sup-norm discrepancy of each class against uniform
  std::vector<std::vector<u64>> start(nblocks, std::vector<u64>(j + 1, 0));
  for (u64 b = 1; b < nblocks; ++b)
    for (u32 q = 0; q <= j; ++q) start[b][q] = start[b - 1][q] + acc[b - 1].count[q];

  std::vector<std::vector<double>> disc(nblocks);
  #pragma omp parallel for schedule(static)
  for (i64 b = 0; b < i64(nblocks); ++b) {
    std::vector<double> d(j + 1, 0.0);
    std::vector<u64> rank = start[b];
    const u64 lo = 1 + u64(b) * bs;
    const u64 hi = std::min(total, lo + bs - 1);
    for (u64 n = lo; n <= hi; ++n) {
      u32 q = odd_count_u64(n, j);
      u64 i = ++rank[q];  // 1-based rank of n within its class
      double u = double(n) * scale;
      double num = double(i) / double(s.cardinality[q]);
      double prev = double(i - 1) / double(s.cardinality[q]);
      d[q] = std::max(d[q], std::max(num - u, u - prev));
    }
    disc[b] = std::move(d);
  }
  for (const auto& d : disc)
    for (u32 q = 0; q <= j; ++q) s.discrepancy[q] = std::max(s.discrepancy[q], d[q]);

  if (keep_membership) {
    s.membership.assign(j + 1, {});
    for (u32 q = 0; q <= j; ++q) s.membership[q].reserve(s.cardinality[q]);
    for (u64 n = 1; n <= total; ++n) s.membership[odd_count_u64(n, j)].push_back(n);
    s.has_membership = true;
  }
  return s;
}

PartitionSummary enumerate_partition_serial(u32 j, bool keep_membership) {
  if (j < 1 || j > kMaxJ) throw std::invalid_argument("enumerate_partition: j must be in [1,28]");
  if (keep_membership && j > kMembershipMaxJ)
    throw std::invalid_argument("enumerate_partition: membership lists only kept for j <= 16");

  const u64 total = u64{1} << j;
  const double scale = std::ldexp(1.0, -int(j));

  PartitionSummary s;
  s.j = j;
  s.cardinality.assign(j + 1, 0);
  s.minimum.assign(j + 1, 0);
  s.discrepancy.assign(j + 1, 0.0);
  if (keep_membership) s.membership.assign(j + 1, {});

  for (u64 n = 1; n <= total; ++n) {
    u32 q = odd_count_u64(n, j);
    if (s.cardinality[q] == 0) s.minimum[q] = n;
    ++s.cardinality[q];
    if (keep_membership) s.membership[q].push_back(n);
  }
  s.has_membership = keep_membership;

  std::vector<u64> rank(j + 1, 0);
  for (u64 n = 1; n <= total; ++n) {
    u32 q = odd_count_u64(n, j);
    u64 i = ++rank[q];
    double u = double(n) * scale;
    double num = double(i) / double(s.cardinality[q]);
    double prev = double(i - 1) / double(s.cardinality[q]);
    s.discrepancy[q] = std::max(s.discrepancy[q], std::max(num - u, u - prev));
  }
  return s;
}

Nat binomial(u32 j, u32 q) {
  Nat r;
  mpz_bin_uiui(r.get_mpz_t(), j, q);
  return r;
}

CheckReport min_formula_check(u32 j) {
  CheckReport rep;
  PartitionSummary s = enumerate_partition(j, false);
  for (u32 q = 0; 2 * q <= j; ++q) {
    ++rep.checked;
    u64 expect = u64{1} << (j - 2 * q);
    if (s.minimum[q] != expect)
      rep.violations.push_back("min I0(" + std::to_string(j) + "," + std::to_string(q) +
                               ") = " + std::to_string(s.minimum[q]) + ", expected " +
                               std::to_string(expect));
  }
  return rep;
}

CheckReport terras_check(u32 j, u64 sample_count, u64 seed) {
  if (j < 1) throw std::invalid_argument("terras_check: j must be >= 1");
  CheckReport rep;

  // (a) sampled 2^j-periodicity
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<u64> dist(1, u64{1} << 40);
  const Nat period = Nat(1) << j;
  for (u64 i = 0; i < sample_count; ++i) {
    Nat n = dist(rng);
    ++rep.checked;
    if (!(parity_vector(n, j) == parity_vector(n + period, j)))
      rep.violations.push_back("parity vector of length " + std::to_string(j) +
                               " not 2^j-periodic at n = " + n.get_str());
  }

  // (b) injectivity over {1,...,2^j} for j <= 20
  if (j <= 20) {
    const u64 total = u64{1} << j;
    std::vector<bool> seen(total, false);
    u64 distinct = 0;
    for (u64 n = 1; n <= total; ++n) {
      u64 w = parity_word_u64(n, j);
      if (seen[w]) {
        rep.violations.push_back("duplicate parity vector at n = " + std::to_string(n));
      } else {
        seen[w] = true;
        ++distinct;
      }
    }
    ++rep.checked;
    if (distinct != total)
      rep.violations.push_back("expected " + std::to_string(total) + " distinct vectors, got " +
                               std::to_string(distinct));
  }
  return rep;
}

std::optional<Nat> min_in_class(u32 j, u32 q, const Nat& n_limit) {
  if (q > j) throw std::invalid_argument("min_in_class: q must be <= j");
  if (n_limit < 1) return std::nullopt;
  if (fits_u128(n_limit) && to_u128(n_limit) <= (u128{1} << 80)) {
    // forward scan in fixed width, falling back per-n on overflow
    u128 limit = to_u128(n_limit);
    for (u128 n = 1; n <= limit; ++n) {
      u128 cur = n;
      u32 ones = 0;
      bool overflow = false;
      for (u32 i = 0; i < j; ++i) {
        if (cur & 1) {
          if (cur > kMaxSafeStep) {
            overflow = true;
            break;
          }
          ++ones;
          cur = (3 * cur + 1) >> 1;
        } else {
          cur >>= 1;
        }
        if (ones > q) break;
      }
      if (overflow) {
        if (odd_count(from_u128(n), j) == q) return from_u128(n);
      } else if (ones == q) {
        return from_u128(n);
      }
    }
    return std::nullopt;
  }
  for (Nat n = 1; n <= n_limit; ++n)
    if (odd_count(n, j) == q) return n;
  return std::nullopt;
}

double stirling_ratio(u32 j, u32 q) {
  if (q < 1 || q >= j) throw std::invalid_argument("stirling_ratio: need 1 <= q <= j-1");
  double r = double(q) / double(j);
  double exact = log2_nat(binomial(j, q));
  double approx = binary_entropy(r) * double(j) -
                  0.5 * std::log2(2.0 * M_PI * r * (1.0 - r) * double(j));
  return exact - approx;
}

}  // namespace syr
