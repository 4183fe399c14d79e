#pragma once

#include "syr/entropy.hpp"
#include "syr/nat.hpp"
#include "syr/partition.hpp"

#include <utility>
#include <vector>

namespace syr {

// Member of the q = j-1 family: the unique element of I0(j, j-1) whose single
// even iterate sits at index k.
struct NjkEntry {
  u32 j = 0;
  u32 k = 0;
  Nat n;
  Nat b;  // b_k(j-k); zero for k = 0
};

Nat pow3(u32 k);

// b_k(l) = 2^(-l) mod 3^k, the unique b in [1, 3^k - 1] with b*2^l = 1 (mod 3^k).
Nat b_k(u32 k, u64 l);

// n_{j,0} = 2^j - 2, else (2/3)^k (b_k(j-k) 2^(j-k) - 1) - 1; the divisions are
// exact and the entry is verified against the orbit before returning.
NjkEntry n_jk(u32 j, u32 k);

// n_{j,k} >= 2^(j/(1+rho)) - 2 for every k.
CheckReport njk_lower_bound_check(u32 j);

struct SweepResult {
  std::vector<std::pair<u32, u32>> violations;  // (j, k), sorted
  u64 count = 0;
};

// Tests the entropy bound at q = j-1, n = n_{j,k} for all 0 <= k < j <= j_max.
// Uses the incremental recurrence b_k(l+1) = b_k(l)/2 mod 3^k per fixed k and
// a log-domain comparison; for C = 0, pairs inside a 1e-6 margin band are
// settled by the exact integer comparison n * j^j >= 2^j * (j-1)^(j-1).
SweepResult sweep_njk(u32 j_max, double C);

// Independent per-pair route: n built by modular exponentiation, the C = 0
// comparison done entirely in big integers.
SweepResult sweep_njk_oracle(u32 j_max, double C);

// c(n_{j,k}) over the full arbitrary-precision trajectory.
CEvaluation c_of_njk(u32 j, u32 k);

struct MersenneCase {
  u32 j = 0;
  double c = 0.0;
  double bound = 0.0;  // -log(1 - 2^-j) / log j, the j-iteration candidate
  bool equal = false;  // |c - bound| < 1e-9
  CEvaluation eval;
};

MersenneCase mersenne_case(u32 j);

// min over 1 <= k <= k_max, 1 <= l <= l_max of b_k(l) * e * (l+k)^D / 3^k,
// evaluated in the log domain. A result >= 1 means the conjectured lower
// bound held on the scanned window; nothing is asserted.
double bkl_conjecture_scan(u32 k_max, u64 l_max, double D);

}  // namespace syr
