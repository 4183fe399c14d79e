#pragma once

#include "syr/nat.hpp"

#include <vector>

namespace syr {

// Additive random walk on a logarithmic scale: each step subtracts ln 2 or
// ln(2/3) from the level with probability 1/2 each (a down-step of ln 2, or
// an up-step of ln(3/2)).
struct WalkConfig {
  double start_log_n = 1.0;
  u64 sample_count = 1;
  u64 seed = 0;
  u64 step_cap = 10'000'000;
};

struct HittingTimes {
  std::vector<u64> steps;  // first k with level <= 0, per walk
  u64 capped = 0;          // walks flagged at the step cap
  double mean() const;
};

HittingTimes simulate_hitting_time(const WalkConfig& cfg);

struct RateCheckRow {
  u64 q = 0;        // number of up-steps among j
  u64 count = 0;
  double empirical = 0.0;
  double exact = 0.0;  // binom(j,q) / 2^j
  double z = 0.0;
  bool ok = true;      // |z| <= 4
};

struct RateCheckReport {
  u32 j = 0;
  u64 trials = 0;
  std::vector<RateCheckRow> rows;
  bool all_ok = true;
  bool exhaustive = false;
};

// Empirical up-step counts against the exact binomial law. trials = 0 runs
// the exhaustive enumeration of all 2^j equally likely patterns (j <= 24),
// which must match the binomial exactly.
RateCheckReport empirical_rate_check(u32 j, u64 trials, u64 seed);

struct UniformSumResult {
  double C = 0.0;
  // index j in [1, j_max]; [0] unused
  std::vector<double> inner;       // sum_q binom(j,q) * j^-C * 2^(-H(q/j) j)
  std::vector<double> partial;     // running partial sums
  std::vector<double> asym_ratio;  // inner[j] / (sqrt(pi/2) * j^(1/2 - C))
};

// Exact inner sums (big-integer binomials, compensated accumulation) of the
// uniform-model probability series, with the j^(1/2-C) asymptote ratio.
UniformSumResult uniform_model_sum(double C, u32 j_max);

}  // namespace syr
