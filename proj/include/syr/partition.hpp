#pragma once

#include "syr/nat.hpp"

#include <optional>
#include <string>
#include <vector>

namespace syr {

// Per-class summary of the partition of {1,...,2^j} by the number q of odd
// terms in the length-j parity vector.
struct PartitionSummary {
  u32 j = 0;
  std::vector<u64> cardinality;                // indexed by q, 0..j
  std::vector<u64> minimum;                    // smallest member per q
  std::vector<double> discrepancy;             // sup-norm ECDF distance from uniform
  std::vector<std::vector<u64>> membership;    // filled only when requested
  bool has_membership = false;
};

// Classifies every n in [1, 2^j]. Membership lists are only supported while
// 2^j <= 2^16; counts, minima and discrepancies stream at any supported j.
PartitionSummary enumerate_partition(u32 j, bool keep_membership = false);

// Single-threaded reference with the same contract.
PartitionSummary enumerate_partition_serial(u32 j, bool keep_membership = false);

struct CheckReport {
  std::vector<std::string> violations;
  u64 checked = 0;
  bool ok() const { return violations.empty(); }
};

// minimum(q) == 2^(j-2q) for all 0 <= 2q <= j.
CheckReport min_formula_check(u32 j);

// (a) sampled n: the length-j parity vector is 2^j-periodic in n;
// (b) for j <= 20: n -> V_j(n) is a bijection of {1,...,2^j} onto {0,1}^j.
CheckReport terras_check(u32 j, u64 sample_count, u64 seed);

// Smallest n <= n_limit whose length-j parity vector has exactly q ones.
std::optional<Nat> min_in_class(u32 j, u32 q, const Nat& n_limit);

// log2 binom(j,q) minus the Stirling approximation H(q/j)*j - log2(2*pi*r(1-r)*j)/2,
// with the binomial computed exactly.
double stirling_ratio(u32 j, u32 q);

Nat binomial(u32 j, u32 q);

}  // namespace syr
