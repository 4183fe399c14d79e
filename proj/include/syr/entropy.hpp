#pragma once

#include "syr/nat.hpp"
#include "syr/trajectory.hpp"

#include <optional>
#include <vector>

namespace syr {

// H(x) = -x log2 x - (1-x) log2(1-x), extended by 0 at the endpoints.
double binary_entropy(double x);

// log2 of the entropy lower bound: (1 - H(q/j)) * j - C * log2 j.
double lbh_log2_bound(u64 j, u64 q, double C);

struct Constants {
  double rho;      // log2 3
  double r0;       // log 2 / log(3 + 1/3)
  double h_r0;     // H(r0)
  double r_h;      // nonzero root of H(r) log 2 = r log 3
  double gamma_h;  // 1 / (ln 2 - r_h ln 3)
};

Constants solve_constants();
const Constants& constants();  // solved once, shared read-only

// Legendre-transform rate function of the +-step walk,
// g(a) = sup_theta (a*theta - ln M(theta)), M(theta) = (2^theta + (2/3)^theta)/2.
// Defined for ln(2/3) < a < ln 2.
double rate_function(double a);

struct InequalityReport {
  std::vector<double> entropy_2x_violations;   // x in [0,1/2] with H(x) < 2x
  std::vector<double> entropy_rho_violations;  // x in [0,1] with H(x) + rho*x > 2
  std::vector<double> envelope_violations;     // e in [0,1/2] with 1-H(1/2+e) > 4e^2
  double equality_x = 0.0;                     // grid argmax of H(x) + rho*x
  double equality_gap = 0.0;                   // |max value - 2|
  bool ok() const {
    return entropy_2x_violations.empty() && entropy_rho_violations.empty() &&
           envelope_violations.empty() && std::abs(equality_x - 0.75) <= 1e-4 &&
           equality_gap <= 1e-12;
  }
};

// Grid verification (step 1e-5) of the inequalities the stopping rule and
// prefilter rely on.
InequalityReport inequality_suite();

struct CEvaluation {
  Nat n;
  double c = 0.0;
  std::optional<u64> j_star;  // smallest j attaining the sup; empty when c = 0
  u64 q_star = 0;
  u64 exhausted_at = 0;  // last j examined before the stopping rule fired
};

struct NotReachedError : std::runtime_error {
  Nat n;
  u64 cap;
  NotReachedError(Nat n_, u64 cap_)
      : std::runtime_error("trajectory did not reach 1 within step cap"),
        n(std::move(n_)),
        cap(cap_) {}
};

// c(n): the smallest C >= 0 such that n >= j^-C * 2^((1-H(q_j/j)) j) for every
// j >= 2. The search past the total stopping time terminates via the envelope
// 1 - H(1/2+e) <= 4e^2: once the orbit sits in the trivial cycle, every later
// candidate is bounded by 4*dmax^2/(j log2 j), which drops below the best
// candidate found (or below zero once 4*dmax^2 <= j log2 n).
//
// include_all_odd selects whether candidates with q_j = j (prefixes made
// entirely of odd terms, i.e. n = 2^j - 1) participate in the sup. The range
// scanner excludes them, matching the published table convention; the
// Mersenne analysis includes them.
CEvaluation c_value(const Nat& n, u64 cap = kDefaultStepCap, bool include_all_odd = true);

}  // namespace syr
