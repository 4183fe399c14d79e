#include "syr/entropy.hpp"

#include <cmath>
#include <stdexcept>

namespace syr {

double binary_entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("binary_entropy: x outside [0,1]");
  if (x == 0.0 || x == 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double lbh_log2_bound(u64 j, u64 q, double C) {
  if (j < 1) throw std::invalid_argument("lbh_log2_bound: j must be >= 1");
  if (q > j) throw std::invalid_argument("lbh_log2_bound: q must be <= j");
  if (C < 0.0) throw std::invalid_argument("lbh_log2_bound: C must be >= 0");
  return (1.0 - binary_entropy(double(q) / double(j))) * double(j) - C * std::log2(double(j));
}

Constants solve_constants() {
  Constants c{};
  c.rho = std::log2(3.0);
  c.r0 = kLn2 / std::log(3.0 + 1.0 / 3.0);
  c.h_r0 = binary_entropy(c.r0);

  auto f = [](double r) { return binary_entropy(r) * kLn2 - r * kLn3; };
  double a = 0.55, b = 0.65;
  if (!(f(a) > 0.0 && f(b) < 0.0))
    throw std::logic_error("solve_constants: bracket does not change sign");
  for (int i = 0; i < 200 && b - a > 1e-17; ++i) {
    double m = 0.5 * (a + b);
    (f(m) > 0.0 ? a : b) = m;
  }
  c.r_h = 0.5 * (a + b);
  if (std::abs(f(c.r_h)) >= 1e-14)
    throw std::logic_error("solve_constants: residual above tolerance");
  c.gamma_h = 1.0 / (kLn2 - c.r_h * kLn3);
  // base-2 form of the same quantity
  double gamma2 = 1.0 / ((1.0 - c.r_h * c.rho) * kLn2);
  if (std::abs(c.gamma_h - gamma2) > 1e-6 * c.gamma_h)
    throw std::logic_error("solve_constants: log-base identity failed");
  return c;
}

const Constants& constants() {
  static const Constants c = solve_constants();
  return c;
}

namespace {

// ln M(theta) for M(theta) = (2^theta + (2/3)^theta)/2, overflow-safe.
double ln_mgf(double theta) {
  if (theta >= 0.0)
    return -kLn2 + theta * kLn2 + std::log1p(std::pow(3.0, -theta));
  return -kLn2 + theta * (kLn2 - kLn3) + std::log1p(std::pow(3.0, theta));
}

// d/dtheta ln M(theta), increasing from ln(2/3) to ln 2.
double ln_mgf_deriv(double theta) {
  double w = std::pow(3.0, -theta);  // (2/3)^theta / 2^theta
  if (!std::isfinite(w) || w > 1e300) return kLn2 - kLn3;
  return (kLn2 + w * (kLn2 - kLn3)) / (1.0 + w);
}

}  // namespace

double rate_function(double a) {
  const double lo = kLn2 - kLn3;  // ln(2/3)
  const double hi = kLn2;
  if (!(a > lo && a < hi)) throw std::domain_error("rate_function: a outside (ln(2/3), ln 2)");
  double tl = -700.0, th = 700.0;
  for (int i = 0; i < 200 && th - tl > 1e-13; ++i) {
    double m = 0.5 * (tl + th);
    (ln_mgf_deriv(m) < a ? tl : th) = m;
  }
  double theta = 0.5 * (tl + th);
  return a * theta - ln_mgf(theta);
}

InequalityReport inequality_suite() {
  InequalityReport rep;
  const int kSteps = 100000;
  const double inv = 1.0 / double(kSteps);
  double best_val = -1.0;
  const double rho = constants().rho;
  for (int i = 0; i <= kSteps; ++i) {
    double x = double(i) * inv;
    double h = binary_entropy(x);
    if (x <= 0.5 && h < 2.0 * x - 1e-12) rep.entropy_2x_violations.push_back(x);
    double v = h + rho * x;
    if (v > 2.0 + 1e-12) rep.entropy_rho_violations.push_back(x);
    if (v > best_val) {
      best_val = v;
      rep.equality_x = x;
    }
    if (x <= 0.5) {
      double e = x;  // reuse the grid for the envelope variable
      double envelope_lhs = 1.0 - binary_entropy(0.5 + e);
      if (envelope_lhs > 4.0 * e * e + 1e-12) rep.envelope_violations.push_back(e);
    }
  }
  rep.equality_gap = std::abs(best_val - 2.0);
  return rep;
}

CEvaluation c_value(const Nat& n, u64 cap, bool include_all_odd) {
  if (n < 1) throw std::invalid_argument("c_value: n must be >= 1");
  if (cap < 1) throw std::invalid_argument("c_value: cap must be >= 1");
  CEvaluation ev;
  ev.n = n;
  const double L = log2_nat(n);

  TWalker w(n);
  u64 q = 0, j = 0;
  bool have_sigma = (n == 1);
  u64 sigma = 0;
  i64 s_sigma = 0;  // 2q - j at the first hit of 1
  double best = 0.0;
  u64 best_j = 0, best_q = 0;

  while (true) {
    if (!have_sigma && j >= cap) throw NotReachedError(n, cap);
    q += w.odd();
    ++j;
    w.advance();
    if (!have_sigma && w.is_one()) {
      have_sigma = true;
      sigma = j;
      s_sigma = i64(2 * q) - i64(j);
    }
    if (j >= 2 && (include_all_odd || q < j)) {
      double cand =
          ((1.0 - binary_entropy(double(q) / double(j))) * double(j) - L) /
          std::log2(double(j));
      if (cand > best) {
        best = cand;
        best_j = j;
        best_q = q;
      }
    }
    if (have_sigma && j >= sigma + 4) {
      // In the trivial cycle, 2q - j alternates between s_sigma and
      // s_sigma + 1, so every later candidate is at most
      // (m4/j' - L)/log2 j' with m4 = 4*dmax^2 below.
      double m4 = double(std::max(s_sigma * s_sigma, (s_sigma + 1) * (s_sigma + 1)));
      bool stop = m4 <= double(j + 1) * L;
      if (!stop && best > 0.0)
        stop = m4 / (double(j + 1) * std::log2(double(j + 1))) < best;
      if (stop) break;
    }
    if (j > u64{1} << 33)
      throw std::logic_error("c_value: stopping rule failed to engage");
  }

  ev.c = best;
  ev.exhausted_at = j;
  if (best > 0.0) {
    ev.j_star = best_j;
    ev.q_star = best_q;
  }
  return ev;
}

}  // namespace syr
