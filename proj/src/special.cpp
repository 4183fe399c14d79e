#include "syr/special.hpp"

#include "syr/trajectory.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>

namespace syr {

namespace {

constexpr double kRho = 1.5849625007211561814537389439478;    // log2 3
constexpr double kLog2E = 1.4426950408889634073599246810019;  // log2 e

// log2(1 - 2^x) for x < 0; exp2 underflow makes the correction vanish.
inline double log2_1m_exp2(double x) { return std::log1p(-std::exp2(x)) * kInvLn2; }

// log2 of the bound at q = j-1, C = 0:
// (1 - H((j-1)/j)) j = j - j log2 j + (j-1) log2(j-1).
inline double tau(u32 j) {
  if (j == 2) return 0.0;
  double dj = double(j);
  return dj - dj * std::log2(dj) + (dj - 1.0) * std::log2(dj - 1.0);
}

// exact comparison n >= 2^((1-H((j-1)/j)) j)  <=>  n * j^j >= 2^j * (j-1)^(j-1)
bool holds_exact_q_jm1(const Nat& n, u32 j) {
  Nat lhs, rhs;
  mpz_ui_pow_ui(lhs.get_mpz_t(), j, j);
  lhs *= n;
  mpz_ui_pow_ui(rhs.get_mpz_t(), j - 1, j - 1);
  rhs <<= j;
  return lhs >= rhs;
}

// n_{j,k} without the orbit verification, for the per-pair oracle.
Nat njk_value(u32 j, u32 k) {
  if (k == 0) return (Nat(1) << j) - 2;
  Nat b = b_k(k, j - k);
  Nat m = (b << (j - k)) - 1;
  Nat p3 = pow3(k);
  Nat n = (m / p3) << k;
  return n - 1;
}

}  // namespace

Nat pow3(u32 k) {
  Nat r;
  mpz_ui_pow_ui(r.get_mpz_t(), 3, k);
  return r;
}

Nat b_k(u32 k, u64 l) {
  if (k < 1) throw std::invalid_argument("b_k: k must be >= 1");
  if (l < 1) throw std::invalid_argument("b_k: l must be >= 1");
  Nat mod = pow3(k);
  Nat inv2 = (mod + 1) >> 1;
  Nat e(static_cast<unsigned long>(l));
  Nat r;
  mpz_powm(r.get_mpz_t(), inv2.get_mpz_t(), e.get_mpz_t(), mod.get_mpz_t());
  return r;
}

NjkEntry n_jk(u32 j, u32 k) {
  if (j < 2) throw std::invalid_argument("n_jk: j must be >= 2");
  if (k >= j) throw std::invalid_argument("n_jk: k must be < j");
  NjkEntry e;
  e.j = j;
  e.k = k;
  if (k == 0) {
    e.n = (Nat(1) << j) - 2;
  } else {
    e.b = b_k(k, j - k);
    Nat m = (e.b << (j - k)) - 1;
    Nat p3 = pow3(k);
    if (!mpz_divisible_p(m.get_mpz_t(), p3.get_mpz_t()))
      throw std::logic_error("n_jk: 3^k does not divide b*2^(j-k) - 1");
    e.n = ((m / p3) << k) - 1;
  }
  if (e.n < 1 || e.n > (Nat(1) << j)) throw std::logic_error("n_jk: value outside [1, 2^j]");
  // the orbit must have its single even term exactly at index k
  ParityVector v = parity_vector(e.n, j);
  if (v.ones() != u64(j) - 1 || v.bit(k))
    throw std::logic_error("n_jk: parity vector shape check failed");
  return e;
}

CheckReport njk_lower_bound_check(u32 j) {
  if (j < 2) throw std::invalid_argument("njk_lower_bound_check: j must be >= 2");
  CheckReport rep;
  const double floor_log2 = double(j) / (1.0 + constants().rho);
  for (u32 k = 0; k < j; ++k) {
    ++rep.checked;
    Nat n2 = njk_value(j, k) + 2;
    if (log2_nat(n2) + 1e-9 < floor_log2)
      rep.violations.push_back("n_{" + std::to_string(j) + "," + std::to_string(k) +
                               "} below 2^(j/(1+rho)) - 2");
  }
  return rep;
}

SweepResult sweep_njk(u32 j_max, double C) {
  if (j_max < 2) throw std::invalid_argument("sweep_njk: j_max must be >= 2");
  std::vector<std::vector<std::pair<u32, u32>>> per_k(j_max);

  #pragma omp parallel for schedule(dynamic)
  for (i64 kk = 0; kk < i64(j_max); ++kk) {
    const u32 k = u32(kk);
    auto& out = per_k[k];
    if (k == 0) {
      for (u32 j = 2; j <= j_max; ++j) {
        double l2n = double(j) + log2_1m_exp2(1.0 - double(j));
        double margin = l2n - (tau(j) - C * std::log2(double(j)));
        bool viol;
        if (C == 0.0 && std::abs(margin) <= 1e-6)
          viol = !holds_exact_q_jm1((Nat(1) << j) - 2, j);
        else
          viol = margin < 0.0;
        if (viol) out.emplace_back(j, 0);
      }
    } else {
      Nat p3 = pow3(k);
      Nat b = (p3 + 1) >> 1;  // b_k(1)
      for (u64 l = 1; k + l <= j_max; ++l) {
        const u32 j = u32(k + l);
        double lb = log2_nat(b);
        double lM = double(l) + lb + log2_1m_exp2(-(double(l) + lb));
        double ln1 = double(k) + lM - double(k) * kRho;  // log2(n+1)
        double l2n = ln1 + (ln1 < 64.0 ? log2_1m_exp2(-ln1) : 0.0);
        double margin = l2n - (tau(j) - C * std::log2(double(j)));
        bool viol;
        if (C == 0.0 && std::abs(margin) <= 1e-6) {
          Nat n = ((((b << l) - 1) / p3) << k) - 1;
          viol = !holds_exact_q_jm1(n, j);
        } else {
          viol = margin < 0.0;
        }
        if (viol) out.emplace_back(j, k);
        // b_k(l+1) = b_k(l) * 2^-1 mod 3^k by exact halving
        if (mpz_even_p(b.get_mpz_t())) b >>= 1;
        else {
          b += p3;
          b >>= 1;
        }
      }
    }
  }

  SweepResult r;
  for (auto& v : per_k) r.violations.insert(r.violations.end(), v.begin(), v.end());
  std::sort(r.violations.begin(), r.violations.end());
  r.count = r.violations.size();
  return r;
}

SweepResult sweep_njk_oracle(u32 j_max, double C) {
  if (j_max < 2) throw std::invalid_argument("sweep_njk_oracle: j_max must be >= 2");
  std::vector<std::vector<std::pair<u32, u32>>> per_j(j_max + 1);

  #pragma omp parallel for schedule(dynamic)
  for (i64 jj = 2; jj <= i64(j_max); ++jj) {
    const u32 j = u32(jj);
    Nat jpow, rhs;
    mpz_ui_pow_ui(jpow.get_mpz_t(), j, j);
    mpz_ui_pow_ui(rhs.get_mpz_t(), j - 1, j - 1);
    rhs <<= j;
    for (u32 k = 0; k < j; ++k) {
      Nat n = njk_value(j, k);
      bool viol;
      if (C == 0.0)
        viol = n * jpow < rhs;
      else
        viol = log2_nat(n) < lbh_log2_bound(j, j - 1, C);
      if (viol) per_j[j].emplace_back(j, k);
    }
  }

  SweepResult r;
  for (auto& v : per_j) r.violations.insert(r.violations.end(), v.begin(), v.end());
  std::sort(r.violations.begin(), r.violations.end());
  r.count = r.violations.size();
  return r;
}

CEvaluation c_of_njk(u32 j, u32 k) {
  NjkEntry e = n_jk(j, k);
  return c_value(e.n);
}

MersenneCase mersenne_case(u32 j) {
  if (j < 2) throw std::invalid_argument("mersenne_case: j must be >= 2");
  MersenneCase m;
  m.j = j;
  Nat n = (Nat(1) << j) - 1;
  m.eval = c_value(n);
  m.c = m.eval.c;
  m.bound = -std::log1p(-std::exp2(-double(j))) / std::log(double(j));
  m.equal = std::abs(m.c - m.bound) < 1e-9;
  return m;
}

double bkl_conjecture_scan(u32 k_max, u64 l_max, double D) {
  if (k_max < 1 || l_max < 1)
    throw std::invalid_argument("bkl_conjecture_scan: k_max and l_max must be >= 1");
  double global_min = HUGE_VAL;

  #pragma omp parallel for schedule(dynamic) reduction(min : global_min)
  for (i64 kk = 1; kk <= i64(k_max); ++kk) {
    const u32 k = u32(kk);
    Nat p3 = pow3(k);
    Nat b = (p3 + 1) >> 1;
    for (u64 l = 1; l <= l_max; ++l) {
      double lg = log2_nat(b) + kLog2E + D * std::log2(double(l + k)) - double(k) * kRho;
      global_min = std::min(global_min, lg);
      if (mpz_even_p(b.get_mpz_t())) b >>= 1;
      else {
        b += p3;
        b >>= 1;
      }
    }
  }
  return std::exp2(global_min);
}

}  // namespace syr
