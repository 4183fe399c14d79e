#include "syr/rw_model.hpp"

#include "syr/entropy.hpp"
#include "syr/partition.hpp"
#include "syr/rng.hpp"

#include <omp.h>

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace syr {

namespace {
const double kDown = kLn2;         // subtracted on a down-step
const double kUp = kLn2 - kLn3;    // ln(2/3), subtracted on an up-step
}  // namespace

double HittingTimes::mean() const {
  if (steps.empty()) return 0.0;
  double s = 0.0;
  for (u64 k : steps) s += double(k);
  return s / double(steps.size());
}

HittingTimes simulate_hitting_time(const WalkConfig& cfg) {
  if (!(cfg.start_log_n > 0.0))
    throw std::invalid_argument("simulate_hitting_time: start_log_n must be > 0");
  if (cfg.sample_count < 1)
    throw std::invalid_argument("simulate_hitting_time: sample_count must be >= 1");

  HittingTimes out;
  out.steps.assign(cfg.sample_count, 0);
  u64 capped = 0;

  #pragma omp parallel for schedule(static) reduction(+ : capped)
  for (i64 w = 0; w < i64(cfg.sample_count); ++w) {
    CounterRng rng(cfg.seed, u64(w));
    double level = cfg.start_log_n;
    u64 k = 0;
    while (level > 0.0 && k < cfg.step_cap) {
      level -= rng.bit_at(k) ? kDown : kUp;
      ++k;
    }
    out.steps[w] = k;
    if (level > 0.0) ++capped;
  }
  out.capped = capped;
  return out;
}

RateCheckReport empirical_rate_check(u32 j, u64 trials, u64 seed) {
  if (j < 1 || j > 30) throw std::invalid_argument("empirical_rate_check: j must be in [1,30]");
  RateCheckReport rep;
  rep.j = j;

  std::vector<u64> counts(j + 1, 0);
  if (trials == 0) {
    if (j > 24) throw std::invalid_argument("empirical_rate_check: exhaustive mode needs j <= 24");
    rep.exhaustive = true;
    rep.trials = u64{1} << j;
    for (u64 w = 0; w < rep.trials; ++w) ++counts[__builtin_popcountll(w)];
  } else {
    rep.trials = trials;
    std::vector<u64> local;
    #pragma omp parallel
    {
      std::vector<u64> mine(j + 1, 0);
      #pragma omp for schedule(static)
      for (i64 t = 0; t < i64(trials); ++t) {
        CounterRng rng(seed, u64(t));
        u32 q = 0;
        for (u32 i = 0; i < j; ++i) q += !rng.bit_at(i);  // up-steps
        ++mine[q];
      }
      #pragma omp critical(rate_merge)
      {
        if (local.empty()) local.assign(j + 1, 0);
        for (u32 q = 0; q <= j; ++q) local[q] += mine[q];
      }
    }
    counts = local;
  }

  const double scale = std::ldexp(1.0, -int(j));
  for (u32 q = 0; q <= j; ++q) {
    RateCheckRow row;
    row.q = q;
    row.count = counts[q];
    row.empirical = double(counts[q]) / double(rep.trials);
    row.exact = binomial(j, q).get_d() * scale;
    double se = std::sqrt(row.exact * (1.0 - row.exact) / double(rep.trials));
    row.z = se > 0.0 ? (row.empirical - row.exact) / se : 0.0;
    row.ok = rep.exhaustive ? row.empirical == row.exact : std::abs(row.z) <= 4.0;
    rep.all_ok = rep.all_ok && row.ok;
    rep.rows.push_back(row);
  }
  return rep;
}

UniformSumResult uniform_model_sum(double C, u32 j_max) {
  if (j_max < 2) throw std::invalid_argument("uniform_model_sum: j_max must be >= 2");
  UniformSumResult r;
  r.C = C;
  r.inner.assign(j_max + 1, 0.0);
  r.partial.assign(j_max + 1, 0.0);
  r.asym_ratio.assign(j_max + 1, 0.0);

  #pragma omp parallel for schedule(dynamic, 16)
  for (i64 jj = 1; jj <= i64(j_max); ++jj) {
    const u32 j = u32(jj);
    const double lgj = std::log2(double(j));
    Nat b = 1;  // binom(j, 0), advanced exactly along the row
    double sum = 0.0, comp = 0.0;
    for (u32 q = 0; q <= j; ++q) {
      double lterm = log2_nat(b) - binary_entropy(double(q) / double(j)) * double(j) - C * lgj;
      double term = std::exp2(lterm);
      double y = term - comp;  // Kahan accumulation
      double t = sum + y;
      comp = (t - sum) - y;
      sum = t;
      if (q < j) {
        b *= (j - q);
        mpz_divexact_ui(b.get_mpz_t(), b.get_mpz_t(), q + 1);
      }
    }
    r.inner[j] = sum;
    r.asym_ratio[j] = sum / (std::sqrt(M_PI / 2.0) * std::pow(double(j), 0.5 - C));
  }

  for (u32 j = 1; j <= j_max; ++j) r.partial[j] = r.partial[j - 1] + r.inner[j];
  return r;
}

}  // namespace syr
