// Acceptance suite: one pass/fail line per criterion. The default tier covers
// everything that runs in minutes on a workstation; --tier long adds the
// 1e9-range scan, the j_max = 10000 family sweep and the deep record streams.
//
// Exit code 0 iff no criterion failed (skipped long-tier criteria do not fail).

#include "syr/entropy.hpp"
#include "syr/partition.hpp"
#include "syr/rw_model.hpp"
#include "syr/scanner.hpp"
#include "syr/special.hpp"
#include "syr/trajectory.hpp"

#include "known_values.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <random>
#include <set>

using namespace syr;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& what) {
  std::printf("[%s] criterion %2d: %s\n", pass ? "PASS" : "FAIL", criterion, what.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

void skip(int criterion, const std::string& what) {
  std::printf("[SKIP] criterion %2d: %s (long tier; rerun with --tier long)\n", criterion,
              what.c_str());
  std::fflush(stdout);
}

double now() {
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

// compares scan output rows against the published table restricted to [lo, hi]
bool match_table(const ScanResult& r, u64 lo, u64 hi, std::string& detail) {
  std::vector<known::CTableRow> expect;
  for (const auto& row : known::c_table())
    if (row.n >= lo && row.n <= hi) expect.push_back(row);
  if (r.records.size() != expect.size()) {
    detail = "row count " + std::to_string(r.records.size()) + " != " +
             std::to_string(expect.size());
    return false;
  }
  for (size_t i = 0; i < expect.size(); ++i) {
    const auto& rec = r.records[i];
    const auto& row = expect[i];
    if (rec.n != Nat(row.n) || rec.j_star != row.j || rec.q_star != row.q ||
        std::abs(rec.c - row.c) > 0.001) {
      detail = "mismatch at n=" + rec.n.get_str();
      return false;
    }
  }
  return true;
}

void criterion_1(ScanResult& out) {
  double t0 = now();
  out = scan_c(1, 100000000);
  double dt = now() - t0;
  std::string detail;
  bool ok = match_table(out, 1, 100000000, detail);
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "published rows on [1, 1e8], exact (j,q), c within 1e-3 (%.0f s)", dt);
  report(1, ok, ok ? buf : (std::string(buf) + " -- " + detail).c_str());
}

void criterion_2(bool long_tier, ScanResult& out) {
  if (!long_tier) {
    skip(2, "published rows on [1, 1e9]");
    return;
  }
  double t0 = now();
  out = scan_c(1, 1000000000);
  double dt = now() - t0;
  std::string detail;
  bool ok = match_table(out, 1, 1000000000, detail) && out.records.size() == 29;
  const ScanRecord* rec = nullptr;
  for (const auto& r : out.records)
    if (r.n == 319804831) rec = &r;
  ok = ok && rec && rec->j_star == 91 && rec->q_star == 77 &&
       std::abs(rec->c - 0.980916600) <= 1e-6;
  char buf[160];
  std::snprintf(buf, sizeof buf, "all 29 rows on [1, 1e9], c(319804831) = 0.98091... (%.0f s)",
                dt);
  report(2, ok, buf);
}

void criterion_3() {
  double t0 = now();
  bool ok = true;
  for (u32 j = 1; j <= 20 && ok; ++j) {
    PartitionSummary s = enumerate_partition(j);
    for (u32 q = 0; q <= j && ok; ++q) ok = Nat(s.cardinality[q]) == binomial(j, q);
    for (u32 q = 0; 2 * q <= j && ok; ++q) ok = s.minimum[q] == u64{1} << (j - 2 * q);
  }
  if (ok) {
    PartitionSummary s6 = enumerate_partition(6, true);
    ok = s6.membership == known::partition6();
  }
  char buf[128];
  std::snprintf(buf, sizeof buf,
                "partition: binomial counts, 2^(j-2q) minima, j=6 membership (%.0f s)",
                now() - t0);
  report(3, ok, buf);
}

void criterion_4() {
  auto a = min_in_class(50, 30, 1000000);
  auto b = min_in_class(51, 30, 1000000);
  report(4, a == Nat(103) && b == Nat(103), "min I0(50,30) = min I0(51,30) = 103");
}

void criterion_5() {
  const Constants& k = constants();
  bool ok = std::abs(k.r_h - 0.609089767) <= 1e-8 &&
            std::abs(k.gamma_h - 41.677647655) <= 1e-6;
  for (int i = 1; i <= 99 && ok; ++i) {
    double r = double(i) / 100.0;
    ok = std::abs(rate_function(kLn2 - r * kLn3) - (1.0 - binary_entropy(r)) * kLn2) < 1e-9;
  }
  report(5, ok, "r_H, gamma_H, rate-function identity on the r grid");
}

void criterion_6(bool long_tier) {
  double t0 = now();
  CEvaluation e = c_of_njk(85, 56);
  bool ok = std::abs(e.c - 0.865) <= 0.001 && e.j_star == 85;

  bool mers_ok = true;
  for (u32 j = 2; j <= 200; ++j) {
    MersenneCase m = mersenne_case(j);
    bool should_equal = (j != 5 && j != 6);
    if (m.equal != should_equal) mers_ok = false;
    if (j == 5 && std::abs(m.c - 0.408) > 0.001) mers_ok = false;
    if (j == 6 && std::abs(m.c - 0.053) > 0.001) mers_ok = false;
  }

  SweepResult fast = sweep_njk(1000, 0.0);
  SweepResult oracle = sweep_njk_oracle(1000, 0.0);
  bool sweep_ok = fast.count == oracle.count && fast.violations == oracle.violations;

  char buf[200];
  std::snprintf(buf, sizeof buf,
                "c(n_85_56), Mersenne equality except j in {5,6}, sweep == oracle at 1000 "
                "(%.0f s)",
                now() - t0);
  report(6, ok && mers_ok && sweep_ok, buf);

  if (long_tier) {
    t0 = now();
    SweepResult full = sweep_njk(10000, 0.0);
    std::snprintf(buf, sizeof buf, "long tier: sweep_njk(10000, 0) count = %llu, expected 3741 "
                                   "(%.0f s)",
                  (unsigned long long)full.count, now() - t0);
    report(6, full.count == 3741, buf);
  } else {
    skip(6, "long tier part: sweep_njk(10000, 0) = 3741");
  }
}

void criterion_7() {
  double t0 = now();
  std::mt19937_64 rng(20240601);
  bool eli_ok = true;
  for (int it = 0; it < 10000 && eli_ok; ++it) {
    Nat n = rng() % (u64{1} << 40) + 1;
    u64 j = rng() % 200 + 1;
    eli_ok = eliahou_identity_check(n, j);
  }

  bool terras_ok = true;
  for (u32 j = 1; j <= 20 && terras_ok; ++j) terras_ok = terras_check(j, 50, j).ok();

  // n_{j,k}: j distinct members of [1, 2^j], each with exactly one even term;
  // since #I0(j, j-1) = binom(j, j-1) = j, the family is the whole class
  bool family_ok = true;
  for (u32 j = 2; j <= 20 && family_ok; ++j) {
    std::set<Nat> seen;
    for (u32 k = 0; k < j && family_ok; ++k) {
      NjkEntry e = n_jk(j, k);  // throws if the parity shape is off
      family_ok = e.n >= 1 && e.n <= (Nat(1) << j) && seen.insert(e.n).second &&
                  odd_count(e.n, j) == u64(j) - 1;
    }
    family_ok = family_ok && binomial(j, j - 1) == j;
  }

  bool mers_prefix_ok = true;
  for (u32 j = 2; j <= 200 && mers_prefix_ok; ++j) {
    Nat cur = (Nat(1) << j) - 1;
    for (u32 k = 1; k <= j && mers_prefix_ok; ++k) {
      cur = t_step(cur);
      mers_prefix_ok = cur == pow3(k) * (Nat(1) << (j - k)) - 1;
    }
  }

  char buf[160];
  std::snprintf(buf, sizeof buf,
                "exact identities: product (1e4), bijectivity j<=20, family = I0(j,j-1), "
                "Mersenne prefix j<=200 (%.0f s)",
                now() - t0);
  report(7, eli_ok && terras_ok && family_ok && mers_prefix_ok, buf);
}

void criterion_8(bool long_tier, ScanResult& excursions_out) {
  double t0 = now();
  ScanOptions opts;
  excursions_out = scan_excursions(1, 100000000, opts);
  ScanResult oracle = scan_excursions_serial(1, 100000000);

  std::set<std::string> scan_set, oracle_set;
  bool has27 = false;
  for (const auto& r : excursions_out.records)
    if (r.excursion_gt_n2) {
      scan_set.insert(r.n.get_str());
      if (r.n == 27) has27 = true;
    }
  for (const auto& r : oracle.records)
    if (r.excursion_gt_n2) oracle_set.insert(r.n.get_str());

  bool ok = scan_set == oracle_set && has27 && to_csv(excursions_out) == to_csv(oracle);
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "excursions t(n) > n^2 on [1, 1e8] match the serial oracle, include 27 "
                "(%zu found, %.0f s)",
                scan_set.size(), now() - t0);
  report(8, ok, buf);

  if (long_tier) {
    t0 = now();
    ScanResult deep = scan_excursions(1, 1000000000, opts);
    std::set<std::string> records;
    for (const auto& r : deep.records)
      if (r.t_record) records.insert(r.n.get_str());
    bool rec_ok = records.count("27") && records.count("159487") && records.count("319804831");
    std::snprintf(buf, sizeof buf,
                  "long tier: record stream on [1, 1e9] contains 27, 159487, 319804831 (%.0f s)",
                  now() - t0);
    report(8, rec_ok, buf);
  } else {
    skip(8, "long tier part: record stream on [1, 1e9]");
  }
}

void criterion_9(const ScanResult& c_scan, const ScanResult& exc_scan) {
  const double gamma = constants().gamma_h;
  bool ok = c_scan.stats.sigma_bound_ok && exc_scan.stats.sigma_bound_ok &&
            c_scan.stats.log_t_bound_exceedances == 0 &&
            exc_scan.stats.log_t_bound_exceedances == 0 &&
            c_scan.stats.not_reached == 0 && exc_scan.stats.not_reached == 0;
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "dynamic bounds: max sigma/ln n = %.3f < %.3f, no log t exceedance "
                "(the 36.716 record at n ~ 7.21e21 is out of desk range by design)",
                std::max(c_scan.stats.max_sigma_ratio, exc_scan.stats.max_sigma_ratio), gamma);
  report(9, ok, buf);
}

void criterion_10() {
  double t0 = now();
  bool binom_ok = true;
  for (u32 j : {10u, 20u}) binom_ok = binom_ok && empirical_rate_check(j, 1000000, 11).all_ok;

  UniformSumResult conv = uniform_model_sum(2.0, 10000);
  bool conv_ok = true;
  for (u32 j = 1001; j <= 10000; ++j) conv_ok = conv_ok && conv.inner[j] < 1e-3;
  conv_ok = conv_ok && (conv.partial[10000] - conv.partial[5000]) < 5e-3;

  UniformSumResult grow = uniform_model_sum(1.0, 10000);
  double slope = std::log(grow.partial[10000] / grow.partial[1000]) / std::log(10.0);
  bool grow_ok = std::abs(slope - 0.5) <= 0.05;

  char buf[160];
  std::snprintf(buf, sizeof buf,
                "stochastic model: binomial within 4 sigma, S_j bounded at C=2, slope %.3f at "
                "C=1 (%.0f s)",
                slope, now() - t0);
  report(10, binom_ok && conv_ok && grow_ok, buf);
}

void criterion_11() {
  double t0 = now();
  // byte-identical outputs across worker counts
  std::string base;
  bool workers_ok = true;
  for (int w : {1, 4, 16}) {
    ScanOptions opts;
    opts.workers = w;
    opts.block_size = 1 << 16;
    std::string csv = to_csv(scan_c(1, 2000000, opts));
    if (base.empty()) base = csv;
    workers_ok = workers_ok && csv == base;
  }

  // interrupt-and-resume equals an uninterrupted run
  std::string dir = "/tmp/syr_acceptance_ck";
  std::remove((dir + ".txt").c_str());
  std::remove((dir + ".txt.part").c_str());
  ScanOptions fresh;
  fresh.block_size = 1 << 15;
  ScanResult full = scan_c(1, 400000, fresh);
  ScanOptions part = fresh;
  part.checkpoint_path = dir + ".txt";
  part.max_blocks = 6;
  ScanResult halted = scan_c(1, 400000, part);
  ScanOptions rest = fresh;
  rest.checkpoint_path = dir + ".txt";
  rest.resume = true;
  ScanResult resumed = scan_c(1, 400000, rest);
  bool resume_ok = !halted.complete && resumed.complete && to_csv(resumed) == to_csv(full);
  std::remove((dir + ".txt").c_str());
  std::remove((dir + ".txt.part").c_str());

  // fixed-width path vs arbitrary precision on 1e5 random trajectories
  std::mt19937_64 rng(777);
  bool agree_ok = true;
  for (int it = 0; it < 100000 && agree_ok; ++it) {
    Nat n = rng() % (u64{1} << 60) + 1;
    u64 j = rng() % 500 + 1;
    agree_ok = parity_vector(n, j) == parity_vector_bignum(n, j);
    if (it % 100 == 0) agree_ok = agree_ok && profile(n) == profile_bignum(n);
  }

  char buf[160];
  std::snprintf(buf, sizeof buf,
                "engineering: identical output at 1/4/16 workers, resume == fresh, "
                "fast path == bignum on 1e5 (%.0f s)",
                now() - t0);
  report(11, workers_ok && resume_ok && agree_ok, buf);
}

}  // namespace

int main(int argc, char** argv) {
  bool long_tier = false;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--tier") == 0 && i + 1 < argc)
      long_tier = std::strcmp(argv[i + 1], "long") == 0;

  std::printf("acceptance suite, tier = %s\n", long_tier ? "long" : "default");

  ScanResult c_scan, c_scan_long, exc_scan;
  criterion_1(c_scan);
  criterion_2(long_tier, c_scan_long);
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6(long_tier);
  criterion_7();
  criterion_8(long_tier, exc_scan);
  criterion_9(long_tier ? c_scan_long : c_scan, exc_scan);
  criterion_10();
  criterion_11();

  if (g_failures == 0) {
    std::printf("acceptance: all run criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criteria FAILED\n", g_failures);
  return 1;
}
