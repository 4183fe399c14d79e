// Command-line front end: trajectory statistics, the c statistic, partition
// enumeration, the q = j-1 family, Mersenne cases, range scans, and the
// stochastic models, all behind reproducible subcommands.
//
// Exit codes: 0 success, 1 usage, 2 assertion/consistency failure, 3 I/O.

#include "syr/entropy.hpp"
#include "syr/partition.hpp"
#include "syr/rw_model.hpp"
#include "syr/scanner.hpp"
#include "syr/special.hpp"
#include "syr/trajectory.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>

using namespace syr;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitAssert = 2;
constexpr int kExitIo = 3;

struct AssertionFailure : std::runtime_error {
  explicit AssertionFailure(const std::string& what) : std::runtime_error(what) {}
};

u64 fnv1a(const std::string& s) {
  u64 h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

// Every run prints its effective configuration and a stable hash of it.
void print_config(const std::string& line) {
  std::fprintf(stderr, "# config: %s hash=%016" PRIx64 "\n", line.c_str(), fnv1a(line));
}

void write_output(const std::string& path, const std::string& data) {
  if (path.empty()) {
    std::fputs(data.c_str(), stdout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::ios_base::failure("cannot open output file: " + path);
  out << data;
  if (!out) throw std::ios_base::failure("write failed: " + path);
}

std::string fmt_c_line(const CEvaluation& ev) {
  char buf[160];
  if (ev.j_star)
    std::snprintf(buf, sizeof buf, "n=%s c=%.3f j=%" PRIu64 " q=%" PRIu64,
                  ev.n.get_str().c_str(), trunc3(ev.c), *ev.j_star, ev.q_star);
  else
    std::snprintf(buf, sizeof buf, "n=%s c=0.000 j=- q=-", ev.n.get_str().c_str());
  return buf;
}

std::string scan_result_text(const ScanResult& r, const std::string& format) {
  if (format == "csv") return to_csv(r);
  if (format == "records") return to_jsonl(r);
  return to_text(r);
}

void check(bool ok, const std::string& what, int& failures) {
  if (ok) {
    std::printf("ok   %s\n", what.c_str());
  } else {
    std::printf("FAIL %s\n", what.c_str());
    ++failures;
  }
}

// cross-module invariant suite behind `verify`
int run_verify(bool long_tier) {
  int failures = 0;

  // entropy function and constants
  check(inequality_suite().ok(), "entropy inequalities on the 1e-5 grid", failures);
  const Constants& k = constants();
  check(std::abs(k.r_h - 0.609089767) <= 1e-8, "r_H", failures);
  check(std::abs(k.gamma_h - 41.677647655) <= 1e-6, "gamma_H", failures);
  {
    bool ok = true;
    for (int i = 1; i <= 99; ++i) {
      double r = double(i) / 100.0;
      double lhs = rate_function(kLn2 - r * kLn3);
      double rhs = (1.0 - binary_entropy(r)) * kLn2;
      ok = ok && std::abs(lhs - rhs) < 1e-9;
    }
    check(ok, "rate function matches (1-H(r)) ln 2 on the r grid", failures);
  }

  // trajectory identities
  {
    std::mt19937_64 rng(12345);
    bool ok = true;
    for (int i = 0; i < 2000 && ok; ++i) {
      Nat n = rng() % (u64{1} << 40) + 1;
      u64 j = rng() % 160 + 1;
      ok = eliahou_identity_check(n, j);
    }
    check(ok, "product identity exact on 2000 samples", failures);
  }
  {
    std::mt19937_64 rng(999);
    bool ok = true;
    for (int i = 0; i < 5000 && ok; ++i) {
      Nat n = rng() % (u64{1} << 60) + 1;
      u64 j = rng() % 500 + 1;
      ok = parity_vector(n, j) == parity_vector_bignum(n, j);
    }
    check(ok, "fast path agrees with arbitrary precision on 5000 samples", failures);
  }

  // partition structure
  {
    bool ok = true;
    u32 jmax = long_tier ? 20 : 14;
    for (u32 j = 1; j <= jmax && ok; ++j) {
      PartitionSummary s = enumerate_partition(j);
      for (u32 q = 0; q <= j && ok; ++q) ok = Nat(s.cardinality[q]) == binomial(j, q);
      ok = ok && min_formula_check(j).ok();
    }
    check(ok, "cardinalities and minima", failures);
    check(terras_check(12, 1000, 7).ok(), "parity vectors periodic and injective", failures);
  }

  // q = j-1 family
  {
    bool ok = true;
    for (u32 j = 2; j <= 40 && ok; ++j) ok = njk_lower_bound_check(j).ok();
    check(ok, "n_{j,k} effective lower bound", failures);
    SweepResult a = sweep_njk(80, 0.0);
    SweepResult b = sweep_njk_oracle(80, 0.0);
    check(a.violations == b.violations, "sweep matches the per-pair oracle at j <= 80", failures);
  }

  // scanner determinism and prefilter soundness
  {
    ScanOptions with, without;
    with.workers = 4;
    without.prefilter = false;
    without.workers = 1;
    ScanResult r1 = scan_c(1, 100000, with);
    ScanResult r2 = scan_c(1, 100000, without);
    check(to_csv(r1) == to_csv(r2), "prefilter changes nothing on [1, 1e5]", failures);
  }

  // stochastic models
  {
    WalkConfig cfg{.start_log_n = 10.0, .sample_count = 20000, .seed = 42};
    HittingTimes h1 = simulate_hitting_time(cfg);
    HittingTimes h2 = simulate_hitting_time(cfg);
    check(h1.steps == h2.steps && h1.capped == 0, "seeded walks reproducible", failures);
    check(empirical_rate_check(10, 200000, 7).all_ok, "step counts binomial within 4 sigma",
          failures);
  }

  std::printf("%s\n", failures == 0 ? "verify: all checks passed" : "verify: FAILURES");
  return failures == 0 ? kExitOk : kExitAssert;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"trajectory statistics and entropy lower bounds for the 3x+1 map"};
  app.require_subcommand(1);

  // shared option storage
  std::string n_str = "1";
  u64 steps = 0, cap = kDefaultStepCap;
  u64 lo = 1, hi = 1000000;
  double threshold = 0.0;
  int workers = 0;
  u64 seed = 0;
  std::string out_path, format = "text", checkpoint, tier = "default";
  bool resume = false, no_prefilter = false, membership = false;
  u32 jarg = 6, qarg = 0, karg = 0, jmax = 0, kmax = 8;
  u64 lmax = 100, limit = 1000000;
  double cconst = 0.0, dconst = 2.0;
  double start_log = 40.0;
  u64 samples = 100000;

  auto* cmd_traj = app.add_subcommand("trajectory", "orbit profile and parity vector");
  cmd_traj->add_option("n", n_str, "start value")->required();
  cmd_traj->add_option("--steps", steps, "parity vector length to print");
  cmd_traj->add_option("--cap", cap, "exploration cap");

  auto* cmd_c = app.add_subcommand("c", "the c statistic of one integer");
  cmd_c->add_option("n", n_str, "start value")->required();
  cmd_c->add_option("--cap", cap, "exploration cap");

  auto* cmd_scan_c = app.add_subcommand("scan-c", "emit all n in range with c(n) > threshold");
  auto* cmd_scan_e = app.add_subcommand("scan-excursions", "t(n) > n^2 and excursion records");
  auto* cmd_scan_s = app.add_subcommand("scan-sigma", "sigma_inf/ln n statistics over a range");
  for (auto* cmd : {cmd_scan_c, cmd_scan_e, cmd_scan_s}) {
    cmd->add_option("--lo", lo, "range start");
    cmd->add_option("--hi", hi, "range end (inclusive)");
    cmd->add_option("--workers", workers, "worker threads (0 = all)");
    cmd->add_option("--out", out_path, "output file (default stdout)");
    cmd->add_option("--format", format, "text | csv | records");
    cmd->add_option("--tier", tier, "default | long");
  }
  cmd_scan_c->add_option("--threshold", threshold, "emission threshold for c");
  for (auto* cmd : {cmd_scan_c, cmd_scan_e}) {
    cmd->add_option("--checkpoint", checkpoint, "checkpoint file path");
    cmd->add_flag("--resume", resume, "resume from the checkpoint");
  }
  cmd_scan_c->add_flag("--no-prefilter", no_prefilter, "disable the delta-envelope prefilter");

  auto* cmd_part = app.add_subcommand("partition", "per-(j,q) cardinality, minimum, discrepancy");
  cmd_part->add_option("--j", jarg, "vector length")->required();
  cmd_part->add_flag("--membership", membership, "print members (j <= 16)");
  cmd_part->add_option("--out", out_path, "output file");
  cmd_part->add_option("--format", format, "text | csv");

  auto* cmd_min = app.add_subcommand("min-in-class", "smallest n <= limit with odd count q");
  cmd_min->add_option("--j", jarg)->required();
  cmd_min->add_option("--q", qarg)->required();
  cmd_min->add_option("--limit", limit, "search limit");

  app.add_subcommand("constants", "rho, r0, H(r0), r_H, gamma_H");

  auto* cmd_njk = app.add_subcommand("special-njk", "the q = j-1 family n_{j,k}");
  cmd_njk->add_option("--j", jarg)->required();
  cmd_njk->add_option("--k", karg, "single k (default: all k < j)");
  bool njk_all = false;
  cmd_njk->add_flag("--with-c", njk_all, "also evaluate c(n_{j,k})");

  auto* cmd_sweep = app.add_subcommand("sweep-njk", "entropy bound over the whole family");
  cmd_sweep->add_option("--jmax", jmax, "largest j (default 2000, long tier 10000)");
  cmd_sweep->add_option("--C", cconst, "bound constant");
  cmd_sweep->add_option("--tier", tier, "default | long");

  auto* cmd_mers = app.add_subcommand("mersenne", "c(2^j - 1) against its j-iteration bound");
  cmd_mers->add_option("--jmax", jmax, "largest j (default 200, long tier 1000)");
  cmd_mers->add_option("--tier", tier, "default | long");

  auto* cmd_bkl = app.add_subcommand("bkl-scan", "margin of the b_k(l) conjectured bound");
  cmd_bkl->add_option("--kmax", kmax);
  cmd_bkl->add_option("--lmax", lmax);
  cmd_bkl->add_option("--D", dconst, "exponent in the conjectured bound");

  auto* cmd_rw = app.add_subcommand("rw-sim", "random-walk hitting times");
  cmd_rw->add_option("--start", start_log, "starting level (log n)");
  cmd_rw->add_option("--samples", samples);
  cmd_rw->add_option("--seed", seed);

  auto* cmd_us = app.add_subcommand("uniform-sum", "uniform-model probability sums");
  cmd_us->add_option("--C", cconst)->required();
  cmd_us->add_option("--jmax", jmax, "largest j (default 2000)");

  auto* cmd_verify = app.add_subcommand("verify", "cross-module invariant suite");
  cmd_verify->add_option("--tier", tier, "default | long");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const bool long_tier = tier == "long";

    if (cmd_traj->parsed()) {
      Nat n(n_str);
      print_config("cmd=trajectory n=" + n_str + " steps=" + std::to_string(steps) +
                   " cap=" + std::to_string(cap));
      TrajectoryProfile p = profile(n, cap);
      std::printf("n=%s\n", n.get_str().c_str());
      if (p.sigma_inf)
        std::printf("sigma_inf=%" PRIu64 "\n", *p.sigma_inf);
      else
        std::printf("sigma_inf=NOT_REACHED (cap %" PRIu64 ")\n", p.cap);
      std::printf("t=%s\n", p.t.get_str().c_str());
      u64 len = steps ? steps : std::min<u64>(p.explored, 32);
      ParityVector v = parity_vector(n, len);
      std::string bits;
      for (u64 i = 0; i < v.size(); ++i) {
        if (i) bits += ',';
        bits += v.bit(i) ? '1' : '0';
      }
      std::printf("parity=%s\n", bits.c_str());
      std::printf("odd_count(%" PRIu64 ")=%" PRIu64 "\n", len,
                  len <= p.odd_prefix.size() || p.end_is_one ? p.odd_count_at(len)
                                                             : odd_count(n, len));
      return kExitOk;
    }

    if (cmd_c->parsed()) {
      Nat n(n_str);
      print_config("cmd=c n=" + n_str + " cap=" + std::to_string(cap));
      CEvaluation ev = c_value(n, cap);
      std::printf("%s\n", fmt_c_line(ev).c_str());
      return kExitOk;
    }

    if (cmd_scan_c->parsed() || cmd_scan_e->parsed() || cmd_scan_s->parsed()) {
      ScanOptions opts;
      opts.threshold = threshold;
      opts.workers = workers;
      opts.prefilter = !no_prefilter;
      opts.checkpoint_path = checkpoint;
      opts.resume = resume;
      const char* cmd = cmd_scan_c->parsed() ? "scan-c"
                        : cmd_scan_e->parsed() ? "scan-excursions"
                                               : "scan-sigma";
      char cfg[256];
      std::snprintf(cfg, sizeof cfg,
                    "cmd=%s lo=%" PRIu64 " hi=%" PRIu64 " threshold=%.17g workers=%d "
                    "prefilter=%d tier=%s",
                    cmd, lo, hi, threshold, workers, int(opts.prefilter), tier.c_str());
      print_config(cfg);

      ScanResult r = cmd_scan_c->parsed()   ? scan_c(lo, hi, opts)
                     : cmd_scan_e->parsed() ? scan_excursions(lo, hi, opts)
                                            : scan_sigma_ratio(lo, hi, opts);
      if (cmd_scan_s->parsed()) {
        std::string out;
        char buf[192];
        std::snprintf(buf, sizeof buf,
                      "max sigma/ln n = %.6f at n=%s\nsigma bound ok: %s\nhistogram (bin 0.5):\n",
                      r.stats.max_sigma_ratio, r.stats.argmax_sigma_ratio.get_str().c_str(),
                      r.stats.sigma_bound_ok ? "yes" : "NO");
        out += buf;
        for (size_t i = 0; i < r.stats.ratio_histogram.size(); ++i) {
          if (r.stats.ratio_histogram[i] == 0) continue;
          std::snprintf(buf, sizeof buf, "[%5.1f,%5.1f) %" PRIu64 "\n", 0.5 * double(i),
                        0.5 * double(i + 1), r.stats.ratio_histogram[i]);
          out += buf;
        }
        write_output(out_path, out);
      } else {
        write_output(out_path, scan_result_text(r, format));
      }
      if (r.stats.not_reached > 0) {
        std::fprintf(stderr, "error: %" PRIu64 " trajectories did not reach 1 within the cap\n",
                     r.stats.not_reached);
        return kExitAssert;
      }
      if (!r.stats.sigma_bound_ok) {
        std::fprintf(stderr, "error: sigma_inf/ln n bound violated\n");
        return kExitAssert;
      }
      return kExitOk;
    }

    if (cmd_part->parsed()) {
      print_config("cmd=partition j=" + std::to_string(jarg) +
                   " membership=" + std::to_string(int(membership)));
      PartitionSummary s = enumerate_partition(jarg, membership);
      std::string out;
      char buf[160];
      bool csv = format == "csv";
      out += csv ? "j,q,cardinality,minimum,discrepancy\n"
                 : "j   q   cardinality   minimum   discrepancy\n";
      for (u32 q = 0; q <= s.j; ++q) {
        std::snprintf(buf, sizeof buf, csv ? "%u,%u,%" PRIu64 ",%" PRIu64 ",%.6f\n"
                                           : "%-3u %-3u %-13" PRIu64 " %-9" PRIu64 " %.6f\n",
                      s.j, q, s.cardinality[q], s.minimum[q], s.discrepancy[q]);
        out += buf;
      }
      if (s.has_membership) {
        for (u32 q = 0; q <= s.j; ++q) {
          out += "I0(" + std::to_string(s.j) + "," + std::to_string(q) + ") = {";
          for (size_t i = 0; i < s.membership[q].size(); ++i) {
            if (i) out += ",";
            out += std::to_string(s.membership[q][i]);
          }
          out += "}\n";
        }
      }
      write_output(out_path, out);
      return kExitOk;
    }

    if (cmd_min->parsed()) {
      print_config("cmd=min-in-class j=" + std::to_string(jarg) + " q=" + std::to_string(qarg) +
                   " limit=" + std::to_string(limit));
      auto m = min_in_class(jarg, qarg, limit);
      if (m)
        std::printf("min I0(%u,%u) = %s\n", jarg, qarg, m->get_str().c_str());
      else
        std::printf("min I0(%u,%u) = NONE (limit %" PRIu64 ")\n", jarg, qarg, limit);
      return kExitOk;
    }

    if (app.get_subcommand("constants")->parsed()) {
      print_config("cmd=constants");
      const Constants& k = constants();
      std::printf("rho     = %.12f\n", k.rho);
      std::printf("r0      = %.12f\n", k.r0);
      std::printf("H(r0)   = %.12f\n", k.h_r0);
      std::printf("r_H     = %.12f\n", k.r_h);
      std::printf("gamma_H = %.9f\n", k.gamma_h);
      return kExitOk;
    }

    if (cmd_njk->parsed()) {
      print_config("cmd=special-njk j=" + std::to_string(jarg));
      u32 kfrom = cmd_njk->count("--k") ? karg : 0;
      u32 kto = cmd_njk->count("--k") ? karg : jarg - 1;
      for (u32 k = kfrom; k <= kto; ++k) {
        NjkEntry e = n_jk(jarg, k);
        std::printf("j=%u k=%u n=%s b=%s", e.j, e.k, e.n.get_str().c_str(),
                    e.b.get_str().c_str());
        if (njk_all) {
          CEvaluation ev = c_value(e.n);
          std::printf("  %s", fmt_c_line(ev).c_str());
        }
        std::printf("\n");
      }
      return kExitOk;
    }

    if (cmd_sweep->parsed()) {
      if (jmax == 0) jmax = long_tier ? 10000 : 2000;
      char cfg[128];
      std::snprintf(cfg, sizeof cfg, "cmd=sweep-njk jmax=%u C=%.17g tier=%s", jmax, cconst,
                    tier.c_str());
      print_config(cfg);
      SweepResult r = sweep_njk(jmax, cconst);
      for (const auto& [j, k] : r.violations) std::printf("violation j=%u k=%u\n", j, k);
      std::printf("violations=%" PRIu64 " (jmax=%u, C=%g)\n", r.count, jmax, cconst);
      return kExitOk;
    }

    if (cmd_mers->parsed()) {
      if (jmax == 0) jmax = long_tier ? 1000 : 200;
      print_config("cmd=mersenne jmax=" + std::to_string(jmax) + " tier=" + tier);
      std::vector<u32> exceptions;
      for (u32 j = 2; j <= jmax; ++j) {
        MersenneCase m = mersenne_case(j);
        if (!m.equal) {
          exceptions.push_back(j);
          std::printf("j=%-5u c=%.9f bound=%.9f equal=no  (%s)\n", j, m.c, m.bound,
                      fmt_c_line(m.eval).c_str());
        }
      }
      std::string ex;
      for (u32 j : exceptions) ex += " " + std::to_string(j);
      std::printf("equality holds for all j <= %u except:%s\n", jmax,
                  ex.empty() ? " (none)" : ex.c_str());
      return kExitOk;
    }

    if (cmd_bkl->parsed()) {
      char cfg[128];
      std::snprintf(cfg, sizeof cfg, "cmd=bkl-scan kmax=%u lmax=%" PRIu64 " D=%.17g", kmax, lmax,
                    dconst);
      print_config(cfg);
      double margin = bkl_conjecture_scan(kmax, lmax, dconst);
      std::printf("min margin = %.9g over k <= %u, l <= %" PRIu64 " (>= 1 means the bound held)\n",
                  margin, kmax, lmax);
      return kExitOk;
    }

    if (cmd_rw->parsed()) {
      char cfg[128];
      std::snprintf(cfg, sizeof cfg, "cmd=rw-sim start=%.17g samples=%" PRIu64 " seed=%" PRIu64,
                    start_log, samples, seed);
      print_config(cfg);
      WalkConfig wc{.start_log_n = start_log, .sample_count = samples, .seed = seed};
      HittingTimes h = simulate_hitting_time(wc);
      u64 mx = 0;
      for (u64 k : h.steps) mx = std::max(mx, k);
      std::printf("samples=%" PRIu64 " mean=%.4f max=%" PRIu64 " max/start=%.4f capped=%" PRIu64
                  "\n",
                  samples, h.mean(), mx, double(mx) / start_log, h.capped);
      return kExitOk;
    }

    if (cmd_us->parsed()) {
      if (jmax == 0) jmax = 2000;
      char cfg[128];
      std::snprintf(cfg, sizeof cfg, "cmd=uniform-sum C=%.17g jmax=%u", cconst, jmax);
      print_config(cfg);
      UniformSumResult r = uniform_model_sum(cconst, jmax);
      for (u32 j = 1; j <= jmax; j *= 2)
        std::printf("j=%-7u inner=%.6e partial=%.6e asym_ratio=%.4f\n", j, r.inner[j],
                    r.partial[j], r.asym_ratio[j]);
      std::printf("j=%-7u inner=%.6e partial=%.6e asym_ratio=%.4f\n", jmax, r.inner[jmax],
                  r.partial[jmax], r.asym_ratio[jmax]);
      return kExitOk;
    }

    if (cmd_verify->parsed()) {
      print_config("cmd=verify tier=" + tier);
      return run_verify(long_tier);
    }
  } catch (const CheckpointError& e) {
    std::fprintf(stderr, "checkpoint error: %s\n", e.what());
    return kExitIo;
  } catch (const std::ios_base::failure& e) {
    std::fprintf(stderr, "i/o error: %s\n", e.what());
    return kExitIo;
  } catch (const NotReachedError& e) {
    std::fprintf(stderr, "error: n=%s did not reach 1 within cap %" PRIu64 "\n",
                 e.n.get_str().c_str(), e.cap);
    return kExitAssert;
  } catch (const AssertionFailure& e) {
    std::fprintf(stderr, "assertion failed: %s\n", e.what());
    return kExitAssert;
  } catch (const std::logic_error& e) {
    std::fprintf(stderr, "internal check failed: %s\n", e.what());
    return kExitAssert;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
