#pragma once

#include "syr/entropy.hpp"
#include "syr/nat.hpp"

#include <optional>
#include <string>
#include <vector>

namespace syr {

struct ScanRecord {
  Nat n;
  double c = 0.0;
  std::optional<u64> j_star;
  u64 q_star = 0;
  u64 sigma_inf = 0;
  Nat t;
  bool excursion_gt_n2 = false;
  bool sigma_record = false;
  bool t_record = false;

  double ratio() const {
    return (j_star && *j_star > 0) ? double(q_star) / double(*j_star) : 0.0;
  }
};

struct ScanStats {
  u64 scanned = 0;
  u64 prefilter_hits = 0;
  u64 full_evaluations = 0;
  u64 not_reached = 0;
  std::vector<Nat> not_reached_ns;  // first few offenders, never silently dropped
  double max_sigma_ratio = 0.0;     // max sigma_inf(n)/ln n over n >= 2
  Nat argmax_sigma_ratio;
  bool sigma_bound_ok = true;             // max ratio < gamma_H
  u64 log_t_bound_exceedances = 0;        // ln t > 2 ln n + 20 ln(ln n + 2)
  std::vector<u64> ratio_histogram;       // 100 bins of width 0.5 over [0, 50)
};

enum class ScanMode { CValues, Excursions, SigmaRatio };

struct ScanOptions {
  double threshold = 0.0;
  int workers = 0;  // 0 = OpenMP default
  bool prefilter = true;
  u64 step_cap = kDefaultStepCap;
  u64 block_size = u64{1} << 20;
  std::string checkpoint_path;  // enables checkpointing when non-empty
  bool resume = false;          // require an existing, matching checkpoint
  u64 max_blocks = 0;           // stop after this many new blocks (0 = all); for tests
};

struct ScanResult {
  ScanMode mode = ScanMode::CValues;
  Nat lo, hi;
  std::vector<ScanRecord> records;
  ScanStats stats;
  u64 config_hash = 0;
  bool complete = true;
};

struct CheckpointError : std::runtime_error {
  explicit CheckpointError(const std::string& what) : std::runtime_error(what) {}
};

// Emits every n in [lo, hi] whose sup candidate over j >= 2 with q_j < j
// exceeds the threshold (the published-table convention: certificates from
// all-odd prefixes are excluded). Deterministic across worker counts.
ScanResult scan_c(const Nat& lo, const Nat& hi, const ScanOptions& opts = {});

// Emits n with t(n) > n^2 plus the running record-holders of t(n) in range.
ScanResult scan_excursions(const Nat& lo, const Nat& hi, const ScanOptions& opts = {});

// Ratio statistics sigma_inf(n)/ln n over the range.
ScanResult scan_sigma_ratio(const Nat& lo, const Nat& hi, const ScanOptions& opts = {});

// Single-threaded reference paths: no blocks, no prefilter, no checkpoints.
ScanResult scan_c_serial(const Nat& lo, const Nat& hi, double threshold = 0.0,
                         u64 step_cap = kDefaultStepCap);
ScanResult scan_excursions_serial(const Nat& lo, const Nat& hi,
                                  u64 step_cap = kDefaultStepCap);

// n,c,j_star,q_star,ratio,sigma_inf,t,flags; c and ratio truncated to 3 decimals.
std::string to_csv(const ScanResult& r);
// One JSON object per line, full-precision c.
std::string to_jsonl(const ScanResult& r);
// Human-readable table plus stats summary.
std::string to_text(const ScanResult& r);

u64 scan_config_hash(ScanMode mode, const Nat& lo, const Nat& hi, const ScanOptions& opts);

// 3-decimal truncation used for table output.
inline double trunc3(double v) { return std::floor(v * 1000.0 + 1e-9) / 1000.0; }

}  // namespace syr
