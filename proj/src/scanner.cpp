#include "syr/scanner.hpp"

#include "syr/trajectory.hpp"

#include <omp.h>
#include <unistd.h>

#include <algorithm>
#include <cctype>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <map>
#include <memory>
#include <set>
#include <sstream>

namespace syr {

namespace {

constexpr int kL2Shift = 20;
constexpr u64 kHistBins = 100;
constexpr double kHistBinWidth = 0.5;
constexpr u64 kMaxNotReachedKept = 16;

// ---------- per-n kernel ----------

struct KernelOut {
  u64 sigma = 0;
  bool reached = false;
  u128 t = 0;
  bool fire = false;  // prefilter: some j may admit a positive candidate
};

// floor(log2(n) * 2^20) - 1; the -1 keeps the prefilter conservative.
inline i64 l20_of(double log2n) { return i64(std::floor(log2n * double(1 << kL2Shift))) - 1; }

// Walks n to 1 tracking sigma, max excursion and the prefilter statistic
// s = 2q - j. Fires when s^2 > j*log2(n) can hold for some j (a necessary
// condition for a positive candidate, via 1 - H(1/2+e) <= 4e^2).
// Returns false if 3n+1 would overflow 128 bits (caller reruns in bignum).
bool kernel_u128(u64 n, u64 cap, KernelOut& o) {
  u128 cur = n;
  u128 tmax = cur;
  const i64 l20 = l20_of(std::log2(double(n)));
  i64 s = 0;
  u64 j = 0;
  bool fire = false;
  while (cur != 1) {
    if (j >= cap) {
      o = {j, false, tmax, false};
      return true;
    }
    const bool odd = cur & 1;
    s += odd ? 1 : -1;
    ++j;
    if (!fire && (u128(u64(s * s)) << kL2Shift) > u128(j) * u64(l20)) fire = true;
    if (odd) {
      if (cur > kMaxSafeStep) return false;
      cur = (3 * cur + 1) >> 1;
    } else {
      cur >>= 1;
    }
    if (cur > tmax) tmax = cur;
  }
  if (!fire) {
    // from here on s alternates between s and s+1
    i64 m = std::max(s * s, (s + 1) * (s + 1));
    if ((u128(u64(m)) << kL2Shift) > u128(j + 1) * u64(l20)) fire = true;
  }
  o = {j, true, tmax, fire};
  return true;
}

struct BigOut {
  u64 sigma = 0;
  bool reached = false;
  Nat t;
  bool fire = false;
};

// Arbitrary-precision rerun for the rare 128-bit overflow.
BigOut kernel_big(const Nat& n, u64 cap) {
  BigOut o;
  BigWalker w(n);
  Nat tmax = n;
  const double L = log2_nat(n);
  i64 s = 0;
  u64 j = 0;
  while (!w.is_one()) {
    if (j >= cap) {
      o = {j, false, tmax, false};
      return o;
    }
    s += w.odd() ? 1 : -1;
    ++j;
    if (!o.fire && double(s) * double(s) > double(j) * L - 1e-6) o.fire = true;
    w.advance();
    if (w.big_value() > tmax) tmax = w.big_value();
  }
  if (!o.fire) {
    double m = double(std::max(s * s, (s + 1) * (s + 1)));
    if (m > double(j + 1) * L - 1e-6) o.fire = true;
  }
  o.sigma = j;
  o.reached = true;
  o.t = tmax;
  return o;
}

// ---------- per-block processing ----------

struct BlockData {
  std::vector<ScanRecord> emitted;
  std::vector<std::tuple<Nat, Nat, u64>> t_cands;  // (n, t, sigma): block-local t improvements
  std::vector<std::tuple<Nat, Nat, u64>> s_cands;  // (n, t, sigma): block-local sigma improvements
  u64 scanned = 0;
  u64 prefilter_hits = 0;
  u64 full_evals = 0;
  u64 not_reached = 0;
  std::vector<Nat> not_reached_ns;
  double max_ratio = 0.0;
  Nat argmax;
  u64 logt_exceed = 0;
  std::vector<u64> hist = std::vector<u64>(kHistBins, 0);
};

void stats_update(BlockData& bd, u64 n, u64 sigma, double ln_t) {
  if (n >= 2) {
    double ln_n = std::log(double(n));
    double ratio = double(sigma) / ln_n;
    if (ratio > bd.max_ratio || (ratio == bd.max_ratio && (bd.argmax == 0 || Nat(u64(n)) < bd.argmax))) {
      bd.max_ratio = ratio;
      bd.argmax = u64(n);
    }
    u64 bin = std::min<u64>(kHistBins - 1, u64(ratio / kHistBinWidth));
    ++bd.hist[bin];
    if (ln_t >= 2.0 * ln_n + 20.0 * std::log(std::log(double(n)) + 2.0)) ++bd.logt_exceed;
  }
}

BlockData process_block(u64 lo, u64 hi, ScanMode mode, const ScanOptions& opts) {
  BlockData bd;
  u128 block_tmax = 0;
  u64 block_smax = 0;
  bool any_t = false, any_s = false;

  for (u64 n = lo; n <= hi; ++n) {
    ++bd.scanned;
    u64 sigma = 0;
    bool reached = false, fire = false;
    u128 t128 = 0;
    Nat t_nat;
    bool t_is_big = false;

    if (n == 1) {
      sigma = 0;
      reached = true;
      t128 = 2;  // orbit 1,2,1,...
      fire = true;
    } else {
      KernelOut ko;
      if (kernel_u128(n, opts.step_cap, ko)) {
        sigma = ko.sigma;
        reached = ko.reached;
        t128 = ko.t;
        fire = ko.fire;
      } else {
        BigOut bo = kernel_big(Nat(static_cast<unsigned long>(n)), opts.step_cap);
        sigma = bo.sigma;
        reached = bo.reached;
        t_nat = bo.t;
        t_is_big = true;
        fire = bo.fire;
      }
    }

    if (!reached) {
      ++bd.not_reached;
      if (bd.not_reached_ns.size() < kMaxNotReachedKept)
        bd.not_reached_ns.push_back(u64(n));
      continue;
    }

    double ln_t = t_is_big ? ln_nat(t_nat) : std::log(double(t128));
    stats_update(bd, n, sigma, ln_t);
    if (fire) ++bd.prefilter_hits;

    auto make_t = [&]() { return t_is_big ? t_nat : from_u128(t128); };
    bool exc = !t_is_big ? (t128 > u128(n) * n) : (t_nat > Nat(u64(n)) * Nat(u64(n)));

    if (mode == ScanMode::CValues) {
      if (fire || !opts.prefilter) {
        ++bd.full_evals;
        CEvaluation ev = c_value(Nat(u64(n)), opts.step_cap, /*include_all_odd=*/false);
        if (ev.c > opts.threshold) {
          ScanRecord rec;
          rec.n = u64(n);
          rec.c = ev.c;
          rec.j_star = ev.j_star;
          rec.q_star = ev.q_star;
          rec.sigma_inf = sigma;
          rec.t = make_t();
          rec.excursion_gt_n2 = exc;
          bd.emitted.push_back(std::move(rec));
        }
      }
    } else if (mode == ScanMode::Excursions) {
      if (exc) {
        ScanRecord rec;
        rec.n = u64(n);
        CEvaluation ev = c_value(Nat(u64(n)), opts.step_cap, /*include_all_odd=*/false);
        rec.c = ev.c;
        rec.j_star = ev.j_star;
        rec.q_star = ev.q_star;
        rec.sigma_inf = sigma;
        rec.t = make_t();
        rec.excursion_gt_n2 = true;
        bd.emitted.push_back(std::move(rec));
      }
    }

    // block-local record candidates (supersets of the global record holders)
    if (mode != ScanMode::SigmaRatio) {
      if (!t_is_big) {
        if (!any_t || t128 > block_tmax) {
          block_tmax = t128;
          any_t = true;
          bd.t_cands.emplace_back(u64(n), make_t(), sigma);
        }
      } else if (!any_t || t_nat > from_u128(block_tmax)) {
        // promote the running block max into the candidate list
        bd.t_cands.emplace_back(u64(n), t_nat, sigma);
        block_tmax = fits_u128(t_nat) ? to_u128(t_nat) : ~u128{0};
        any_t = true;
      }
      if (!any_s || sigma > block_smax) {
        block_smax = sigma;
        any_s = true;
        bd.s_cands.emplace_back(u64(n), make_t(), sigma);
      }
    }
  }
  return bd;
}

// ---------- checkpoint I/O ----------

std::string flags_string(const ScanRecord& r) {
  std::string f;
  auto add = [&f](const char* s) {
    if (!f.empty()) f += ';';
    f += s;
  };
  if (r.excursion_gt_n2) add("t_gt_n2");
  if (r.t_record) add("t_record");
  if (r.sigma_record) add("sigma_record");
  return f;
}

void append_block_lines(FILE* side, u64 bid, const BlockData& bd) {
  u64 idx = 0;
  for (const auto& r : bd.emitted) {
    std::fprintf(side, "R %" PRIu64 " %" PRIu64 " %s %a %" PRIu64 " %" PRIu64 " %" PRIu64
                       " %s %d\n",
                 bid, idx++, r.n.get_str().c_str(), r.c, r.j_star.value_or(0), r.q_star,
                 r.sigma_inf, r.t.get_str().c_str(), int(r.excursion_gt_n2));
  }
  idx = 0;
  for (const auto& [n, t, sg] : bd.t_cands)
    std::fprintf(side, "T %" PRIu64 " %" PRIu64 " %s %s %" PRIu64 "\n", bid, idx++,
                 n.get_str().c_str(), t.get_str().c_str(), sg);
  idx = 0;
  for (const auto& [n, t, sg] : bd.s_cands)
    std::fprintf(side, "G %" PRIu64 " %" PRIu64 " %s %s %" PRIu64 "\n", bid, idx++,
                 n.get_str().c_str(), t.get_str().c_str(), sg);
  idx = 0;
  for (const auto& n : bd.not_reached_ns)
    std::fprintf(side, "N %" PRIu64 " %" PRIu64 " %s\n", bid, idx++, n.get_str().c_str());
  std::fprintf(side,
               "S %" PRIu64 " 0 %" PRIu64 " %" PRIu64 " %" PRIu64 " %" PRIu64 " %a %s %" PRIu64
               "\n",
               bid, bd.scanned, bd.prefilter_hits, bd.full_evals, bd.not_reached, bd.max_ratio,
               bd.argmax.get_str().c_str(), bd.logt_exceed);
}

struct CheckpointState {
  std::set<u64> done;
  std::map<u64, BlockData> blocks;
};

bool parse_nat_token(const std::string& tok, Nat& out) {
  if (tok.empty()) return false;
  for (char ch : tok)
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  out = Nat(tok);
  return true;
}

// doubles are stored as %a; istreams do not read hex floats, strtod does
bool parse_double_token(const std::string& tok, double& out) {
  if (tok.empty()) return false;
  char* end = nullptr;
  out = std::strtod(tok.c_str(), &end);
  return end && *end == '\0';
}

CheckpointState load_checkpoint(const std::string& path, u64 expected_hash) {
  CheckpointState st;
  FILE* f = std::fopen(path.c_str(), "r");
  if (!f) return st;  // no checkpoint yet: full run
  char line[256];
  bool first = true;
  while (std::fgets(line, sizeof line, f)) {
    if (first) {
      u64 h = 0;
      if (std::sscanf(line, "%" PRIx64, &h) != 1) {
        std::fclose(f);
        throw CheckpointError("corrupt checkpoint: bad header line");
      }
      if (h != expected_hash) {
        std::fclose(f);
        throw CheckpointError("checkpoint config hash mismatch; refusing to resume");
      }
      first = false;
      continue;
    }
    u64 bid = 0;
    if (std::sscanf(line, "B %" PRIu64, &bid) == 1) {
      st.done.insert(bid);
    } else if (line[0] != '\0' && line[0] != '\n') {
      std::fclose(f);
      throw CheckpointError("corrupt checkpoint: unrecognized line");
    }
  }
  std::fclose(f);
  if (first) return st;  // empty file: full run

  // sidecar with partial results
  std::string side_path = path + ".part";
  FILE* s = std::fopen(side_path.c_str(), "r");
  if (!s) {
    if (!st.done.empty())
      throw CheckpointError("checkpoint lists finished blocks but sidecar is missing");
    return st;
  }
  std::string buf;
  char chunk[4096];
  while (std::fgets(chunk, sizeof chunk, s)) buf += chunk;
  std::fclose(s);

  std::istringstream in(buf);
  std::string ln;
  while (std::getline(in, ln)) {
    if (ln.empty()) continue;
    std::istringstream ls(ln);
    std::string kind, ns, ts, arg;
    u64 bid = 0, idx = 0;
    ls >> kind >> bid;
    if (ls.fail()) throw CheckpointError("corrupt sidecar: bad block id");
    if (!st.done.count(bid)) continue;  // stale lines from an interrupted block
    BlockData& bd = st.blocks[bid];
    if (kind == "R") {
      ScanRecord r;
      std::string cs;
      double c = 0;
      u64 js = 0, qs = 0, sg = 0;
      int exc = 0;
      ls >> idx >> ns >> cs >> js >> qs >> sg >> ts >> exc;
      if (ls.fail() || !parse_nat_token(ns, r.n) || !parse_nat_token(ts, r.t) ||
          !parse_double_token(cs, c))
        throw CheckpointError("corrupt sidecar: bad record line");
      r.c = c;
      if (js) r.j_star = js;
      r.q_star = qs;
      r.sigma_inf = sg;
      r.excursion_gt_n2 = exc != 0;
      if (bd.emitted.size() <= idx) bd.emitted.resize(idx + 1);
      bd.emitted[idx] = std::move(r);
    } else if (kind == "T" || kind == "G") {
      u64 sg = 0;
      ls >> idx >> ns >> ts >> sg;
      Nat n, t;
      if (ls.fail() || !parse_nat_token(ns, n) || !parse_nat_token(ts, t))
        throw CheckpointError("corrupt sidecar: bad candidate line");
      auto& v = (kind == "T") ? bd.t_cands : bd.s_cands;
      if (v.size() <= idx) v.resize(idx + 1);
      v[idx] = {std::move(n), std::move(t), sg};
    } else if (kind == "N") {
      Nat n;
      ls >> idx >> ns;
      if (ls.fail() || !parse_nat_token(ns, n))
        throw CheckpointError("corrupt sidecar: bad flag line");
      if (bd.not_reached_ns.size() <= idx) bd.not_reached_ns.resize(idx + 1);
      bd.not_reached_ns[idx] = std::move(n);
    } else if (kind == "S") {
      std::string mrs;
      ls >> idx >> bd.scanned >> bd.prefilter_hits >> bd.full_evals >> bd.not_reached >> mrs >>
          ns >> bd.logt_exceed;
      if (ls.fail() || !parse_nat_token(ns, bd.argmax) || !parse_double_token(mrs, bd.max_ratio))
        throw CheckpointError("corrupt sidecar: bad stats line");
    } else {
      throw CheckpointError("corrupt sidecar: unknown line kind");
    }
  }
  for (u64 bid : st.done)
    if (!st.blocks.count(bid)) throw CheckpointError("corrupt sidecar: missing block data");
  return st;
}

void fsync_file(FILE* f) {
  std::fflush(f);
  ::fsync(fileno(f));
}

// ---------- driver ----------

const char* mode_name(ScanMode m) {
  switch (m) {
    case ScanMode::CValues: return "c";
    case ScanMode::Excursions: return "excursions";
    case ScanMode::SigmaRatio: return "sigma";
  }
  return "?";
}

u64 fnv1a(const std::string& s) {
  u64 h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

ScanResult scan_core(ScanMode mode, const Nat& lo, const Nat& hi, const ScanOptions& opts) {
  if (lo < 1 || hi < lo) throw std::invalid_argument("scan: need 1 <= lo <= hi");
  if (!fits_u128(hi) || to_u128(hi) > (u128{1} << 62))
    throw std::invalid_argument("scan: hi beyond the supported fast-path range (< 2^62)");
  if (opts.threshold < 0.0) throw std::invalid_argument("scan: threshold must be >= 0");
  if (opts.block_size < 1) throw std::invalid_argument("scan: block size must be >= 1");
  if (!opts.checkpoint_path.empty() && mode == ScanMode::SigmaRatio)
    throw std::invalid_argument("scan: sigma-ratio scans do not support checkpoints");

  ScanResult res;
  res.mode = mode;
  res.lo = lo;
  res.hi = hi;
  res.config_hash = scan_config_hash(mode, lo, hi, opts);
  res.stats.ratio_histogram.assign(kHistBins, 0);

  const u64 lo64 = u64(to_u128(lo));
  const u64 hi64 = u64(to_u128(hi));
  const u64 nblocks = (hi64 - lo64) / opts.block_size + 1;

  std::vector<std::unique_ptr<BlockData>> blocks(nblocks);
  std::vector<char> done(nblocks, 0);

  FILE* ck = nullptr;
  FILE* side = nullptr;
  u64 already_done = 0;
  if (!opts.checkpoint_path.empty()) {
    CheckpointState st = load_checkpoint(opts.checkpoint_path, res.config_hash);
    if (opts.resume && st.done.empty())
      throw CheckpointError("resume requested but checkpoint has no completed blocks");
    for (u64 bid : st.done) {
      if (bid >= nblocks) throw CheckpointError("corrupt checkpoint: block id out of range");
      done[bid] = 1;
      blocks[bid] = std::make_unique<BlockData>(std::move(st.blocks.at(bid)));
      ++already_done;
    }
    bool fresh = st.done.empty();
    ck = std::fopen(opts.checkpoint_path.c_str(), "a");
    side = std::fopen((opts.checkpoint_path + ".part").c_str(), "a");
    if (!ck || !side) throw CheckpointError("cannot open checkpoint files for append");
    if (fresh) {
      // header only once; an empty pre-existing file gets one now
      std::fseek(ck, 0, SEEK_END);
      if (std::ftell(ck) == 0) {
        std::fprintf(ck, "%016" PRIx64 "\n", res.config_hash);
        fsync_file(ck);
      }
    }
  }

  const int nthreads = opts.workers > 0 ? opts.workers : omp_get_max_threads();
  const u64 budget = opts.max_blocks == 0 ? nblocks : std::min<u64>(nblocks, already_done + opts.max_blocks);
  u64 completed = already_done;
  std::string first_error;

  #pragma omp parallel for schedule(dynamic) num_threads(nthreads)
  for (i64 b = 0; b < i64(nblocks); ++b) {
    if (done[b]) continue;
    bool skip = false;
    #pragma omp critical(scan_budget)
    {
      if (completed >= budget) skip = true;
      else ++completed;
    }
    if (skip) continue;
    try {
      const u64 blo = lo64 + u64(b) * opts.block_size;
      const u64 bhi = std::min<u64>(hi64, blo + opts.block_size - 1);
      auto bd = std::make_unique<BlockData>(process_block(blo, bhi, mode, opts));
      #pragma omp critical(scan_io)
      {
        if (ck) {
          append_block_lines(side, u64(b), *bd);
          fsync_file(side);
          std::fprintf(ck, "B %" PRIu64 "\n", u64(b));
          fsync_file(ck);
        }
      }
      blocks[b] = std::move(bd);
      done[b] = 1;
    } catch (const std::exception& e) {
      #pragma omp critical(scan_io)
      if (first_error.empty()) first_error = e.what();
    }
  }

  if (ck) std::fclose(ck);
  if (side) std::fclose(side);
  if (!first_error.empty()) throw std::runtime_error("scan failed: " + first_error);

  res.complete = true;
  for (u64 b = 0; b < nblocks; ++b)
    if (!done[b]) res.complete = false;

  // ---------- deterministic merge in block order ----------
  Nat running_t = 0;
  u64 running_s = 0;
  bool any_t = false, any_s = false;
  std::map<Nat, std::pair<Nat, u64>> t_records, s_records;  // n -> (t, sigma)

  for (u64 b = 0; b < nblocks; ++b) {
    if (!blocks[b]) continue;
    const BlockData& bd = *blocks[b];
    res.stats.scanned += bd.scanned;
    res.stats.prefilter_hits += bd.prefilter_hits;
    res.stats.full_evaluations += bd.full_evals;
    res.stats.not_reached += bd.not_reached;
    for (const auto& n : bd.not_reached_ns)
      if (res.stats.not_reached_ns.size() < kMaxNotReachedKept)
        res.stats.not_reached_ns.push_back(n);
    if (bd.max_ratio > res.stats.max_sigma_ratio ||
        (bd.max_ratio == res.stats.max_sigma_ratio && res.stats.argmax_sigma_ratio == 0)) {
      res.stats.max_sigma_ratio = bd.max_ratio;
      res.stats.argmax_sigma_ratio = bd.argmax;
    }
    res.stats.log_t_bound_exceedances += bd.logt_exceed;
    for (u64 i = 0; i < kHistBins; ++i) res.stats.ratio_histogram[i] += bd.hist[i];

    for (const auto& [n, t, sg] : bd.t_cands) {
      if (!any_t || t > running_t) {
        running_t = t;
        any_t = true;
        t_records.emplace(n, std::make_pair(t, sg));
      }
    }
    for (const auto& [n, t, sg] : bd.s_cands) {
      if (!any_s || sg > running_s) {
        running_s = sg;
        any_s = true;
        s_records.emplace(n, std::make_pair(t, sg));
      }
    }
    for (const auto& r : bd.emitted) res.records.push_back(r);
  }

  // resolve record flags; in excursion mode record holders are part of the output
  if (mode == ScanMode::Excursions) {
    std::map<Nat, ScanRecord> by_n;
    for (auto& r : res.records) by_n.emplace(r.n, std::move(r));
    auto ensure_row = [&](const Nat& n, const Nat& t, u64 sg) -> ScanRecord& {
      auto it = by_n.find(n);
      if (it == by_n.end()) {
        ScanRecord rec;
        rec.n = n;
        CEvaluation ev = c_value(n, opts.step_cap, /*include_all_odd=*/false);
        rec.c = ev.c;
        rec.j_star = ev.j_star;
        rec.q_star = ev.q_star;
        rec.sigma_inf = sg;
        rec.t = t;
        it = by_n.emplace(n, std::move(rec)).first;
      }
      return it->second;
    };
    for (const auto& [n, ts] : t_records) ensure_row(n, ts.first, ts.second).t_record = true;
    for (const auto& [n, ts] : s_records) ensure_row(n, ts.first, ts.second).sigma_record = true;
    res.records.clear();
    for (auto& [n, r] : by_n) res.records.push_back(std::move(r));
  } else {
    for (auto& r : res.records) {
      r.t_record = t_records.count(r.n) > 0;
      r.sigma_record = s_records.count(r.n) > 0;
    }
  }

  res.stats.sigma_bound_ok = res.stats.max_sigma_ratio < constants().gamma_h;
  return res;
}

}  // namespace

u64 scan_config_hash(ScanMode mode, const Nat& lo, const Nat& hi, const ScanOptions& opts) {
  char th[64];
  std::snprintf(th, sizeof th, "%.17g", opts.threshold);
  std::string s = std::string("mode=") + mode_name(mode) + ";lo=" + lo.get_str() +
                  ";hi=" + hi.get_str() + ";threshold=" + th +
                  ";cap=" + std::to_string(opts.step_cap) +
                  ";block=" + std::to_string(opts.block_size) +
                  ";prefilter=" + (opts.prefilter ? "1" : "0");
  return fnv1a(s);
}

ScanResult scan_c(const Nat& lo, const Nat& hi, const ScanOptions& opts) {
  return scan_core(ScanMode::CValues, lo, hi, opts);
}

ScanResult scan_excursions(const Nat& lo, const Nat& hi, const ScanOptions& opts) {
  return scan_core(ScanMode::Excursions, lo, hi, opts);
}

ScanResult scan_sigma_ratio(const Nat& lo, const Nat& hi, const ScanOptions& opts) {
  return scan_core(ScanMode::SigmaRatio, lo, hi, opts);
}

ScanResult scan_c_serial(const Nat& lo, const Nat& hi, double threshold, u64 step_cap) {
  ScanOptions opts;
  opts.threshold = threshold;
  opts.step_cap = step_cap;
  opts.prefilter = false;
  opts.workers = 1;
  opts.block_size = u64{1} << 62;  // single block
  return scan_core(ScanMode::CValues, lo, hi, opts);
}

ScanResult scan_excursions_serial(const Nat& lo, const Nat& hi, u64 step_cap) {
  ScanOptions opts;
  opts.step_cap = step_cap;
  opts.workers = 1;
  opts.block_size = u64{1} << 62;
  return scan_core(ScanMode::Excursions, lo, hi, opts);
}

// ---------- output formats ----------

std::string to_csv(const ScanResult& r) {
  std::string out = "n,c,j_star,q_star,ratio,sigma_inf,t,flags\n";
  char buf[128];
  for (const auto& rec : r.records) {
    std::snprintf(buf, sizeof buf, ",%.3f,%" PRIu64 ",%" PRIu64 ",%.3f,%" PRIu64 ",",
                  trunc3(rec.c), rec.j_star.value_or(0), rec.q_star, trunc3(rec.ratio()),
                  rec.sigma_inf);
    out += rec.n.get_str();
    out += buf;
    out += rec.t.get_str();
    out += ',';
    out += flags_string(rec);
    out += '\n';
  }
  return out;
}

std::string to_jsonl(const ScanResult& r) {
  std::string out;
  char buf[160];
  for (const auto& rec : r.records) {
    out += "{\"n\":\"" + rec.n.get_str() + "\"";
    std::snprintf(buf, sizeof buf,
                  ",\"c\":%.12g,\"j_star\":%" PRIu64 ",\"q_star\":%" PRIu64
                  ",\"ratio\":%.12g,\"sigma_inf\":%" PRIu64,
                  rec.c, rec.j_star.value_or(0), rec.q_star, rec.ratio(), rec.sigma_inf);
    out += buf;
    out += ",\"t\":\"" + rec.t.get_str() + "\"";
    out += ",\"flags\":[";
    bool first = true;
    auto add = [&](bool set, const char* name) {
      if (!set) return;
      if (!first) out += ',';
      out += '"';
      out += name;
      out += '"';
      first = false;
    };
    add(rec.excursion_gt_n2, "t_gt_n2");
    add(rec.t_record, "t_record");
    add(rec.sigma_record, "sigma_record");
    out += "]}\n";
  }
  return out;
}

std::string to_text(const ScanResult& r) {
  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-14s %-7s %-5s %-5s %-7s %-9s %-16s %s\n", "n", "c", "j",
                "q", "q/j", "sigma", "t", "flags");
  out += buf;
  for (const auto& rec : r.records) {
    std::snprintf(buf, sizeof buf, "%-14s %-7.3f %-5" PRIu64 " %-5" PRIu64 " %-7.3f %-9" PRIu64
                                   " %-16s %s\n",
                  rec.n.get_str().c_str(), trunc3(rec.c), rec.j_star.value_or(0), rec.q_star,
                  trunc3(rec.ratio()), rec.sigma_inf, rec.t.get_str().c_str(),
                  flags_string(rec).c_str());
    out += buf;
  }
  std::snprintf(buf, sizeof buf,
                "# scanned=%" PRIu64 " prefilter_hits=%" PRIu64 " full_evals=%" PRIu64
                " not_reached=%" PRIu64 "\n# max sigma/ln n = %.6f at n=%s (bound ok: %s)\n",
                r.stats.scanned, r.stats.prefilter_hits, r.stats.full_evaluations,
                r.stats.not_reached, r.stats.max_sigma_ratio,
                r.stats.argmax_sigma_ratio.get_str().c_str(),
                r.stats.sigma_bound_ok ? "yes" : "NO");
  out += buf;
  return out;
}

}  // namespace syr
