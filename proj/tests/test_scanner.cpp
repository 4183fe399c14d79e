#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "syr/scanner.hpp"
#include "syr/trajectory.hpp"

#include "known_values.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace syr;

namespace {

std::vector<u64> emitted_ns(const ScanResult& r) {
  std::vector<u64> ns;
  for (const auto& rec : r.records) ns.push_back(rec.n.get_ui());
  return ns;
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() / "syr_scan_test";
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const char* name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("published rows reproduced on [1, 100]") {
  ScanResult r = scan_c(1, 100);
  std::vector<u64> expect{1, 27, 31, 41, 47, 54, 55, 62, 63, 73};
  CHECK(emitted_ns(r) == expect);
  for (const auto& rec : r.records) {
    auto it = std::find_if(known::c_table().begin(), known::c_table().end(),
                           [&](const known::CTableRow& row) { return Nat(row.n) == rec.n; });
    REQUIRE(it != known::c_table().end());
    CHECK(rec.j_star == it->j);
    CHECK(rec.q_star == it->q);
    CHECK(std::abs(rec.c - it->c) <= 0.001);
  }
}

TEST_CASE("the gap (73, 159487) is empty") {
  ScanResult r = scan_c(74, 159486);
  CHECK(r.records.empty());
  CHECK(r.stats.scanned == 159486 - 74 + 1);
}

TEST_CASE("prefilter changes nothing") {
  ScanOptions with;
  ScanOptions without;
  without.prefilter = false;
  ScanResult a = scan_c(1, 200000, with);
  ScanResult b = scan_c(1, 200000, without);
  CHECK(to_csv(a) == to_csv(b));
  CHECK(a.stats.prefilter_hits < a.stats.scanned / 100);  // it actually prunes
  CHECK(b.stats.full_evaluations == b.stats.scanned);
}

TEST_CASE("byte-identical output across 1, 4 and 16 workers") {
  std::string base;
  for (int workers : {1, 4, 16}) {
    ScanOptions opts;
    opts.workers = workers;
    opts.block_size = 1 << 16;
    ScanResult r = scan_c(1, 2000000, opts);
    std::string csv = to_csv(r);
    if (base.empty()) base = csv;
    CHECK(base == csv);
  }
  for (int workers : {1, 4, 16}) {
    ScanOptions opts;
    opts.workers = workers;
    opts.block_size = 1 << 16;
    ScanResult r = scan_excursions(1, 500000, opts);
    static std::string ebase;
    std::string csv = to_csv(r);
    if (workers == 1) ebase = csv;
    CHECK(ebase == csv);
  }
}

TEST_CASE("excursion scan against the serial reference") {
  ScanOptions opts;
  opts.block_size = 1 << 16;
  ScanResult par = scan_excursions(1, 1000000, opts);
  ScanResult ser = scan_excursions_serial(1, 1000000);
  CHECK(to_csv(par) == to_csv(ser));

  // 27 is flagged, 5 is not
  bool has27 = false, has5 = false;
  for (const auto& rec : par.records) {
    if (rec.n == 27) {
      has27 = rec.excursion_gt_n2;
      CHECK(rec.t == 4616);
    }
    if (rec.n == 5 && rec.excursion_gt_n2) has5 = true;
  }
  CHECK(has27);
  CHECK_FALSE(has5);

  // record flags: t(n) strictly increasing along flagged rows
  Nat last_t = 0;
  for (const auto& rec : par.records)
    if (rec.t_record) {
      CHECK(rec.t > last_t);
      last_t = rec.t;
    }
  CHECK(last_t > 0);
}

TEST_CASE("sigma ratio statistics") {
  ScanResult r = scan_sigma_ratio(2, 1000000);
  CHECK(r.stats.max_sigma_ratio < constants().gamma_h);
  CHECK(r.stats.sigma_bound_ok);
  CHECK(r.stats.log_t_bound_exceedances == 0);
  u64 total = 0;
  for (u64 b : r.stats.ratio_histogram) total += b;
  CHECK(total == r.stats.scanned - 0);  // every n >= 2 lands in one bin

  // pure halving family: ratio = 1/ln 2
  ScanResult p2 = scan_sigma_ratio(1024, 1024);
  CHECK(p2.stats.max_sigma_ratio == doctest::Approx(1.0 / kLn2).epsilon(1e-12));
}

TEST_CASE("flags stay consistent with trajectory recomputation") {
  ScanResult r = scan_c(1, 100);
  for (const auto& rec : r.records) {
    TrajectoryProfile p = profile(rec.n);
    CHECK(p.sigma_inf == rec.sigma_inf);
    CHECK(p.t == rec.t);
    CHECK(rec.excursion_gt_n2 == (p.t > rec.n * rec.n));
  }
}

TEST_CASE("checkpoint: interrupt and resume equals a fresh run") {
  TempDir tmp;
  ScanOptions fresh;
  fresh.block_size = 1 << 14;
  ScanResult full = scan_c(1, 300000, fresh);

  ScanOptions half = fresh;
  half.checkpoint_path = tmp.file("ck.txt");
  half.max_blocks = 9;  // stop mid-way
  ScanResult part = scan_c(1, 300000, half);
  CHECK_FALSE(part.complete);

  ScanOptions rest = fresh;
  rest.checkpoint_path = tmp.file("ck.txt");
  rest.resume = true;
  ScanResult done = scan_c(1, 300000, rest);
  CHECK(done.complete);
  CHECK(to_csv(done) == to_csv(full));
  CHECK(done.stats.scanned == full.stats.scanned);
  CHECK(done.stats.prefilter_hits == full.stats.prefilter_hits);
}

TEST_CASE("checkpoint: corrupt and mismatched files are refused") {
  TempDir tmp;
  {
    std::ofstream out(tmp.file("bad.txt"));
    out << "not-a-hash zzz\nB x\n";
  }
  ScanOptions opts;
  opts.checkpoint_path = tmp.file("bad.txt");
  CHECK_THROWS_AS(scan_c(1, 100000, opts), CheckpointError);

  // a checkpoint from a different config must be refused
  ScanOptions a;
  a.checkpoint_path = tmp.file("cfg.txt");
  a.block_size = 1 << 14;
  scan_c(1, 100000, a);
  ScanOptions b = a;
  b.threshold = 0.25;
  CHECK_THROWS_AS(scan_c(1, 100000, b), CheckpointError);

  // empty checkpoint file behaves like a full run
  {
    std::ofstream out(tmp.file("empty.txt"));
  }
  ScanOptions c;
  c.checkpoint_path = tmp.file("empty.txt");
  c.block_size = 1 << 14;
  ScanResult r = scan_c(1, 100000, c);
  CHECK(r.complete);
  ScanResult plain = scan_c(1, 100000);
  CHECK(to_csv(r) == to_csv(plain));
}

TEST_CASE("resume without completed work is an error") {
  TempDir tmp;
  ScanOptions opts;
  opts.checkpoint_path = tmp.file("none.txt");
  opts.resume = true;
  CHECK_THROWS_AS(scan_c(1, 100000, opts), CheckpointError);
}

TEST_CASE("output formats") {
  ScanResult r = scan_c(1, 100);
  std::string csv = to_csv(r);
  CHECK(csv.rfind("n,c,j_star,q_star,ratio,sigma_inf,t,flags\n", 0) == 0);
  CHECK(csv.find("27,0.472,45,33,0.733,70,4616") != std::string::npos);
  CHECK(csv.find("63,0.053,43,31,0.720,") != std::string::npos);
  std::string jsonl = to_jsonl(r);
  CHECK(jsonl.find("\"n\":\"27\"") != std::string::npos);
  CHECK(jsonl.find("\"j_star\":45") != std::string::npos);
}

TEST_CASE("scan argument validation") {
  CHECK_THROWS_AS(scan_c(0, 10), std::invalid_argument);
  CHECK_THROWS_AS(scan_c(10, 5), std::invalid_argument);
  ScanOptions opts;
  opts.threshold = -1.0;
  CHECK_THROWS_AS(scan_c(1, 10, opts), std::invalid_argument);
}
