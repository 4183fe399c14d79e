// Benchmark comparing the serial reference paths against the OpenMP kernels:
// the range scan (with and without the prefilter) and partition enumeration.

#include "syr/partition.hpp"
#include "syr/scanner.hpp"

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>

using namespace syr;

namespace {

double seconds(std::chrono::steady_clock::time_point a,
               std::chrono::steady_clock::time_point b) {
  return std::chrono::duration<double>(b - a).count();
}

template <class F>
double timed(F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  auto t1 = std::chrono::steady_clock::now();
  return seconds(t0, t1);
}

}  // namespace

int main(int argc, char** argv) {
  u64 n_hi = 2000000;
  u32 part_j = 22;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--n") == 0 && i + 1 < argc) n_hi = std::strtoull(argv[++i], nullptr, 10);
    else if (std::strcmp(argv[i], "--j") == 0 && i + 1 < argc) part_j = u32(std::strtoul(argv[++i], nullptr, 10));
  }

  const int threads = omp_get_max_threads();
  std::printf("threads available: %d\n\n", threads);

  std::printf("-- range scan, [1, %llu] --\n", (unsigned long long)n_hi);
  u64 serial_rows = 0, par_rows = 0;
  double t_serial = timed([&] { serial_rows = scan_c_serial(1, n_hi).records.size(); });
  ScanOptions par;
  double t_par = timed([&] { par_rows = scan_c(1, n_hi, par).records.size(); });
  ScanOptions nopre;
  nopre.prefilter = false;
  double t_nopre = timed([&] { scan_c(1, n_hi, nopre); });
  std::printf("serial (no prefilter):   %8.3f s  (%.2f M n/s)  rows=%llu\n", t_serial,
              double(n_hi) / t_serial / 1e6, (unsigned long long)serial_rows);
  std::printf("openmp + prefilter:      %8.3f s  (%.2f M n/s)  rows=%llu\n", t_par,
              double(n_hi) / t_par / 1e6, (unsigned long long)par_rows);
  std::printf("openmp, no prefilter:    %8.3f s  (%.2f M n/s)\n", t_nopre,
              double(n_hi) / t_nopre / 1e6);
  std::printf("speedup serial -> openmp+prefilter: %.2fx%s\n\n", t_serial / t_par,
              serial_rows == par_rows ? "" : "  MISMATCH");

  std::printf("-- partition enumeration, j = %u --\n", part_j);
  PartitionSummary a, b;
  double t_ps = timed([&] { a = enumerate_partition_serial(part_j); });
  double t_pp = timed([&] { b = enumerate_partition(part_j); });
  bool same = a.cardinality == b.cardinality && a.minimum == b.minimum &&
              a.discrepancy == b.discrepancy;
  std::printf("serial:  %8.3f s\nopenmp:  %8.3f s\nspeedup: %.2fx%s\n", t_ps, t_pp, t_ps / t_pp,
              same ? "" : "  MISMATCH");
  return same && serial_rows == par_rows ? 0 : 1;
}
