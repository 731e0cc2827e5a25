#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace nodim {

struct BenchRow {
  std::size_t x = 0;
  double median_ms = 0.0;
  /// Runs timed together per sample (small inputs are batched).
  std::size_t batch = 1;
};

struct BenchResult {
  std::string algo;
  /// "n" or "k": the quantity varied along the grid.
  std::string axis;
  std::vector<BenchRow> rows;
  /// Least-squares slope of log(time) against log(x).
  double exponent = 0.0;
};

struct BenchConfig {
  std::string algo = "tverberg";
  std::vector<std::size_t> n_grid;
  /// Colorful only: vary k at fixed n instead of n at fixed k.
  std::vector<std::size_t> k_grid;
  std::size_t k = 16;
  std::size_t d = 16;
  std::size_t reps = 5;
  std::uint64_t seed = 1;
  /// Each sample repeats the run until it takes at least this long.
  double min_sample_ms = 5.0;
};

BenchResult run_bench(const BenchConfig& config);

double fit_exponent(const std::vector<BenchRow>& rows);

std::string format_bench(const BenchResult& r);

}  // namespace nodim
