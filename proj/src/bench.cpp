#include "nodim/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>

#include "nodim/colorful.hpp"
#include "nodim/errors.hpp"
#include "nodim/generate.hpp"
#include "nodim/tverberg.hpp"

namespace nodim {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

// Keeps the optimizer from discarding a run.
volatile double g_sink = 0.0;

BenchRow time_it(std::size_t x, const std::function<double()>& run, const BenchConfig& cfg) {
  // Calibrate the batch so that one sample lasts at least min_sample_ms.
  std::size_t batch = 1;
  for (;;) {
    const auto t0 = Clock::now();
    for (std::size_t b = 0; b < batch; ++b) g_sink = g_sink + run();
    const double ms = elapsed_ms(t0);
    if (ms >= cfg.min_sample_ms || batch >= (std::size_t{1} << 20)) break;
    batch *= ms > 0.0 ? std::clamp<std::size_t>(static_cast<std::size_t>(cfg.min_sample_ms / ms * 1.2) + 1, 2, 64)
                      : 64;
  }
  std::vector<double> samples;
  for (std::size_t r = 0; r < std::max<std::size_t>(cfg.reps, 1); ++r) {
    const auto t0 = Clock::now();
    for (std::size_t b = 0; b < batch; ++b) g_sink = g_sink + run();
    samples.push_back(elapsed_ms(t0) / static_cast<double>(batch));
  }
  std::sort(samples.begin(), samples.end());
  const std::size_t m = samples.size();
  const double median = m % 2 ? samples[m / 2] : 0.5 * (samples[m / 2 - 1] + samples[m / 2]);
  return BenchRow{x, median, batch};
}

}  // namespace

double fit_exponent(const std::vector<BenchRow>& rows) {
  if (rows.size() < 2) return 0.0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& r : rows) {
    const double x = std::log(static_cast<double>(r.x));
    const double y = std::log(std::max(r.median_ms, 1e-9));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double m = static_cast<double>(rows.size());
  const double den = m * sxx - sx * sx;
  return den == 0.0 ? 0.0 : (m * sxy - sx * sy) / den;
}

BenchResult run_bench(const BenchConfig& cfg) {
  BenchResult res;
  res.algo = cfg.algo;
  PartitionOptions opt;
  // The O(n^2) exact diameter would dominate; the upper bound is linear.
  opt.exact_diameter_limit = 0;

  if (cfg.algo == "tverberg") {
    if (cfg.n_grid.empty()) throw InvalidArgument("bench needs --n-grid");
    res.axis = "n";
    for (std::size_t n : cfg.n_grid) {
      if (n < cfg.k || cfg.k == 0) throw InvalidArgument("every grid value must be at least k");
      const PointSet p = generate_points(Distribution::kUniform, n, cfg.d, cfg.seed + n);
      std::vector<std::size_t> sizes(cfg.k);
      for (std::size_t i = 0; i < cfg.k; ++i) sizes[i] = n / cfg.k + (i < n % cfg.k ? 1 : 0);
      const SizeSpec spec(sizes);
      res.rows.push_back(time_it(n, [&] { return partition_general(p, spec, opt).radius_achieved; }, cfg));
    }
  } else if (cfg.algo == "colorful") {
    if (!cfg.k_grid.empty()) {
      res.axis = "k";
      const std::size_t n = cfg.n_grid.empty() ? 64 : cfg.n_grid.front();
      for (std::size_t k : cfg.k_grid) {
        const ColorInstance inst = generate_classes(Distribution::kUniform, n, k, cfg.d, cfg.seed + k);
        res.rows.push_back(time_it(k, [&] { return partition_colorful(inst).radius_achieved; }, cfg));
      }
    } else {
      if (cfg.n_grid.empty()) throw InvalidArgument("bench needs --n-grid or --k-grid");
      res.axis = "n";
      for (std::size_t n : cfg.n_grid) {
        const ColorInstance inst = generate_classes(Distribution::kUniform, n, cfg.k, cfg.d, cfg.seed + n);
        res.rows.push_back(time_it(n, [&] { return partition_colorful(inst).radius_achieved; }, cfg));
      }
    }
  } else {
    throw InvalidArgument("unknown bench algorithm '" + cfg.algo + "'");
  }
  res.exponent = fit_exponent(res.rows);
  return res;
}

std::string format_bench(const BenchResult& r) {
  std::string out = r.axis + ",median_ms,batch\n";
  char buf[96];
  for (const auto& row : r.rows) {
    std::snprintf(buf, sizeof buf, "%zu,%.6f,%zu\n", row.x, row.median_ms, row.batch);
    out += buf;
  }
  std::snprintf(buf, sizeof buf, "exponent(%s vs %s): %.3f\n", r.algo.c_str(), r.axis.c_str(), r.exponent);
  out += buf;
  return out;
}

}  // namespace nodim
