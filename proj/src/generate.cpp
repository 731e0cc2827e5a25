#include "nodim/generate.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "nodim/errors.hpp"

namespace nodim {

Distribution distribution_from_string(const std::string& s) {
  if (s == "uniform") return Distribution::kUniform;
  if (s == "gaussian") return Distribution::kGaussian;
  if (s == "clustered") return Distribution::kClustered;
  throw InvalidArgument("unknown distribution '" + s + "'");
}

std::string to_string(Distribution d) {
  switch (d) {
    case Distribution::kUniform:
      return "uniform";
    case Distribution::kGaussian:
      return "gaussian";
    case Distribution::kClustered:
      return "clustered";
  }
  return "unknown";
}

namespace {

constexpr std::size_t kClusters = 4;
constexpr double kClusterSpread = 0.1;

class Stream {
 public:
  explicit Stream(std::uint64_t seed) : eng_(seed) {}

  // [0, 1)
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 == 0.0) u1 = uniform();
    const double u2 = uniform();
    const double rad = std::sqrt(-2.0 * std::log(u1));
    spare_ = rad * std::sin(2.0 * std::numbers::pi * u2);
    have_spare_ = true;
    return rad * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

void fill(Distribution dist, Stream& rng, std::size_t n, std::size_t d, PointSet& out) {
  std::vector<Point> centres;
  if (dist == Distribution::kClustered) {
    for (std::size_t c = 0; c < kClusters; ++c) {
      Point p(d);
      for (double& x : p) x = 2.0 * rng.uniform() - 1.0;
      centres.push_back(std::move(p));
    }
  }
  Point p(d);
  for (std::size_t a = 0; a < n; ++a) {
    switch (dist) {
      case Distribution::kUniform:
        for (double& x : p) x = 2.0 * rng.uniform() - 1.0;
        break;
      case Distribution::kGaussian:
        for (double& x : p) x = rng.gaussian();
        break;
      case Distribution::kClustered: {
        const auto c = std::min<std::size_t>(kClusters - 1, static_cast<std::size_t>(rng.uniform() * kClusters));
        for (std::size_t t = 0; t < d; ++t) p[t] = centres[c][t] + kClusterSpread * rng.gaussian();
        break;
      }
    }
    out.push_back(p);
  }
}

}  // namespace

PointSet generate_points(Distribution dist, std::size_t n, std::size_t d, std::uint64_t seed) {
  if (d == 0) throw InvalidArgument("dimension must be positive");
  Stream rng(seed);
  PointSet out(d);
  out.reserve(n);
  fill(dist, rng, n, d, out);
  return out;
}

ColorInstance generate_classes(Distribution dist, std::size_t classes, std::size_t k, std::size_t d,
                               std::uint64_t seed) {
  if (d == 0 || k == 0 || classes == 0) throw InvalidArgument("classes, k and d must be positive");
  Stream rng(seed);
  std::vector<PointSet> out;
  out.reserve(classes);
  for (std::size_t a = 0; a < classes; ++a) {
    PointSet s(d);
    fill(dist, rng, k, d, s);
    out.push_back(std::move(s));
  }
  return ColorInstance(std::move(out));
}

}  // namespace nodim
