#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "nodim/geom.hpp"

namespace testing_support {

inline nodim::PointSet random_cloud(std::size_t n, std::size_t d, std::uint64_t seed, double spread = 1.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-spread, spread);
  nodim::PointSet s(d);
  nodim::Point p(d);
  for (std::size_t a = 0; a < n; ++a) {
    for (double& x : p) x = u(rng);
    s.push_back(p);
  }
  return s;
}

inline nodim::PointSet centered(const nodim::PointSet& s) {
  nodim::Point c = nodim::centroid(s);
  for (double& x : c) x = -x;
  return nodim::translate(s, c);
}

inline double rel_err(double a, double b) {
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) / scale;
}

}  // namespace testing_support
