#include "nodim/geom.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nodim/errors.hpp"

namespace nodim {

namespace {

void check_finite(ConstVec p) {
  for (double x : p) {
    if (!std::isfinite(x)) throw InvalidArgument("non-finite coordinate");
  }
}

void require_nonempty(const PointSet& s) {
  if (s.empty()) throw InvalidArgument("empty point set");
}

}  // namespace

PointSet::PointSet(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw InvalidArgument("point dimension must be positive");
}

PointSet::PointSet(std::size_t dim, std::vector<double> coords) : dim_(dim), coords_(std::move(coords)) {
  if (dim == 0) throw InvalidArgument("point dimension must be positive");
  if (coords_.size() % dim != 0) throw InvalidArgument("coordinate count is not a multiple of the dimension");
  check_finite(coords_);
}

PointSet PointSet::from_rows(const std::vector<Point>& rows) {
  if (rows.empty()) throw InvalidArgument("cannot infer dimension of an empty row list");
  PointSet s(rows.front().size());
  s.reserve(rows.size());
  for (const auto& r : rows) s.push_back(r);
  return s;
}

Point PointSet::point(std::size_t i) const {
  auto p = (*this)[i];
  return {p.begin(), p.end()};
}

void PointSet::push_back(ConstVec p) {
  if (p.size() != dim_) {
    throw InvalidArgument("dimension mismatch: expected " + std::to_string(dim_) + ", got " +
                          std::to_string(p.size()));
  }
  check_finite(p);
  coords_.insert(coords_.end(), p.begin(), p.end());
}

PointSet PointSet::subset(std::span<const std::size_t> indices) const {
  PointSet out(dim_);
  out.reserve(indices.size());
  for (std::size_t i : indices) {
    if (i >= size()) throw InvalidArgument("point index out of range");
    auto p = (*this)[i];
    out.coords_.insert(out.coords_.end(), p.begin(), p.end());
  }
  return out;
}

bool Ball::contains(ConstVec p, double tol) const { return distance(p, center) <= radius + tol; }

LineThroughOrigin::LineThroughOrigin(Point direction) : direction_(std::move(direction)) {
  const double len = norm(direction_);
  if (!(len > 0.0) || !std::isfinite(len)) throw InvalidArgument("degenerate line direction");
  for (double& x : direction_) x /= len;
}

double dot(ConstVec a, ConstVec b) {
  if (a.size() != b.size()) throw InvalidArgument("dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double squared_norm(ConstVec a) {
  double s = 0.0;
  for (double x : a) s += x * x;
  return s;
}

double norm(ConstVec a) { return std::sqrt(squared_norm(a)); }

double squared_distance(ConstVec a, ConstVec b) {
  if (a.size() != b.size()) throw InvalidArgument("dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double t = a[i] - b[i];
    s += t * t;
  }
  return s;
}

double distance(ConstVec a, ConstVec b) { return std::sqrt(squared_distance(a, b)); }

void axpy(double s, ConstVec x, MutVec y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += s * x[i];
}

Point centroid(const PointSet& s, Summation mode) {
  require_nonempty(s);
  const std::size_t d = s.dim();
  Point sum(d, 0.0);
  if (mode == Summation::kNaive) {
    for (std::size_t i = 0; i < s.size(); ++i) axpy(1.0, s[i], sum);
  } else {
    // Kahan-Babuska (Neumaier) per coordinate.
    Point comp(d, 0.0);
    for (std::size_t i = 0; i < s.size(); ++i) {
      auto p = s[i];
      for (std::size_t j = 0; j < d; ++j) {
        const double t = sum[j] + p[j];
        if (std::abs(sum[j]) >= std::abs(p[j])) {
          comp[j] += (sum[j] - t) + p[j];
        } else {
          comp[j] += (p[j] - t) + sum[j];
        }
        sum[j] = t;
      }
    }
    for (std::size_t j = 0; j < d; ++j) sum[j] += comp[j];
  }
  const double inv = 1.0 / static_cast<double>(s.size());
  for (double& x : sum) x *= inv;
  return sum;
}

double diameter_exact(const PointSet& s) {
  require_nonempty(s);
  double best = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) best = std::max(best, squared_distance(s[i], s[j]));
  }
  return std::sqrt(best);
}

double diameter_upper(const PointSet& s) {
  require_nonempty(s);
  const Point c = centroid(s);
  double best = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) best = std::max(best, squared_distance(s[i], c));
  return 2.0 * std::sqrt(best);
}

DiameterEstimate diameter(const PointSet& s, std::size_t exact_limit) {
  if (s.size() <= exact_limit) return {diameter_exact(s), true};
  return {diameter_upper(s), false};
}

PointSet translate(const PointSet& s, ConstVec v) {
  if (v.size() != s.dim()) throw InvalidArgument("dimension mismatch in translate");
  std::vector<double> coords = s.coords();
  const std::size_t d = s.dim();
  for (std::size_t i = 0; i < coords.size(); ++i) coords[i] += v[i % d];
  return PointSet(d, std::move(coords));
}

Point project_orthogonal(ConstVec p, ConstVec v, double scale) {
  const double vv = squared_norm(v);
  if (std::sqrt(vv) <= 1e-12 * scale) throw InvalidArgument("degenerate projection direction");
  const double t = dot(p, v) / vv;
  Point out(p.begin(), p.end());
  axpy(-t, v, out);
  return out;
}

double coordinate_scale(const PointSet& s) {
  double m = 0.0;
  for (double x : s.coords()) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace nodim
