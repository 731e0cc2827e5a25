#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace nodim {

/// A point (or vector) in R^d.
using Point = std::vector<double>;
using ConstVec = std::span<const double>;
using MutVec = std::span<double>;

/// Ordered list of points sharing one dimension, stored row-major.
///
/// Point identity is its index; every partition the library reports refers
/// to these indices. Coordinates are checked to be finite on insertion.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(std::size_t dim);
  /// `coords` holds size/dim rows back to back.
  PointSet(std::size_t dim, std::vector<double> coords);

  static PointSet from_rows(const std::vector<Point>& rows);

  std::size_t size() const { return dim_ == 0 ? 0 : coords_.size() / dim_; }
  std::size_t dim() const { return dim_; }
  bool empty() const { return coords_.empty(); }

  ConstVec operator[](std::size_t i) const { return {coords_.data() + i * dim_, dim_}; }
  Point point(std::size_t i) const;

  void push_back(ConstVec p);
  void reserve(std::size_t n) { coords_.reserve(n * dim_); }

  const std::vector<double>& coords() const { return coords_; }

  /// Points at `indices`, in that order.
  PointSet subset(std::span<const std::size_t> indices) const;

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<double> coords_;
};

struct Ball {
  Point center;
  double radius = 0.0;

  /// Closed-ball membership with absolute slack `tol`.
  bool contains(ConstVec p, double tol = 0.0) const;

  friend bool operator==(const Ball&, const Ball&) = default;
};

/// Unit direction of a line through the origin.
class LineThroughOrigin {
 public:
  /// Normalizes `direction`; throws on a (near) zero vector.
  explicit LineThroughOrigin(Point direction);
  const Point& direction() const { return direction_; }

 private:
  Point direction_;
};

enum class Summation { kNaive, kCompensated };

struct DiameterEstimate {
  double value = 0.0;
  bool exact = true;

  friend bool operator==(const DiameterEstimate&, const DiameterEstimate&) = default;
};

inline constexpr std::size_t kExactDiameterLimit = 4096;

double dot(ConstVec a, ConstVec b);
double squared_norm(ConstVec a);
double norm(ConstVec a);
double squared_distance(ConstVec a, ConstVec b);
double distance(ConstVec a, ConstVec b);
/// y += s * x
void axpy(double s, ConstVec x, MutVec y);

Point centroid(const PointSet& s, Summation mode = Summation::kNaive);

double diameter_exact(const PointSet& s);
/// 2 * max distance to the centroid; between the diameter and twice it.
double diameter_upper(const PointSet& s);
/// Exact below `exact_limit` points, otherwise the upper bound.
DiameterEstimate diameter(const PointSet& s, std::size_t exact_limit = kExactDiameterLimit);

PointSet translate(const PointSet& s, ConstVec v);

/// p - (<p,v>/|v|^2) v. Throws when |v| <= 1e-12 * scale.
Point project_orthogonal(ConstVec p, ConstVec v, double scale = 1.0);

/// Largest absolute coordinate; used as the data scale for tolerances.
double coordinate_scale(const PointSet& s);

}  // namespace nodim
