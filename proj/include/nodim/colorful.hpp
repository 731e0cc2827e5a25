#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "nodim/geom.hpp"

namespace nodim {

/// n colour classes of exactly k points each, all in the same dimension.
class ColorInstance {
 public:
  explicit ColorInstance(std::vector<PointSet> classes);

  std::size_t classes() const { return classes_.size(); }
  std::size_t k() const { return k_; }
  std::size_t dim() const { return dim_; }
  std::size_t total() const { return classes_.size() * k_; }
  const PointSet& operator[](std::size_t i) const { return classes_[i]; }
  const std::vector<PointSet>& all() const { return classes_; }

 private:
  std::vector<PointSet> classes_;
  std::size_t k_ = 0;
  std::size_t dim_ = 0;
};

/// Lifting node that member `member` of a class receives under cyclic shift
/// `shift` (both 0-based): (member + shift) mod k.
inline std::size_t shifted_node(std::size_t member, std::size_t shift, std::size_t k) { return (member + shift) % k; }
/// Inverse: member lifted to `node` under `shift`.
inline std::size_t member_at_node(std::size_t node, std::size_t shift, std::size_t k) {
  return (node + k - shift % k) % k;
}

struct ColorfulCertificate {
  std::size_t classes = 0;
  std::size_t k = 0;
  std::size_t dim = 0;
  /// Chosen cyclic shift per class.
  std::vector<std::size_t> shifts;
  /// colorful_sets[m] lists (class, member) pairs lifted with q_m.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> colorful_sets;
  std::vector<Point> centroids;
  Ball ball;
  double radius_guaranteed = 0.0;
  double radius_achieved = 0.0;
  double max_class_diameter = 0.0;
  double traversal_centroid_norm = 0.0;
  double traversal_bound = 0.0;

  friend bool operator==(const ColorfulCertificate&, const ColorfulCertificate&) = default;
};

/// |y_s|^2 + 2<y_s, sum of the lifted points already chosen> for class
/// `cls` under `shift`, with the star graph rooted at node 0. `running_sums`
/// holds S_0..S_{k-1} as k rows of length d (S_m = sum of points already
/// lifted with q_m).
double colorful_objective(const PointSet& cls, std::size_t shift, std::span<const double> running_sums);

ColorfulCertificate partition_colorful(const ColorInstance& instance);

/// sqrt(2k(k-1)/N) * max_diam with N = classes * k.
double colorful_radius_bound(std::size_t classes, std::size_t k, double max_diam);

}  // namespace nodim
