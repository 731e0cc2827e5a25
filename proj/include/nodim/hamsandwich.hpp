#pragma once

#include <cstddef>
#include <vector>

#include "nodim/geom.hpp"
#include "nodim/tverberg.hpp"

namespace nodim {

/// Axes v_1..v_{k-1} of the iterated centroid-aligning projections, plus an
/// orthonormal basis of the subspace W that survives them.
///
/// Coordinates are always expressed in R^d. `origin` is the translation that
/// moved c(P_1) to 0 before projecting.
struct ProjectionChain {
  std::size_t ambient_dim = 0;
  Point origin;
  /// Raw axes as computed (each orthogonal to the earlier ones).
  std::vector<Point> axes;
  /// Unit directions of the lines l_1..l_{k-1}.
  std::vector<Point> lines;
  /// True where the centroid had already vanished and a canonical
  /// direction was substituted.
  std::vector<bool> fallback;
  /// Orthonormal basis of W, dim W = d - k + 1.
  std::vector<Point> complement_basis;

  /// Applies f_{k-1} o ... o f_1 to x - origin.
  Point project(ConstVec x) const;
  /// Coordinates of x in the basis of W (linear, not shifted by origin).
  Point intrinsic(ConstVec x) const;

  friend bool operator==(const ProjectionChain&, const ProjectionChain&) = default;
};

struct AlignedSets {
  ProjectionChain chain;
  /// Projected copies of the input sets (still in R^d, lying in W).
  std::vector<PointSet> sets;
};

/// Expects c(P_1) = 0 (pass the translated sets; `origin` is only recorded).
/// Throws when k > d.
AlignedSets align_centroids(const std::vector<PointSet>& sets, ConstVec origin = {});

struct SetDepth {
  std::size_t m = 0;
  /// ceil(|P_i| / m_i), the number of parts and the depth lower bound.
  std::size_t parts = 0;
  TverbergCertificate partition;
  /// |run ball centre| + run guaranteed radius: the radius around the origin
  /// that provably reaches every witness of this run.
  double radius_contribution = 0.0;
  /// Largest |witness| actually observed.
  double witness_radius = 0.0;

  friend bool operator==(const SetDepth&, const SetDepth&) = default;
};

struct JointBall {
  Ball ball;  // centred at the origin of the projected space
  std::vector<SetDepth> per_set;
};

/// One nearly balanced partition per projected set; the ball is centred at
/// the origin and reaches every witness of every run.
JointBall joint_depth_ball(const std::vector<PointSet>& projected, const std::vector<std::size_t>& m,
                           const PartitionOptions& options = {});

struct DepthCertificate {
  std::size_t k = 0;
  std::size_t dim = 0;
  ProjectionChain chain;
  /// Ball in original coordinates (centre = c(P_1)), lying in origin + W.
  Ball ball;
  /// Same centre in W coordinates.
  Point ball_center_intrinsic;
  std::vector<SetDepth> per_set;
  std::vector<std::size_t> depth_lower_bounds;
  std::vector<double> set_diameters;
  /// (2 + 2 sqrt 2) max_i diam(P_i)/sqrt(m_i), reported for comparison.
  double existential_radius = 0.0;
  double radius_achieved = 0.0;

  friend bool operator==(const DepthCertificate&, const DepthCertificate&) = default;
};

/// x lies in B x l_{k-1} x ... x l_1 iff its projection lands in the ball.
bool product_contains(const ProjectionChain& chain, const Ball& ball, ConstVec x, double tol = 0.0);

DepthCertificate generalized_ham_sandwich(const std::vector<PointSet>& sets, const std::vector<std::size_t>& m,
                                          const PartitionOptions& options = {});

}  // namespace nodim
