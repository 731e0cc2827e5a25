#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "nodim/colorful.hpp"
#include "nodim/geom.hpp"
#include "nodim/lifting.hpp"
#include "nodim/tverberg.hpp"

/// Brute-force reference implementations. Everything here is deliberately
/// independent of the fast paths: tensors are materialized, assignments are
/// enumerated, and depths are swept exactly.
namespace nodim::oracle {

inline constexpr std::uint64_t kEnumerationLimit = 1'000'000;

/// x (x) y with component (j, i) at j*dim(x) + i.
Point explicit_tensor(ConstVec x, ConstVec y);

/// Lifting vectors as integer rows; one coordinate per edge, +1 at the lower
/// index endpoint and -1 at the higher one.
struct ExplicitLift {
  std::vector<std::vector<int>> q;
  std::size_t edge_dim() const { return q.empty() ? 0 : q.front().size(); }
};

ExplicitLift explicit_q_vectors(const LiftingGraph& g);

/// Rank by Gaussian elimination with partial pivoting.
std::size_t matrix_rank(std::vector<std::vector<double>> rows, double tol = 1e-9);

struct EnumerationReport {
  std::uint64_t count = 0;
  double mean_sq_norm = 0.0;
  double min_sq_norm = 0.0;
  /// Lexicographically first minimizer: class per point (traversals) or
  /// shift per class (colorful).
  std::vector<std::size_t> argmin;
};

/// n! / (r_1! ... r_k!), or UINT64_MAX once it exceeds `cap`.
std::uint64_t multinomial(const std::vector<std::size_t>& sizes, std::uint64_t cap = kEnumerationLimit);

/// Mean and min of |c(X)|^2 over every assignment with the given sizes,
/// where c(X) = (1/n) sum_a p_a (x) q_{class(a)}. No centring is applied.
EnumerationReport enumerate_traversals(const PointSet& points, const SizeSpec& sizes, const LiftingGraph& g);

/// Same over all k^n cyclic-shift choices, star graph rooted at node 0.
EnumerationReport enumerate_colorful(const ColorInstance& instance);

/// Euclidean distance from x to conv(S) within additive `tol` (default
/// 1e-7 * diam(S)), by away-step Frank-Wolfe over the vertices.
double dist_to_hull(ConstVec x, const PointSet& s, double tol = -1.0, std::size_t max_iterations = 100000);

/// Exact Tukey depth of x in the plane.
std::size_t depth_2d_exact(ConstVec x, const PointSet& s);
/// Exact depth of a disk: the fewest points in a closed halfplane that
/// contains the whole disk.
std::size_t depth_2d_ball(const Ball& ball, const PointSet& s);
/// Same on the line: min(#{x >= c - r}, #{x <= c + r}).
std::size_t depth_1d_ball(double center, double radius, std::span<const double> values);
/// Depth of the planar strip {z : dist(z, origin + R*direction) <= radius}.
/// Only halfplanes bounded by lines parallel to `direction` contain it.
std::size_t depth_2d_strip(ConstVec origin, ConstVec direction, double radius, const PointSet& s);

}  // namespace nodim::oracle
