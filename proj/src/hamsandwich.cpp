#include "nodim/hamsandwich.hpp"

#include <algorithm>
#include <cmath>

#include "nodim/errors.hpp"

namespace nodim {

namespace {

constexpr double kDegenerateAxis = 1e-12;

double max_scale(const std::vector<PointSet>& sets) {
  double s = 0.0;
  for (const auto& p : sets) s = std::max(s, coordinate_scale(p));
  return s > 0.0 ? s : 1.0;
}

// e_t minus its components along the (unit) directions in `basis`.
Point residual(std::size_t t, std::size_t d, const std::vector<Point>& basis) {
  Point e(d, 0.0);
  e[t] = 1.0;
  // Two passes of modified Gram-Schmidt.
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& b : basis) axpy(-dot(e, b), b, e);
  }
  return e;
}

Point unit(const Point& v) {
  Point u(v);
  const double nv = norm(v);
  for (double& x : u) x /= nv;
  return u;
}

}  // namespace

Point ProjectionChain::project(ConstVec x) const {
  Point p(x.begin(), x.end());
  if (!origin.empty()) axpy(-1.0, origin, p);
  for (const auto& v : axes) {
    const double f = dot(p, v) / squared_norm(v);
    axpy(-f, v, p);
  }
  return p;
}

Point ProjectionChain::intrinsic(ConstVec x) const {
  Point out;
  out.reserve(complement_basis.size());
  for (const auto& b : complement_basis) out.push_back(dot(x, b));
  return out;
}

AlignedSets align_centroids(const std::vector<PointSet>& sets, ConstVec origin) {
  if (sets.empty()) throw InvalidArgument("need at least one point set");
  const std::size_t k = sets.size();
  const std::size_t d = sets.front().dim();
  for (const auto& s : sets) {
    if (s.empty()) throw InvalidArgument("empty point set");
    if (s.dim() != d) throw InvalidArgument("point sets differ in dimension");
  }
  if (k > d) throw InvalidArgument("ham-sandwich needs k <= d");

  AlignedSets out;
  ProjectionChain& chain = out.chain;
  chain.ambient_dim = d;
  chain.origin = origin.empty() ? Point(d, 0.0) : Point(origin.begin(), origin.end());

  // Centroids once; later axes come from projecting these stored vectors.
  std::vector<Point> c;
  c.reserve(k);
  for (const auto& s : sets) c.push_back(centroid(s));
  const double scale = max_scale(sets);

  for (std::size_t i = 1; i < k; ++i) {
    Point v = c[i];
    for (const auto& a : chain.axes) axpy(-dot(v, a) / squared_norm(a), a, v);
    bool fell_back = false;
    if (norm(v) <= kDegenerateAxis * scale) {
      fell_back = true;
      for (std::size_t t = 0; t < d; ++t) {
        Point r = residual(t, d, chain.lines);
        if (norm(r) > 1e-6) {
          v = std::move(r);
          break;
        }
      }
    }
    chain.lines.push_back(unit(v));
    chain.axes.push_back(std::move(v));
    chain.fallback.push_back(fell_back);
  }

  for (std::size_t t = 0; t < d && chain.complement_basis.size() + chain.lines.size() < d; ++t) {
    std::vector<Point> against = chain.lines;
    against.insert(against.end(), chain.complement_basis.begin(), chain.complement_basis.end());
    Point r = residual(t, d, against);
    if (norm(r) > 1e-6) chain.complement_basis.push_back(unit(r));
  }

  // The projection is applied to points that are already centred, so the
  // chain's own origin must not be subtracted a second time.
  ProjectionChain no_shift = chain;
  no_shift.origin.clear();
  out.sets.reserve(k);
  for (const auto& s : sets) {
    PointSet proj(d);
    proj.reserve(s.size());
    for (std::size_t a = 0; a < s.size(); ++a) proj.push_back(no_shift.project(s[a]));
    out.sets.push_back(std::move(proj));
  }
  return out;
}

JointBall joint_depth_ball(const std::vector<PointSet>& projected, const std::vector<std::size_t>& m,
                           const PartitionOptions& options) {
  if (m.size() != projected.size()) throw InvalidArgument("need one m value per point set");
  if (projected.empty()) throw InvalidArgument("need at least one point set");
  JointBall out;
  const std::size_t d = projected.front().dim();
  out.ball.center.assign(d, 0.0);
  for (std::size_t i = 0; i < projected.size(); ++i) {
    const std::size_t size = projected[i].size();
    if (m[i] < 2 || m[i] > size) {
      throw InvalidArgument("m[" + std::to_string(i) + "] = " + std::to_string(m[i]) + " must lie in [2, " +
                            std::to_string(size) + "]");
    }
    SetDepth sd;
    sd.m = m[i];
    sd.parts = (size + m[i] - 1) / m[i];
    sd.partition = partition_nearly_balanced(projected[i], sd.parts, options);
    sd.radius_contribution = norm(sd.partition.ball.center) + sd.partition.radius_guaranteed;
    for (const auto& w : sd.partition.witnesses) sd.witness_radius = std::max(sd.witness_radius, norm(w));
    out.ball.radius = std::max(out.ball.radius, sd.radius_contribution);
    out.per_set.push_back(std::move(sd));
  }
  return out;
}

bool product_contains(const ProjectionChain& chain, const Ball& ball, ConstVec x, double tol) {
  const Point p = chain.project(x);
  // Ball centre sits at chain.origin, which projects to 0.
  Point c = chain.project(ball.center);
  return distance(p, c) <= ball.radius + tol;
}

DepthCertificate generalized_ham_sandwich(const std::vector<PointSet>& sets, const std::vector<std::size_t>& m,
                                          const PartitionOptions& options) {
  if (sets.empty()) throw InvalidArgument("need at least one point set");
  if (m.size() != sets.size()) throw InvalidArgument("need one m value per point set");
  if (sets.front().empty()) throw InvalidArgument("empty point set");

  const Point origin = centroid(sets.front(), options.summation);
  Point neg(origin);
  for (double& x : neg) x = -x;
  std::vector<PointSet> shifted;
  shifted.reserve(sets.size());
  for (const auto& s : sets) shifted.push_back(translate(s, neg));

  AlignedSets aligned = align_centroids(shifted, origin);
  JointBall joint = joint_depth_ball(aligned.sets, m, options);

  DepthCertificate cert;
  cert.k = sets.size();
  cert.dim = sets.front().dim();
  cert.chain = std::move(aligned.chain);
  cert.ball.center = origin;
  cert.ball.radius = joint.ball.radius;
  cert.ball_center_intrinsic = cert.chain.intrinsic(origin);
  cert.per_set = std::move(joint.per_set);
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const SetDepth& sd = cert.per_set[i];
    cert.depth_lower_bounds.push_back(sd.parts);
    cert.radius_achieved = std::max(cert.radius_achieved, sd.witness_radius);
    const double diam = diameter(sets[i], options.exact_diameter_limit).value;
    cert.set_diameters.push_back(diam);
    cert.existential_radius =
        std::max(cert.existential_radius, (2.0 + 2.0 * std::sqrt(2.0)) * diam / std::sqrt(static_cast<double>(m[i])));
  }
  return cert;
}

}  // namespace nodim
