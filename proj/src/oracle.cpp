#include "nodim/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "nodim/errors.hpp"

namespace nodim::oracle {

Point explicit_tensor(ConstVec x, ConstVec y) {
  Point out(x.size() * y.size());
  for (std::size_t j = 0; j < y.size(); ++j) {
    for (std::size_t i = 0; i < x.size(); ++i) out[j * x.size() + i] = x[i] * y[j];
  }
  return out;
}

ExplicitLift explicit_q_vectors(const LiftingGraph& g) {
  const auto edges = g.edges();
  ExplicitLift lift;
  lift.q.assign(g.size(), std::vector<int>(edges.size(), 0));
  for (std::size_t e = 0; e < edges.size(); ++e) {
    lift.q[edges[e].first][e] = 1;
    lift.q[edges[e].second][e] = -1;
  }
  return lift;
}

std::size_t matrix_rank(std::vector<std::vector<double>> rows, double tol) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (std::abs(rows[r][c]) > std::abs(rows[pivot][c])) pivot = r;
    }
    if (std::abs(rows[pivot][c]) <= tol) continue;
    std::swap(rows[pivot], rows[rank]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      const double f = rows[r][c] / rows[rank][c];
      if (f == 0.0) continue;
      for (std::size_t t = c; t < cols; ++t) rows[r][t] -= f * rows[rank][t];
    }
    ++rank;
  }
  return rank;
}

std::uint64_t multinomial(const std::vector<std::size_t>& sizes, std::uint64_t cap) {
  // Product of binomials C(r_1+..+r_i, r_i), each built exactly.
  std::uint64_t result = 1;
  std::uint64_t total = 0;
  for (std::size_t r : sizes) {
    for (std::size_t t = 1; t <= r; ++t) {
      ++total;
      // result * total / t stays integral at each step of the binomial.
      const unsigned __int128 next = static_cast<unsigned __int128>(result) * total / t;
      if (next > cap) return std::numeric_limits<std::uint64_t>::max();
      result = static_cast<std::uint64_t>(next);
    }
  }
  return result;
}

namespace {

struct LiftedSum {
  std::vector<double> acc;
  void add(const Point& v, double s) {
    for (std::size_t t = 0; t < v.size(); ++t) acc[t] += s * v[t];
  }
};

std::vector<double> as_double(const std::vector<int>& v) { return {v.begin(), v.end()}; }

}  // namespace

EnumerationReport enumerate_traversals(const PointSet& points, const SizeSpec& sizes, const LiftingGraph& g) {
  const std::size_t n = points.size();
  const std::size_t k = sizes.k();
  if (sizes.total() != n) throw InvalidArgument("sizes do not sum to the number of points");
  if (g.size() != k) throw InvalidArgument("lifting graph has the wrong number of nodes");
  const std::uint64_t expected = multinomial(sizes.sizes());
  if (expected == std::numeric_limits<std::uint64_t>::max()) throw InvalidArgument("instance too large for oracle");

  const ExplicitLift lift = explicit_q_vectors(g);
  // lifted[a][i] = p_a (x) q_i
  std::vector<std::vector<Point>> lifted(n, std::vector<Point>(k));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t i = 0; i < k; ++i) lifted[a][i] = explicit_tensor(points[a], as_double(lift.q[i]));
  }
  const std::size_t dim = points.dim() * lift.edge_dim();

  EnumerationReport rep;
  rep.min_sq_norm = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> left = sizes.sizes();
  std::vector<std::size_t> current(n, 0);
  LiftedSum sum{std::vector<double>(dim, 0.0)};
  double total = 0.0;
  const double inv_n2 = 1.0 / (static_cast<double>(n) * static_cast<double>(n));

  auto dfs = [&](auto&& self, std::size_t a) -> void {
    if (a == n) {
      double sq = 0.0;
      for (double v : sum.acc) sq += v * v;
      sq *= inv_n2;
      ++rep.count;
      total += sq;
      if (sq < rep.min_sq_norm) {
        rep.min_sq_norm = sq;
        rep.argmin = current;
      }
      return;
    }
    for (std::size_t i = 0; i < k; ++i) {
      if (left[i] == 0) continue;
      --left[i];
      current[a] = i;
      sum.add(lifted[a][i], 1.0);
      self(self, a + 1);
      sum.add(lifted[a][i], -1.0);
      ++left[i];
    }
  };
  dfs(dfs, 0);
  rep.mean_sq_norm = total / static_cast<double>(rep.count);
  return rep;
}

EnumerationReport enumerate_colorful(const ColorInstance& instance) {
  const std::size_t n = instance.classes();
  const std::size_t k = instance.k();
  std::uint64_t expected = 1;
  for (std::size_t a = 0; a < n; ++a) {
    expected *= k;
    if (expected > kEnumerationLimit) throw InvalidArgument("instance too large for oracle");
  }

  const LiftingGraph g = LiftingGraph::star(k);
  const ExplicitLift lift = explicit_q_vectors(g);
  const std::size_t dim = instance.dim() * lift.edge_dim();
  // y[a][j] = sum over members of class a under shift j of p (x) q_node
  std::vector<std::vector<Point>> y(n, std::vector<Point>(k, Point(dim, 0.0)));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t member = 0; member < k; ++member) {
        const Point t = explicit_tensor(instance[a][member], as_double(lift.q[shifted_node(member, j, k)]));
        for (std::size_t c = 0; c < dim; ++c) y[a][j][c] += t[c];
      }
    }
  }

  EnumerationReport rep;
  rep.min_sq_norm = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> current(n, 0);
  LiftedSum sum{std::vector<double>(dim, 0.0)};
  double total = 0.0;
  const double inv_n2 = 1.0 / (static_cast<double>(n) * static_cast<double>(n));
  auto dfs = [&](auto&& self, std::size_t a) -> void {
    if (a == n) {
      double sq = 0.0;
      for (double v : sum.acc) sq += v * v;
      sq *= inv_n2;
      ++rep.count;
      total += sq;
      if (sq < rep.min_sq_norm) {
        rep.min_sq_norm = sq;
        rep.argmin = current;
      }
      return;
    }
    for (std::size_t j = 0; j < k; ++j) {
      current[a] = j;
      sum.add(y[a][j], 1.0);
      self(self, a + 1);
      sum.add(y[a][j], -1.0);
    }
  };
  dfs(dfs, 0);
  rep.mean_sq_norm = total / static_cast<double>(rep.count);
  return rep;
}

double dist_to_hull(ConstVec x, const PointSet& s, double tol, std::size_t max_iterations) {
  if (s.empty()) throw InvalidArgument("empty point set");
  if (x.size() != s.dim()) throw InvalidArgument("dimension mismatch");
  const std::size_t m = s.size();
  const std::size_t d = s.dim();
  if (tol < 0.0) tol = 1e-7 * diameter_exact(s);
  // Rounding floor so that degenerate hulls still terminate.
  const double floor = 1e-12 * (norm(x) + coordinate_scale(s));
  tol = std::max(tol, floor);

  // Start from the vertex nearest to x.
  std::size_t start = 0;
  double best = squared_distance(x, s[0]);
  for (std::size_t j = 1; j < m; ++j) {
    const double v = squared_distance(x, s[j]);
    if (v < best) {
      best = v;
      start = j;
    }
  }
  std::vector<double> lambda(m, 0.0);
  lambda[start] = 1.0;
  Point y = s.point(start);
  Point g(d);

  double lower = 0.0;
  double upper = std::sqrt(best);
  for (std::size_t it = 0; it < max_iterations; ++it) {
    for (std::size_t t = 0; t < d; ++t) g[t] = y[t] - x[t];
    upper = norm(g);
    if (upper <= tol) return upper;

    // Frank-Wolfe vertex minimizes <g, s_j>; away vertex maximizes it over
    // the active set.
    std::size_t fw = 0;
    double fw_val = dot(g, s[0]);
    std::size_t away = m;
    double away_val = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < m; ++j) {
      const double v = dot(g, s[j]);
      if (v < fw_val) {
        fw_val = v;
        fw = j;
      }
      if (lambda[j] > 0.0 && v > away_val) {
        away_val = v;
        away = j;
      }
    }
    // Every hull point z has <-g, z> <= -fw_val, so the separating slab gives
    // dist >= (<-g, x> + fw_val) / |g|.
    lower = std::max(0.0, (fw_val - dot(g, x)) / upper);
    if (upper - lower <= tol) return upper;

    const double gy = dot(g, y);
    const double fw_gap = gy - fw_val;
    const double away_gap = away_val - gy;
    Point dir(d);
    double max_step;
    bool toward = fw_gap >= away_gap;
    if (toward) {
      for (std::size_t t = 0; t < d; ++t) dir[t] = s[fw][t] - y[t];
      max_step = 1.0;
    } else {
      for (std::size_t t = 0; t < d; ++t) dir[t] = y[t] - s[away][t];
      const double la = lambda[away];
      max_step = la >= 1.0 ? std::numeric_limits<double>::infinity() : la / (1.0 - la);
    }
    const double dd = squared_norm(dir);
    if (dd == 0.0) return upper;
    double step = std::clamp(-dot(g, dir) / dd, 0.0, max_step);
    if (step == 0.0) {
      if (upper - lower <= tol * 10.0) return upper;
      throw NotConverged("dist_to_hull stalled", lower, upper);
    }
    if (toward) {
      for (double& l : lambda) l *= (1.0 - step);
      lambda[fw] += step;
    } else {
      for (double& l : lambda) l *= (1.0 + step);
      lambda[away] -= step;
      if (step == max_step) lambda[away] = 0.0;
    }
    axpy(step, dir, y);
  }
  throw NotConverged("dist_to_hull did not converge", lower, upper);
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kMergeAngle = 1e-12;

double wrap(double a) {
  a = std::fmod(a, kTwoPi);
  return a < 0.0 ? a + kTwoPi : a;
}

}  // namespace

std::size_t depth_2d_ball(const Ball& ball, const PointSet& s) {
  if (s.dim() != 2 || ball.center.size() != 2) throw InvalidArgument("depth_2d needs planar input");
  const double cx = ball.center[0];
  const double cy = ball.center[1];
  const double r = ball.radius;

  // A point outside the disk lies in the halfplane with inward normal u iff
  // the angle between u and (p - c) is at most pi/2 + asin(r/rho).
  std::size_t always = 0;
  std::vector<double> angle;
  std::vector<double> half;
  std::vector<double> events;
  for (std::size_t a = 0; a < s.size(); ++a) {
    const double dx = s[a][0] - cx;
    const double dy = s[a][1] - cy;
    const double rho = std::hypot(dx, dy);
    if (rho <= r || rho == 0.0) {
      ++always;
      continue;
    }
    const double th = std::atan2(dy, dx);
    const double h = std::numbers::pi / 2.0 + std::asin(std::min(1.0, r / rho));
    angle.push_back(th);
    half.push_back(h);
    events.push_back(wrap(th + h));
    events.push_back(wrap(th - h));
  }
  if (angle.empty()) return always;

  std::sort(events.begin(), events.end());
  std::vector<double> distinct;
  for (double e : events) {
    if (distinct.empty() || e - distinct.back() > kMergeAngle) distinct.push_back(e);
  }
  if (distinct.size() > 1 && distinct.front() + kTwoPi - distinct.back() <= kMergeAngle) distinct.pop_back();

  auto count_at = [&](double phi) {
    std::size_t c = always;
    for (std::size_t a = 0; a < angle.size(); ++a) {
      double diff = std::abs(wrap(phi - angle[a]));
      diff = std::min(diff, kTwoPi - diff);
      if (diff <= half[a]) ++c;
    }
    return c;
  };

  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (std::size_t e = 0; e < distinct.size(); ++e) {
    const double lo = distinct[e];
    const double hi = e + 1 < distinct.size() ? distinct[e + 1] : distinct.front() + kTwoPi;
    best = std::min(best, count_at(0.5 * (lo + hi)));
  }
  return best;
}

std::size_t depth_2d_exact(ConstVec x, const PointSet& s) {
  if (x.size() != 2) throw InvalidArgument("depth_2d needs planar input");
  return depth_2d_ball(Ball{Point(x.begin(), x.end()), 0.0}, s);
}

std::size_t depth_1d_ball(double center, double radius, std::span<const double> values) {
  std::size_t right = 0;
  std::size_t left = 0;
  for (double v : values) {
    if (v >= center - radius) ++right;
    if (v <= center + radius) ++left;
  }
  return std::min(left, right);
}

std::size_t depth_2d_strip(ConstVec origin, ConstVec direction, double radius, const PointSet& s) {
  if (s.dim() != 2 || origin.size() != 2 || direction.size() != 2) throw InvalidArgument("depth_2d needs planar input");
  const double len = std::hypot(direction[0], direction[1]);
  if (len == 0.0) throw InvalidArgument("strip needs a direction");
  const double wx = -direction[1] / len;
  const double wy = direction[0] / len;
  std::size_t plus = 0;
  std::size_t minus = 0;
  for (std::size_t a = 0; a < s.size(); ++a) {
    const double h = (s[a][0] - origin[0]) * wx + (s[a][1] - origin[1]) * wy;
    if (h >= -radius) ++plus;
    if (h <= radius) ++minus;
  }
  return std::min(plus, minus);
}

}  // namespace nodim::oracle
