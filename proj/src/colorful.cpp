#include "nodim/colorful.hpp"

#include <algorithm>
#include <cmath>

#include "nodim/errors.hpp"
#include "nodim/lifting.hpp"

namespace nodim {

ColorInstance::ColorInstance(std::vector<PointSet> classes) : classes_(std::move(classes)) {
  if (classes_.empty()) throw InvalidArgument("colorful instance needs at least one class");
  k_ = classes_.front().size();
  dim_ = classes_.front().dim();
  if (k_ == 0) throw InvalidArgument("colour classes must be nonempty");
  for (std::size_t i = 0; i < classes_.size(); ++i) {
    if (classes_[i].size() != k_) {
      throw InvalidArgument("ragged colour classes: class " + std::to_string(i) + " has " +
                            std::to_string(classes_[i].size()) + " points, expected " + std::to_string(k_));
    }
    if (classes_[i].dim() != dim_) throw InvalidArgument("colour classes differ in dimension");
  }
}

double colorful_radius_bound(std::size_t classes, std::size_t k, double max_diam) {
  if (k <= 1 || classes == 0) return 0.0;
  const double kd = static_cast<double>(k);
  return std::sqrt(2.0 * kd * (kd - 1.0) / (static_cast<double>(classes) * kd)) * max_diam;
}

namespace {

// Objective with the running sums already shifted by their mean. The mean
// shift leaves the value unchanged because the coefficient vectors sum to
// zero, and it keeps the evaluation independent of where the data sits.
double objective_centered(const PointSet& cls, std::size_t shift, std::span<const double> sums,
                          std::vector<double>& diff) {
  const std::size_t k = cls.size();
  const std::size_t d = cls.dim();
  const ConstVec center = cls[member_at_node(0, shift, k)];
  diff.assign(d, 0.0);  // running sum of all d_i
  double first = 0.0;
  double cross = 0.0;
  for (std::size_t node = 1; node < k; ++node) {
    const ConstVec p = cls[member_at_node(node, shift, k)];
    const double* s = sums.data() + node * d;
    for (std::size_t t = 0; t < d; ++t) {
      const double di = p[t] - center[t];
      first += di * di;
      cross += di * s[t];
      diff[t] += di;
    }
  }
  const double* s0 = sums.data();
  for (std::size_t t = 0; t < d; ++t) cross -= diff[t] * s0[t];
  return first + 2.0 * cross;
}

void center_rows(std::span<const double> sums, std::size_t k, std::size_t d, std::vector<double>& out) {
  out.assign(sums.begin(), sums.end());
  std::vector<double> mean(d, 0.0);
  for (std::size_t m = 0; m < k; ++m) {
    for (std::size_t t = 0; t < d; ++t) mean[t] += sums[m * d + t];
  }
  for (std::size_t t = 0; t < d; ++t) mean[t] /= static_cast<double>(k);
  for (std::size_t m = 0; m < k; ++m) {
    for (std::size_t t = 0; t < d; ++t) out[m * d + t] -= mean[t];
  }
}

}  // namespace

double colorful_objective(const PointSet& cls, std::size_t shift, std::span<const double> running_sums) {
  const std::size_t k = cls.size();
  const std::size_t d = cls.dim();
  if (running_sums.size() != k * d) throw InvalidArgument("need one running sum per lifting node");
  if (shift >= k) throw InvalidArgument("shift out of range");
  std::vector<double> centered;
  std::vector<double> diff;
  center_rows(running_sums, k, d, centered);
  return objective_centered(cls, shift, centered, diff);
}

ColorfulCertificate partition_colorful(const ColorInstance& instance) {
  const std::size_t n = instance.classes();
  const std::size_t k = instance.k();
  const std::size_t d = instance.dim();

  std::vector<double> sums(k * d, 0.0);
  std::vector<double> centered;
  std::vector<double> diff;
  ColorfulCertificate cert;
  cert.classes = n;
  cert.k = k;
  cert.dim = d;
  cert.shifts.assign(n, 0);

  for (std::size_t s = n; s-- > 0;) {
    const PointSet& cls = instance[s];
    center_rows(sums, k, d, centered);
    std::size_t best = 0;
    double best_value = objective_centered(cls, 0, centered, diff);
    for (std::size_t j = 1; j < k; ++j) {
      const double v = objective_centered(cls, j, centered, diff);
      if (v < best_value) {
        best_value = v;
        best = j;
      }
    }
    cert.shifts[s] = best;
    for (std::size_t m = 0; m < k; ++m) axpy(1.0, cls[member_at_node(m, best, k)], MutVec{sums.data() + m * d, d});
  }

  cert.colorful_sets.resize(k);
  cert.centroids.assign(k, Point(d, 0.0));
  const double inv = 1.0 / static_cast<double>(n);
  for (std::size_t m = 0; m < k; ++m) {
    cert.colorful_sets[m].reserve(n);
    for (std::size_t a = 0; a < n; ++a) {
      const std::size_t member = member_at_node(m, cert.shifts[a], k);
      cert.colorful_sets[m].emplace_back(a, member);
      axpy(inv, instance[a][member], cert.centroids[m]);
    }
  }

  for (std::size_t a = 0; a < n; ++a) cert.max_class_diameter = std::max(cert.max_class_diameter, diameter_exact(instance[a]));
  cert.ball.center = cert.centroids.front();
  for (const auto& c : cert.centroids) cert.radius_achieved = std::max(cert.radius_achieved, distance(c, cert.ball.center));
  cert.ball.radius = cert.radius_achieved;
  cert.radius_guaranteed = colorful_radius_bound(n, k, cert.max_class_diameter);
  cert.traversal_centroid_norm = std::sqrt(quadratic_form(LiftingGraph::star(k), cert.centroids));
  cert.traversal_bound = cert.radius_guaranteed;
  return cert;
}

}  // namespace nodim
