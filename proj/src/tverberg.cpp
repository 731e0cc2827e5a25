#include "nodim/tverberg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nodim/errors.hpp"

namespace nodim {

SizeSpec::SizeSpec(std::vector<std::size_t> sizes) : sizes_(std::move(sizes)) {
  if (sizes_.empty()) throw InvalidArgument("size spec needs at least one part");
  for (std::size_t r : sizes_) {
    if (r < 1) throw InvalidArgument("every part size must be at least 1");
    total_ += r;
  }
}

SizeSpec SizeSpec::balanced(std::size_t n, std::size_t k) {
  if (k == 0 || n % k != 0) throw InvalidArgument("balanced sizes need k to divide n");
  return SizeSpec(std::vector<std::size_t>(k, n / k));
}

std::size_t SizeSpec::min_size() const { return *std::min_element(sizes_.begin(), sizes_.end()); }

bool SizeSpec::is_balanced() const {
  return std::all_of(sizes_.begin(), sizes_.end(), [&](std::size_t r) { return r == sizes_.front(); });
}

std::string to_string(PartitionMode mode) {
  switch (mode) {
    case PartitionMode::kGeneral:
      return "general";
    case PartitionMode::kBalanced:
      return "balanced";
    case PartitionMode::kNearlyBalanced:
      return "nearly_balanced";
  }
  return "unknown";
}

PartitionMode partition_mode_from_string(const std::string& s) {
  if (s == "general") return PartitionMode::kGeneral;
  if (s == "balanced") return PartitionMode::kBalanced;
  if (s == "nearly_balanced") return PartitionMode::kNearlyBalanced;
  throw InvalidArgument("unknown partition mode '" + s + "'");
}

std::string bound_formula_name(PartitionMode mode, std::size_t arity) {
  switch (mode) {
    case PartitionMode::kGeneral:
      return arity == 4 ? "general-log4" : "general-tree";
    case PartitionMode::kBalanced:
      return "balanced-star";
    case PartitionMode::kNearlyBalanced:
      return "nearly-balanced-star";
  }
  return "unknown";
}

double radius_bound(PartitionMode mode, std::size_t n, std::size_t k, std::size_t min_size, double diam,
                    const GraphStats& stats, std::size_t arity) {
  if (k <= 1 || n <= 1 || diam == 0.0) return 0.0;
  const double nm1 = static_cast<double>(n - 1);
  const double kd = static_cast<double>(k);
  switch (mode) {
    case PartitionMode::kGeneral: {
      if (min_size == 0) throw InvalidArgument("part sizes must be positive");
      const double scale = static_cast<double>(n) / static_cast<double>(min_size);
      if (arity == 4) return scale * std::sqrt(10.0 * static_cast<double>(ceil_log(4, k)) / nm1) * diam;
      const double hd = static_cast<double>(stats.diameter_or_height) * static_cast<double>(stats.max_degree);
      return scale * std::sqrt(2.0 * hd / nm1) * diam;
    }
    case PartitionMode::kBalanced:
      return std::sqrt(kd * (kd - 1.0) / nm1) * diam;
    case PartitionMode::kNearlyBalanced:
      return std::sqrt((kd + 2.0) * (kd - 1.0) / nm1) * diam;
  }
  return 0.0;
}

double traversal_bound_general(std::size_t max_degree, std::size_t n, double diam) {
  if (n <= 1) return 0.0;
  return std::sqrt(static_cast<double>(max_degree) / (2.0 * static_cast<double>(n - 1))) * diam;
}

double traversal_bound_balanced(std::size_t edges, std::size_t k, std::size_t n, double diam) {
  if (n <= 1 || k == 0) return 0.0;
  return std::sqrt(static_cast<double>(edges) / (static_cast<double>(k) * static_cast<double>(n - 1))) * diam;
}

double step_objective(const AugmentedSearchTree& tree, std::size_t i, double alpha, double beta, ConstVec p) {
  return alpha * tree.degree(i) + beta * tree.r_value(i) + dot(p, tree.u_value(i));
}

GreedyRun run_greedy(const PointSet& points, const SizeSpec& sizes, const LiftingGraph& lifting,
                     std::size_t search_arity, SelectionRule rule) {
  const std::size_t n = points.size();
  const std::size_t d = points.dim();
  if (sizes.total() != n) throw InvalidArgument("part sizes must sum to the number of points");
  if (sizes.k() != lifting.size()) throw InvalidArgument("one lifting node per part required");

  // prefix[t] = p_1 + ... + p_t, stored for t = 0..n.
  std::vector<double> prefix((n + 1) * d, 0.0);
  std::vector<double> prefix_sq(n + 1, 0.0);
  for (std::size_t t = 0; t < n; ++t) {
    auto p = points[t];
    for (std::size_t j = 0; j < d; ++j) prefix[(t + 1) * d + j] = prefix[t * d + j] + p[j];
    prefix_sq[t + 1] = prefix_sq[t] + squared_norm(p);
  }

  AugmentedSearchTree tree(lifting, search_arity, sizes.sizes(), d, rule);
  GreedyRun run;
  run.assignment.assign(n, 0);
  for (std::size_t s = n; s >= 1; --s) {
    const std::size_t idx = s - 1;
    const StepInput in{s, points[idx], ConstVec{prefix.data() + idx * d, d}, prefix_sq[idx]};
    const StepCoefficients c =
        rule == SelectionRule::kExactExpectation ? exact_coefficients(in) : surrogate_coefficients(in);
    const std::size_t cls = tree.select(c);
    tree.apply(cls, points[idx]);
    run.assignment[idx] = cls;
  }
  run.fallback_steps = tree.fallback_steps();
  return run;
}

namespace {

struct PartSummary {
  std::vector<std::vector<std::size_t>> parts;
  std::vector<Point> centroids;
  double traversal_norm = 0.0;
};

// Groups indices [0, count) by class; centroids in the coordinates of
// `points`, traversal norm from the centred copy.
PartSummary summarize(const PointSet& points, const PointSet& centered, std::span<const std::size_t> assignment,
                      std::size_t count, const LiftingGraph& lifting) {
  const std::size_t k = lifting.size();
  const std::size_t d = points.dim();
  PartSummary out;
  out.parts.resize(k);
  for (std::size_t a = 0; a < count; ++a) out.parts[assignment[a]].push_back(a);
  out.centroids.reserve(k);
  std::vector<double> lifted(k * d, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    out.centroids.push_back(centroid(points.subset(out.parts[i])));
    for (std::size_t a : out.parts[i]) axpy(1.0 / static_cast<double>(count), centered[a], MutVec{lifted.data() + i * d, d});
  }
  out.traversal_norm = std::sqrt(quadratic_form(lifting, lifted, d));
  return out;
}

void check_common(const PointSet& points, std::size_t k) {
  if (k == 0) throw InvalidArgument("k must be at least 1");
  if (points.empty()) throw InvalidArgument("empty point set");
  if (k > points.size()) throw InvalidArgument("k exceeds the number of points");
}

double max_distance(const std::vector<Point>& pts, ConstVec center) {
  double r = 0.0;
  for (const auto& p : pts) r = std::max(r, distance(p, center));
  return r;
}

}  // namespace

TverbergCertificate partition_general(const PointSet& points, const SizeSpec& sizes, const PartitionOptions& options) {
  const std::size_t k = sizes.k();
  check_common(points, k);
  if (sizes.total() != points.size()) throw InvalidArgument("part sizes must sum to the number of points");

  const Point c = centroid(points, options.summation);
  Point neg(c);
  for (double& x : neg) x = -x;
  const PointSet centered = translate(points, neg);
  const LiftingGraph lifting = LiftingGraph::balanced(k, options.arity);
  const GreedyRun run = run_greedy(centered, sizes, lifting, options.arity, options.rule);
  PartSummary summary = summarize(points, centered, run.assignment, points.size(), lifting);

  TverbergCertificate cert;
  cert.mode = PartitionMode::kGeneral;
  cert.graph = lifting.kind();
  cert.arity = options.arity;
  cert.rule = options.rule;
  cert.n = points.size();
  cert.dim = points.dim();
  cert.sizes = sizes.sizes();
  cert.assignment = run.assignment;
  cert.parts = std::move(summary.parts);
  cert.part_centroids = summary.centroids;
  cert.witnesses = std::move(summary.centroids);
  cert.core_size = cert.n;
  cert.ball.center = c;
  cert.radius_achieved = max_distance(cert.witnesses, c);
  cert.ball.radius = cert.radius_achieved;
  cert.diameter = diameter(points, options.exact_diameter_limit);
  const GraphStats gs = stats(lifting);
  cert.radius_guaranteed =
      radius_bound(PartitionMode::kGeneral, cert.n, k, sizes.min_size(), cert.diameter.value, gs, options.arity);
  cert.traversal_centroid_norm = summary.traversal_norm;
  cert.traversal_bound = traversal_bound_general(gs.max_degree, cert.n, cert.diameter.value);
  cert.bound_formula = bound_formula_name(cert.mode, options.arity);
  cert.fallback_steps = run.fallback_steps;
  return cert;
}

TverbergCertificate partition_balanced(const PointSet& points, std::size_t k, const PartitionOptions& options) {
  check_common(points, k);
  if (points.size() % k != 0) {
    throw InvalidArgument("k does not divide n; use partition_nearly_balanced");
  }
  const SizeSpec sizes = SizeSpec::balanced(points.size(), k);

  const Point c = centroid(points, options.summation);
  Point neg(c);
  for (double& x : neg) x = -x;
  const PointSet centered = translate(points, neg);
  const LiftingGraph lifting = LiftingGraph::star(k);
  const GreedyRun run = run_greedy(centered, sizes, lifting, options.search_arity, options.rule);
  PartSummary summary = summarize(points, centered, run.assignment, points.size(), lifting);

  TverbergCertificate cert;
  cert.mode = PartitionMode::kBalanced;
  cert.graph = lifting.kind();
  cert.arity = options.search_arity;
  cert.rule = options.rule;
  cert.n = points.size();
  cert.dim = points.dim();
  cert.sizes = sizes.sizes();
  cert.assignment = run.assignment;
  cert.parts = std::move(summary.parts);
  cert.part_centroids = summary.centroids;
  cert.witnesses = std::move(summary.centroids);
  cert.core_size = cert.n;
  cert.ball.center = cert.witnesses.front();
  cert.radius_achieved = max_distance(cert.witnesses, cert.ball.center);
  cert.ball.radius = cert.radius_achieved;
  cert.diameter = diameter(points, options.exact_diameter_limit);
  cert.radius_guaranteed = radius_bound(PartitionMode::kBalanced, cert.n, k, sizes.min_size(), cert.diameter.value,
                                        stats(lifting));
  cert.traversal_centroid_norm = summary.traversal_norm;
  cert.traversal_bound = traversal_bound_balanced(lifting.edge_count(), k, cert.n, cert.diameter.value);
  cert.bound_formula = bound_formula_name(cert.mode, cert.arity);
  cert.fallback_steps = run.fallback_steps;
  return cert;
}

TverbergCertificate partition_nearly_balanced(const PointSet& points, std::size_t k, const PartitionOptions& options) {
  check_common(points, k);
  const std::size_t n = points.size();
  if (n % k == 0) return partition_balanced(points, k, options);

  const std::size_t core = k * (n / k);
  std::vector<std::size_t> head(core);
  std::iota(head.begin(), head.end(), std::size_t{0});
  TverbergCertificate cert = partition_balanced(points.subset(head), k, options);

  // Leftover points go round-robin to parts 0, 1, ...
  for (std::size_t a = core; a < n; ++a) {
    const std::size_t cls = a - core;
    cert.assignment.push_back(cls);
    cert.parts[cls].push_back(a);
    cert.sizes[cls] += 1;
  }
  for (std::size_t i = 0; i < k; ++i) cert.part_centroids[i] = centroid(points.subset(cert.parts[i]));

  cert.mode = PartitionMode::kNearlyBalanced;
  cert.n = n;
  cert.core_size = core;
  cert.diameter = diameter(points, options.exact_diameter_limit);
  cert.radius_guaranteed = radius_bound(PartitionMode::kNearlyBalanced, n, k, cert.sizes.back(), cert.diameter.value,
                                        stats(LiftingGraph::star(k)));
  cert.traversal_bound = traversal_bound_balanced(k - 1, k, core, cert.diameter.value);
  cert.bound_formula = bound_formula_name(cert.mode, cert.arity);
  return cert;
}

}  // namespace nodim
