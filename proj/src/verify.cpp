#include "nodim/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

#include "nodim/errors.hpp"
#include "nodim/oracle.hpp"

namespace nodim {

bool VerifyReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::string VerifyReport::format() const {
  std::string out;
  char buf[128];
  for (const auto& c : checks) {
    std::snprintf(buf, sizeof buf, "  measured=%.10g bound=%.10g", c.measured, c.bound);
    out += (c.pass ? "PASS " : "FAIL ") + c.name + buf;
    if (!c.detail.empty()) out += "  (" + c.detail + ")";
    out += "\n";
  }
  out += ok() ? "verification passed\n" : "verification FAILED\n";
  return out;
}

namespace {

class Recorder {
 public:
  Recorder(VerifyReport& r, std::string prefix) : report_(r), prefix_(std::move(prefix)) {}

  // measured <= bound
  bool at_most(const std::string& name, double measured, double bound, std::string detail = {}) {
    const bool pass = std::isfinite(measured) && measured <= bound;
    report_.checks.push_back({prefix_ + name, pass, measured, bound, std::move(detail)});
    return pass;
  }
  bool that(const std::string& name, bool pass, std::string detail = {}) {
    report_.checks.push_back({prefix_ + name, pass, pass ? 0.0 : 1.0, 0.0, std::move(detail)});
    return pass;
  }
  bool same(const std::string& name, double measured, double expected, double tol) {
    const double dev = std::abs(measured - expected);
    const bool pass = dev <= tol;
    char buf[96];
    std::snprintf(buf, sizeof buf, "expected %.17g, |diff| %.3g", expected, dev);
    report_.checks.push_back({prefix_ + name, pass, measured, expected, buf});
    return pass;
  }

 private:
  VerifyReport& report_;
  std::string prefix_;
};

double max_deviation(const std::vector<Point>& a, const std::vector<Point>& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double dev = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != b[i].size()) return std::numeric_limits<double>::infinity();
    dev = std::max(dev, distance(a[i], b[i]));
  }
  return dev;
}

double tolerance(const PointSet& p, double diam) { return 1e-9 * std::max({diam, coordinate_scale(p), 1e-300}); }

std::size_t count_of(std::size_t n, std::size_t k, std::size_t i) { return n / k + (i < n % k ? 1 : 0); }

// Checks a Tverberg certificate against the point set it claims to partition.
void verify_tverberg(const TverbergCertificate& c, const PartitionOptions& opt, const PointSet& p, Recorder& rec,
                     const VerifyOptions& vopt) {
  const std::size_t n = p.size();
  const std::size_t k = c.sizes.size();
  if (!rec.that("shape", c.n == n && c.dim == p.dim() && k >= 1 && k <= n && c.parts.size() == k &&
                             c.assignment.size() == n,
                "n=" + std::to_string(n) + " k=" + std::to_string(k)))
    return;

  // Partition structure.
  std::vector<std::size_t> count(k, 0);
  bool in_range = true;
  for (std::size_t a : c.assignment) {
    if (a >= k) {
      in_range = false;
      break;
    }
    ++count[a];
  }
  if (!rec.that("assignment range", in_range)) return;
  bool sizes_ok = true;
  for (std::size_t i = 0; i < k; ++i) sizes_ok &= count[i] == c.sizes[i] && c.parts[i].size() == c.sizes[i];
  rec.that("part sizes", sizes_ok);
  std::vector<int> seen(n, 0);
  bool cover = true;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t a : c.parts[i]) {
      if (a >= n || c.assignment[a] != i) {
        cover = false;
        continue;
      }
      ++seen[a];
    }
  }
  cover &= std::all_of(seen.begin(), seen.end(), [](int v) { return v == 1; });
  if (!rec.that("parts disjoint and covering", cover)) return;

  // Mode-specific layout.
  std::size_t core = n;
  switch (c.mode) {
    case PartitionMode::kGeneral:
      rec.that("graph", c.graph == GraphKind::kBalancedAry && c.arity == opt.arity);
      break;
    case PartitionMode::kBalanced: {
      bool eq = n % k == 0 && c.graph == GraphKind::kStar;
      for (std::size_t r : c.sizes) eq &= r == n / k;
      rec.that("balanced layout", eq);
      break;
    }
    case PartitionMode::kNearlyBalanced: {
      core = k * (n / k);
      bool ok = c.core_size == core && n % k != 0 && c.graph == GraphKind::kStar;
      for (std::size_t i = 0; i < k; ++i) ok &= c.sizes[i] == count_of(n, k, i);
      for (std::size_t a = core; a < n; ++a) ok &= c.assignment[a] == a - core;
      rec.that("nearly balanced layout", ok, "core " + std::to_string(core));
      break;
    }
  }
  rec.that("core size", c.core_size == core);

  // Geometry recomputed from the data.
  const DiameterEstimate diam = diameter(p, opt.exact_diameter_limit);
  const double tol = tolerance(p, diam.value);
  rec.same("diameter", c.diameter.value, diam.value, tol);
  rec.that("diameter exactness flag", c.diameter.exact == diam.exact);

  std::vector<Point> centroids, witnesses;
  for (std::size_t i = 0; i < k; ++i) {
    centroids.push_back(centroid(p.subset(c.parts[i])));
    std::vector<std::size_t> head;
    for (std::size_t a : c.parts[i])
      if (a < core) head.push_back(a);
    witnesses.push_back(head.empty() ? Point(p.dim(), std::numeric_limits<double>::quiet_NaN())
                                     : centroid(p.subset(head)));
  }
  rec.at_most("part centroids", max_deviation(c.part_centroids, centroids), tol);
  rec.at_most("witnesses are part centroids", max_deviation(c.witnesses, witnesses), tol);

  const Point expected_center = c.mode == PartitionMode::kGeneral ? centroid(p) : witnesses.front();
  rec.at_most("ball centre", distance(c.ball.center, expected_center), tol,
              c.mode == PartitionMode::kGeneral ? "centroid of P" : "first witness");

  double achieved = 0.0;
  for (const auto& w : witnesses) achieved = std::max(achieved, distance(w, c.ball.center));
  rec.same("radius achieved", c.radius_achieved, achieved, tol);

  std::size_t min_size = *std::min_element(c.sizes.begin(), c.sizes.end());
  const LiftingGraph lifting = c.mode == PartitionMode::kGeneral ? LiftingGraph::balanced(k, opt.arity)
                                                                 : LiftingGraph::star(k);
  const double guaranteed = radius_bound(c.mode, n, k, min_size, diam.value, stats(lifting), opt.arity);
  rec.same("radius bound formula (" + c.bound_formula + ")", c.radius_guaranteed, guaranteed,
           1e-9 * std::max(guaranteed, 1e-300));
  rec.that("bound formula name", c.bound_formula == bound_formula_name(c.mode, c.arity));
  rec.at_most("radius achieved <= guaranteed", achieved, c.radius_guaranteed + tol);
  rec.at_most("ball radius covers witnesses", achieved, c.ball.radius + tol);

  // Traversal centroid of the lifted assignment (core points only in
  // nearly balanced mode), from centred coordinates.
  {
    std::vector<std::size_t> head(core);
    std::iota(head.begin(), head.end(), std::size_t{0});
    const PointSet sub = core == n ? p : p.subset(head);
    const Point mu = centroid(sub, opt.summation);
    const std::size_t d = p.dim();
    std::vector<double> u(k * d, 0.0);
    for (std::size_t a = 0; a < core; ++a) {
      for (std::size_t t = 0; t < d; ++t) u[c.assignment[a] * d + t] += (sub[a][t] - mu[t]) / static_cast<double>(core);
    }
    const double norm_t = std::sqrt(quadratic_form(lifting, u, d));
    const double bound = c.mode == PartitionMode::kGeneral
                             ? traversal_bound_general(stats(lifting).max_degree, n, diam.value)
                             : traversal_bound_balanced(lifting.edge_count(), k, core, diam.value);
    rec.same("traversal centroid norm", c.traversal_centroid_norm, norm_t, tol);
    rec.at_most(c.mode == PartitionMode::kGeneral ? "traversal norm < delta" : "traversal norm < gamma", norm_t,
                bound + tol);
  }

  if (n <= vopt.hull_limit) {
    double worst = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      const PointSet part = p.subset(c.parts[i]);
      try {
        worst = std::max(worst, oracle::dist_to_hull(c.ball.center, part));
      } catch (const NotConverged& e) {
        worst = std::max(worst, e.upper());
      }
    }
    rec.at_most("ball meets every part hull", worst, c.radius_guaranteed + tol + 1e-7 * diam.value);
  }
}

void verify_colorful(const ColorfulCertificate& c, const ColorInstance& inst, Recorder& rec,
                     const VerifyOptions& vopt) {
  const std::size_t n = inst.classes();
  const std::size_t k = inst.k();
  if (!rec.that("shape", c.classes == n && c.k == k && c.dim == inst.dim() && c.shifts.size() == n &&
                             c.colorful_sets.size() == k && c.centroids.size() == k))
    return;
  bool shifts_ok = std::all_of(c.shifts.begin(), c.shifts.end(), [&](std::size_t s) { return s < k; });
  if (!rec.that("shift range", shifts_ok)) return;

  bool colorful = true;
  bool matches_shifts = true;
  std::vector<std::vector<int>> used(n, std::vector<int>(k, 0));
  for (std::size_t m = 0; m < k; ++m) {
    std::vector<int> per_class(n, 0);
    if (c.colorful_sets[m].size() != n) colorful = false;
    for (auto [a, member] : c.colorful_sets[m]) {
      if (a >= n || member >= k) {
        colorful = false;
        continue;
      }
      ++per_class[a];
      ++used[a][member];
      matches_shifts &= member == member_at_node(m, c.shifts[a], k);
    }
    colorful &= std::all_of(per_class.begin(), per_class.end(), [](int v) { return v == 1; });
  }
  for (const auto& row : used) colorful &= std::all_of(row.begin(), row.end(), [](int v) { return v == 1; });
  if (!rec.that("colorful sets partition the points", colorful)) return;
  rec.that("sets follow the cyclic shifts", matches_shifts);

  double max_diam = 0.0;
  double scale = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    max_diam = std::max(max_diam, diameter_exact(inst[a]));
    scale = std::max(scale, coordinate_scale(inst[a]));
  }
  const double tol = 1e-9 * std::max({max_diam, scale, 1e-300});
  rec.same("max class diameter", c.max_class_diameter, max_diam, tol);

  std::vector<Point> centroids(k, Point(inst.dim(), 0.0));
  for (std::size_t m = 0; m < k; ++m) {
    for (auto [a, member] : c.colorful_sets[m]) axpy(1.0 / static_cast<double>(n), inst[a][member], centroids[m]);
  }
  rec.at_most("set centroids", max_deviation(c.centroids, centroids), tol);
  rec.at_most("ball centre", distance(c.ball.center, centroids.front()), tol, "first centroid");
  double achieved = 0.0;
  for (const auto& w : centroids) achieved = std::max(achieved, distance(w, c.ball.center));
  rec.same("radius achieved", c.radius_achieved, achieved, tol);
  const double guaranteed = colorful_radius_bound(n, k, max_diam);
  rec.same("radius bound formula", c.radius_guaranteed, guaranteed, 1e-9 * std::max(guaranteed, 1e-300));
  rec.at_most("radius achieved <= guaranteed", achieved, c.radius_guaranteed + tol);
  rec.at_most("ball radius covers centroids", achieved, c.ball.radius + tol);
  const double tnorm = std::sqrt(quadratic_form(LiftingGraph::star(k), centroids));
  rec.same("traversal centroid norm", c.traversal_centroid_norm, tnorm, tol);
  rec.at_most("traversal norm < delta", tnorm, guaranteed + tol);

  if (inst.total() <= vopt.hull_limit) {
    double worst = 0.0;
    for (std::size_t m = 0; m < k; ++m) {
      PointSet set(inst.dim());
      for (auto [a, member] : c.colorful_sets[m]) set.push_back(inst[a][member]);
      try {
        worst = std::max(worst, oracle::dist_to_hull(c.ball.center, set));
      } catch (const NotConverged& e) {
        worst = std::max(worst, e.upper());
      }
    }
    rec.at_most("ball meets every colorful hull", worst, c.radius_guaranteed + tol + 1e-7 * max_diam);
  }
}

void verify_depth(const DepthCertificate& c, const CertificateParameters& params, const std::vector<PointSet>& sets,
                  VerifyReport& report, const VerifyOptions& vopt) {
  Recorder rec(report, "");
  const std::size_t k = sets.size();
  const std::size_t d = sets.front().dim();
  bool shape = c.k == k && c.dim == d && k <= d && c.per_set.size() == k && params.m.size() == k &&
               c.depth_lower_bounds.size() == k && c.chain.axes.size() + 1 == k && c.chain.lines.size() + 1 == k &&
               c.chain.complement_basis.size() == d - k + 1;
  for (const auto& s : sets) shape &= s.dim() == d && !s.empty();
  if (!rec.that("shape", shape, "k=" + std::to_string(k) + " d=" + std::to_string(d))) return;

  double scale = 0.0;
  double max_diam = 0.0;
  for (const auto& s : sets) {
    scale = std::max(scale, coordinate_scale(s));
    max_diam = std::max(max_diam, diameter_exact(s));
  }
  const double tol = 1e-9 * std::max({max_diam, scale, 1e-300});

  const Point origin = centroid(sets.front(), params.summation);
  rec.at_most("ball centre is c(P_1)", distance(c.ball.center, origin), tol);
  rec.at_most("chain origin", distance(c.chain.origin, origin), tol);

  // Axes from scratch.
  {
    Point neg(origin);
    for (double& x : neg) x = -x;
    std::vector<PointSet> moved;
    for (const auto& s : sets) moved.push_back(translate(s, neg));
    const AlignedSets fresh = align_centroids(moved, origin);
    rec.at_most("axes recomputed", max_deviation(c.chain.axes, fresh.chain.axes), tol);
    bool flags = fresh.chain.fallback == c.chain.fallback;
    rec.that("fallback flags", flags);
  }
  double ortho = 0.0;
  for (std::size_t a = 0; a < c.chain.lines.size(); ++a) {
    ortho = std::max(ortho, std::abs(norm(c.chain.lines[a]) - 1.0));
    ortho = std::max(ortho, distance(c.chain.lines[a], [&] {
                       Point u = c.chain.axes[a];
                       const double nv = norm(u);
                       for (double& x : u) x /= nv;
                       return u;
                     }()));
    for (std::size_t b = 0; b < a; ++b) ortho = std::max(ortho, std::abs(dot(c.chain.lines[a], c.chain.lines[b])));
    for (const auto& w : c.chain.complement_basis) ortho = std::max(ortho, std::abs(dot(c.chain.lines[a], w)));
  }
  for (std::size_t a = 0; a < c.chain.complement_basis.size(); ++a) {
    ortho = std::max(ortho, std::abs(norm(c.chain.complement_basis[a]) - 1.0));
    for (std::size_t b = 0; b < a; ++b)
      ortho = std::max(ortho, std::abs(dot(c.chain.complement_basis[a], c.chain.complement_basis[b])));
  }
  rec.at_most("axes and basis orthonormal", ortho, 1e-9);
  rec.at_most("ball centre intrinsic", max_deviation({c.ball_center_intrinsic}, {c.chain.intrinsic(origin)}), tol);

  double achieved = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const std::string prefix = "set " + std::to_string(i) + ": ";
    Recorder srec(report, prefix);
    const SetDepth& sd = c.per_set[i];
    const std::size_t size = sets[i].size();
    const std::size_t m = params.m[i];
    srec.that("m in range", m >= 2 && m <= size && sd.m == m, "m=" + std::to_string(m));
    const std::size_t parts = m ? (size + m - 1) / m : 0;
    srec.that("part count and depth bound", sd.parts == parts && c.depth_lower_bounds[i] == parts &&
                                                sd.partition.sizes.size() == parts,
              "ceil(" + std::to_string(size) + "/" + std::to_string(m) + ") = " + std::to_string(parts));

    PointSet projected(d);
    for (std::size_t a = 0; a < size; ++a) projected.push_back(c.chain.project(sets[i][a]));
    srec.at_most("projected centroid at origin", norm(centroid(projected)), tol);
    srec.same("diameter", c.set_diameters[i], diameter(sets[i], params.exact_diameter_limit).value, tol);

    verify_tverberg(sd.partition, partition_options(params), projected, srec, vopt);
    if (sd.partition.mode != (parts != 0 && size % parts == 0 ? PartitionMode::kBalanced
                                                               : PartitionMode::kNearlyBalanced)) {
      srec.that("partition mode", false);
    }

    double wr = 0.0;
    for (const auto& w : sd.partition.witnesses) wr = std::max(wr, norm(w));
    achieved = std::max(achieved, wr);
    srec.same("witness radius", sd.witness_radius, wr, tol);
    const double contribution = norm(sd.partition.ball.center) + sd.partition.radius_guaranteed;
    srec.same("radius contribution", sd.radius_contribution, contribution, tol);
    srec.at_most("witnesses inside the ball", wr, c.ball.radius + tol);
    srec.at_most("contribution inside the ball", contribution, c.ball.radius + tol);

    // Depth of the product set equals the depth of the ball among the
    // W coordinates, so compute it there.
    const std::size_t wdim = c.chain.complement_basis.size();
    if (size <= vopt.depth_limit && wdim <= 2) {
      std::size_t depth = 0;
      if (wdim == 1) {
        std::vector<double> line;
        for (std::size_t a = 0; a < size; ++a) line.push_back(c.chain.intrinsic(sets[i][a])[0]);
        depth = oracle::depth_1d_ball(c.ball_center_intrinsic[0], c.ball.radius, line);
      } else {
        PointSet plane(2);
        for (std::size_t a = 0; a < size; ++a) plane.push_back(c.chain.intrinsic(sets[i][a]));
        depth = oracle::depth_2d_ball(Ball{c.ball_center_intrinsic, c.ball.radius}, plane);
      }
      srec.at_most("depth bound <= product depth", static_cast<double>(parts), static_cast<double>(depth),
                   "exact depth " + std::to_string(depth));
      if (d == 2) {
        const std::size_t direct = k == 1 ? oracle::depth_2d_ball(c.ball, sets[i])
                                          : oracle::depth_2d_strip(c.ball.center, c.chain.lines[0], c.ball.radius,
                                                                   sets[i]);
        srec.at_most("depth bound <= planar depth", static_cast<double>(parts), static_cast<double>(direct),
                     "exact depth " + std::to_string(direct));
      }
    }
  }
  rec.same("radius achieved", c.radius_achieved, achieved, tol);
  double exist = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    if (params.m[i] > 0) exist = std::max(exist, (2.0 + 2.0 * std::sqrt(2.0)) * c.set_diameters[i] /
                                                     std::sqrt(static_cast<double>(params.m[i])));
  }
  rec.same("existential radius", c.existential_radius, exist, tol);
}

}  // namespace

VerifyReport verify_certificate(const CertificateDocument& doc, const std::vector<PointSet>& inputs,
                                const VerifyOptions& options) {
  VerifyReport report;
  Recorder rec(report, "");
  if (doc.tverberg) {
    if (!rec.that("one input", inputs.size() == 1)) return report;
    rec.that("mode field", doc.mode == to_string(doc.tverberg->mode));
    if (doc.tverberg->mode == PartitionMode::kGeneral && !doc.parameters.sizes.empty())
      rec.that("sizes match parameters", doc.parameters.sizes == doc.tverberg->sizes);
    rec.that("k matches parameters", doc.parameters.k == doc.tverberg->sizes.size());
    verify_tverberg(*doc.tverberg, partition_options(doc.parameters), inputs.front(), rec, options);
  } else if (doc.depth) {
    if (!rec.that("input count", !inputs.empty() && inputs.size() == doc.depth->k)) return report;
    verify_depth(*doc.depth, doc.parameters, inputs, report, options);
  } else {
    rec.that("payload", false, "certificate needs colour classes");
  }
  return report;
}

VerifyReport verify_certificate(const CertificateDocument& doc, const ColorInstance& instance,
                                const VerifyOptions& options) {
  VerifyReport report;
  Recorder rec(report, "");
  if (!doc.colorful) {
    rec.that("payload", false, "not a colorful certificate");
    return report;
  }
  verify_colorful(*doc.colorful, instance, rec, options);
  return report;
}

}  // namespace nodim
