#include <cmath>
#include <random>

#include "doctest.h"
#include "nodim/colorful.hpp"
#include "nodim/errors.hpp"
#include "nodim/generate.hpp"
#include "nodim/oracle.hpp"
#include "support.hpp"

using namespace nodim;

namespace {

ColorInstance random_instance(std::size_t n, std::size_t k, std::size_t d, std::uint64_t seed) {
  std::vector<PointSet> cls;
  for (std::size_t a = 0; a < n; ++a) cls.push_back(testing_support::random_cloud(k, d, seed * 1000 + a));
  return ColorInstance(std::move(cls));
}

// |y|^2 + 2<y, later> with explicit tensors.
double explicit_objective(const PointSet& cls, std::size_t shift, const std::vector<Point>& sums) {
  const std::size_t k = cls.size();
  const auto lift = oracle::explicit_q_vectors(LiftingGraph::star(k));
  Point y, later;
  for (std::size_t m = 0; m < k; ++m) {
    const std::vector<double> q(lift.q[m].begin(), lift.q[m].end());
    const Point a = oracle::explicit_tensor(cls[member_at_node(m, shift, k)], q);
    const Point b = oracle::explicit_tensor(sums[m], q);
    if (y.empty()) {
      y.assign(a.size(), 0.0);
      later.assign(a.size(), 0.0);
    }
    for (std::size_t c = 0; c < a.size(); ++c) {
      y[c] += a[c];
      later[c] += b[c];
    }
  }
  return squared_norm(y) + 2.0 * dot(y, later);
}

}  // namespace

TEST_CASE("colour instances are validated") {
  CHECK_THROWS_WITH_AS(ColorInstance({testing_support::random_cloud(3, 2, 1), testing_support::random_cloud(2, 2, 2)}),
                       doctest::Contains("ragged"), InvalidArgument);
  CHECK_THROWS_AS(ColorInstance({testing_support::random_cloud(3, 2, 1), testing_support::random_cloud(3, 3, 2)}),
                  InvalidArgument);
  CHECK_THROWS_AS(ColorInstance(std::vector<PointSet>{}), InvalidArgument);
}

TEST_CASE("shift arithmetic") {
  for (std::size_t k = 1; k <= 6; ++k)
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t i = 0; i < k; ++i) CHECK(member_at_node(shifted_node(i, j, k), j, k) == i);
  CHECK(shifted_node(3, 2, 4) == 1);
}

TEST_CASE("objective matches explicit tensors") {
  std::mt19937_64 rng(41);
  std::normal_distribution<double> g;
  for (std::size_t k = 1; k <= 4; ++k) {
    for (std::size_t d = 1; d <= 3; ++d) {
      for (int trial = 0; trial < 10; ++trial) {
        const PointSet cls = testing_support::random_cloud(k, d, rng());
        std::vector<Point> sums(k, Point(d));
        std::vector<double> flat;
        for (auto& s : sums)
          for (double& x : s) {
            x = g(rng);
            flat.push_back(x);
          }
        for (std::size_t j = 0; j < k; ++j) {
          const double fast = colorful_objective(cls, j, flat);
          const double slow = explicit_objective(cls, j, sums);
          CHECK(std::abs(fast - slow) <= 1e-9 * std::max(1.0, std::abs(slow)));
        }
      }
    }
  }
}

TEST_CASE("objective on an empty suffix and on identical points") {
  const PointSet cls = PointSet::from_rows({{0.0, 0.0}, {1.0, 0.0}, {0.0, 2.0}});
  const std::vector<double> zeros(6, 0.0);
  // First term: star edges from the centre member to the other two.
  CHECK(colorful_objective(cls, 0, zeros) == doctest::Approx(1.0 + 4.0));
  CHECK(colorful_objective(cls, 1, zeros) == doctest::Approx(4.0 + 5.0));
  const PointSet same = PointSet::from_rows({{1.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}});
  const std::vector<double> sums{1, 2, 3, 4, 5, 6};
  CHECK(colorful_objective(same, 0, sums) == 0.0);
  CHECK(colorful_objective(same, 2, sums) == 0.0);
}

TEST_CASE("k = 1 and n = 1") {
  const ColorInstance one({PointSet::from_rows({{1.0, 2.0}}), PointSet::from_rows({{3.0, 4.0}})});
  const ColorfulCertificate c1 = partition_colorful(one);
  CHECK(c1.colorful_sets.size() == 1);
  CHECK(c1.colorful_sets[0].size() == 2);
  CHECK(c1.radius_guaranteed == 0.0);
  CHECK(c1.ball.center == Point{2.0, 3.0});

  const PointSet cls = testing_support::random_cloud(5, 3, 12);
  const ColorfulCertificate c2 = partition_colorful(ColorInstance({cls}));
  CHECK(c2.colorful_sets.size() == 5);
  CHECK(c2.radius_achieved <= diameter_exact(cls) + 1e-12);
  CHECK(c2.radius_guaranteed == doctest::Approx(std::sqrt(8.0) * diameter_exact(cls)));
}

TEST_CASE("two classes on a line") {
  const ColorInstance inst({PointSet::from_rows({{0.0}, {1.0}}), PointSet::from_rows({{0.0}, {1.0}})});
  const ColorfulCertificate cert = partition_colorful(inst);
  const auto rep = oracle::enumerate_colorful(inst);
  const double got = cert.traversal_centroid_norm * cert.traversal_centroid_norm;
  CHECK(got == doctest::Approx(rep.min_sq_norm));
  CHECK(got <= rep.mean_sq_norm);
}

TEST_CASE("colorful sets partition the instance") {
  const ColorInstance inst = random_instance(7, 4, 3, 5);
  const ColorfulCertificate cert = partition_colorful(inst);
  std::vector<std::vector<int>> used(7, std::vector<int>(4, 0));
  for (const auto& set : cert.colorful_sets) {
    CHECK(set.size() == 7);
    std::vector<int> per_class(7, 0);
    for (auto [a, m] : set) {
      ++per_class[a];
      ++used[a][m];
    }
    CHECK(std::all_of(per_class.begin(), per_class.end(), [](int v) { return v == 1; }));
  }
  for (const auto& row : used) CHECK(std::all_of(row.begin(), row.end(), [](int v) { return v == 1; }));
}

TEST_CASE("greedy dominance against all shift choices") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng() % 6;
    const std::size_t k = 1 + rng() % 3;
    const ColorInstance inst = random_instance(n, k, 1 + rng() % 3, rng());
    const ColorfulCertificate cert = partition_colorful(inst);
    const auto rep = oracle::enumerate_colorful(inst);
    CHECK(rep.count == static_cast<std::uint64_t>(std::pow(k, n)));
    const double got = cert.traversal_centroid_norm * cert.traversal_centroid_norm;
    CHECK(got <= rep.mean_sq_norm * (1 + 1e-9) + 1e-15);
    CHECK(cert.radius_achieved <= cert.radius_guaranteed + 1e-9 * cert.max_class_diameter);
  }
}

TEST_CASE("lifted class diameter and centroid") {
  std::mt19937_64 rng(8);
  for (std::size_t k = 1; k <= 4; ++k) {
    for (std::size_t d = 1; d <= 3; ++d) {
      const PointSet cls = testing_support::random_cloud(k, d, rng());
      const auto lift = oracle::explicit_q_vectors(LiftingGraph::star(k));
      PointSet lifted(std::max<std::size_t>(1, d * lift.edge_dim()));
      std::vector<long double> sum(lifted.dim(), 0.0L);
      for (std::size_t j = 0; j < k; ++j) {
        Point y(lifted.dim(), 0.0);
        for (std::size_t m = 0; m < k && k > 1; ++m) {
          const Point t = oracle::explicit_tensor(cls[member_at_node(m, j, k)],
                                                  std::vector<double>(lift.q[m].begin(), lift.q[m].end()));
          for (std::size_t c = 0; c < t.size(); ++c) y[c] += t[c];
        }
        for (std::size_t c = 0; c < y.size(); ++c) sum[c] += y[c];
        lifted.push_back(y);
      }
      CHECK(diameter_exact(lifted) <= 2.0 * std::sqrt(static_cast<double>(k - 1)) * diameter_exact(cls) + 1e-12);
      for (long double v : sum) CHECK(std::abs(static_cast<double>(v)) < 1e-12);
    }
  }
}

TEST_CASE("radius bound formula") {
  CHECK(colorful_radius_bound(50, 1, 1.0) == 0.0);
  CHECK(colorful_radius_bound(50, 4, 1.0) == doctest::Approx(std::sqrt(24.0 / 200.0)));
  CHECK(colorful_radius_bound(50, 4, 1.0) == doctest::Approx(0.3464).epsilon(1e-4));
  const double a = colorful_radius_bound(20, 5, 1.0);
  const double b = colorful_radius_bound(40, 5, 1.0);
  CHECK(a * a == doctest::Approx(2.0 * b * b));
}

TEST_CASE("assignment is unchanged by a global translation") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const ColorInstance inst = generate_classes(Distribution::kGaussian, 50, 5, 4, seed);
    std::vector<PointSet> moved;
    for (const auto& c : inst.all()) moved.push_back(translate(c, Point{100.0, -3.5, 7.25, 1e4}));
    CHECK(partition_colorful(inst).shifts == partition_colorful(ColorInstance(moved)).shifts);
  }
}
