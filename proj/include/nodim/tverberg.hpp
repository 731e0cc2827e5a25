#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "nodim/geom.hpp"
#include "nodim/lifting.hpp"
#include "nodim/search_tree.hpp"

namespace nodim {

/// Prescribed part sizes r_1..r_k, each at least one.
class SizeSpec {
 public:
  explicit SizeSpec(std::vector<std::size_t> sizes);
  static SizeSpec balanced(std::size_t n, std::size_t k);

  const std::vector<std::size_t>& sizes() const { return sizes_; }
  std::size_t k() const { return sizes_.size(); }
  std::size_t total() const { return total_; }
  std::size_t min_size() const;
  bool is_balanced() const;

 private:
  std::vector<std::size_t> sizes_;
  std::size_t total_ = 0;
};

enum class PartitionMode { kGeneral, kBalanced, kNearlyBalanced };

std::string to_string(PartitionMode mode);
PartitionMode partition_mode_from_string(const std::string& s);

struct PartitionOptions {
  /// Lifting tree arity for general sizes.
  std::size_t arity = 4;
  /// Arity of the auxiliary search tree laid over the star in balanced mode.
  std::size_t search_arity = 3;
  SelectionRule rule = SelectionRule::kExactExpectation;
  std::size_t exact_diameter_limit = kExactDiameterLimit;
  Summation summation = Summation::kNaive;
};

struct TverbergCertificate {
  PartitionMode mode = PartitionMode::kGeneral;
  GraphKind graph = GraphKind::kBalancedAry;
  std::size_t arity = 4;
  SelectionRule rule = SelectionRule::kExactExpectation;
  std::size_t n = 0;
  std::size_t dim = 0;
  std::vector<std::size_t> sizes;
  /// Class of every input point.
  std::vector<std::size_t> assignment;
  /// Sorted point indices per class.
  std::vector<std::vector<std::size_t>> parts;
  std::vector<Point> part_centroids;
  /// One point of conv(T_i) per class, all inside `ball`. These are the part
  /// centroids, except in nearly balanced mode where they are the centroids
  /// of the parts restricted to the first `core_size` points.
  std::vector<Point> witnesses;
  std::size_t core_size = 0;
  Ball ball;
  double radius_guaranteed = 0.0;
  double radius_achieved = 0.0;
  /// |c(T)| of the lifted traversal, and the bound it must stay under
  /// (delta for general sizes, gamma for balanced ones).
  double traversal_centroid_norm = 0.0;
  double traversal_bound = 0.0;
  DiameterEstimate diameter;
  std::string bound_formula;
  std::size_t fallback_steps = 0;

  friend bool operator==(const TverbergCertificate&, const TverbergCertificate&) = default;
};

/// Runs the conditional-expectation traversal on `points` (which should be
/// centred) and returns the class of every point. Points are consumed from
/// the last one to the first.
struct GreedyRun {
  std::vector<std::size_t> assignment;
  std::size_t fallback_steps = 0;
};
GreedyRun run_greedy(const PointSet& points, const SizeSpec& sizes, const LiftingGraph& lifting,
                     std::size_t search_arity, SelectionRule rule);

/// Eq-(7)-style value alpha*N_i + beta*R_i + <p, U_i> for class i.
double step_objective(const AugmentedSearchTree& tree, std::size_t i, double alpha, double beta, ConstVec p);

TverbergCertificate partition_general(const PointSet& points, const SizeSpec& sizes,
                                      const PartitionOptions& options = {});
TverbergCertificate partition_balanced(const PointSet& points, std::size_t k, const PartitionOptions& options = {});
TverbergCertificate partition_nearly_balanced(const PointSet& points, std::size_t k,
                                              const PartitionOptions& options = {});

/// Closed-form ball radius for the mode. `stats` describes the lifting graph
/// and is only read in general mode with an arity other than 4.
double radius_bound(PartitionMode mode, std::size_t n, std::size_t k, std::size_t min_size, double diam,
                    const GraphStats& stats, std::size_t arity = 4);
/// delta = sqrt(max_degree / (2(n-1))) diam
double traversal_bound_general(std::size_t max_degree, std::size_t n, double diam);
/// gamma = sqrt(edges / (k(n-1))) diam
double traversal_bound_balanced(std::size_t edges, std::size_t k, std::size_t n, double diam);

std::string bound_formula_name(PartitionMode mode, std::size_t arity);

}  // namespace nodim
