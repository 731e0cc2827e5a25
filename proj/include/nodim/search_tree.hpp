#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "nodim/geom.hpp"
#include "nodim/lifting.hpp"

namespace nodim {

/// How a class is picked for the current point.
enum class SelectionRule {
  /// Objective and average are the exact conditional expectation of the
  /// squared traversal-centroid norm under a uniformly random completion
  /// (class j drawn with probability r'_j / s). Never increases the
  /// expectation, so the final norm is at most the exhaustive mean.
  kExactExpectation,
  /// alpha*N_i + beta*R_i + <p, U_i> against the unweighted class average,
  /// with a linear scan over feasible classes when the descent fails.
  kSurrogate,
};

std::string to_string(SelectionRule rule);
/// Accepts the to_string names and the short form "exact".
SelectionRule selection_rule_from_string(const std::string& s);

/// Per-step objective in the form  n_coef * N_i + r_coef * R_i + <u_dir, U_i>.
struct StepCoefficients {
  double n_coef = 0.0;
  double r_coef = 0.0;
  Point u_dir;
};

/// Data available when point p_s is processed: s is the 1-based index of the
/// point, `prefix_sum` = p_1 + ... + p_{s-1}, `prefix_sq` = |p_1|^2 + ... + |p_{s-1}|^2.
struct StepInput {
  std::size_t s = 0;
  ConstVec point;
  ConstVec prefix_sum;
  double prefix_sq = 0.0;
};

/// alpha_s = |p_s|^2, beta_s = <p_s, c_{s-1}>, direction p_s.
StepCoefficients surrogate_coefficients(const StepInput& in);
/// Exact conditional-expectation coefficients (up to a class-independent
/// constant).
StepCoefficients exact_coefficients(const StepInput& in);

/// The k classes laid out on a balanced search tree, each node carrying
///   N  = |q_i|^2,  r' (remaining quota),  R = 2(r'_i N_i - sum_{j~i} r'_j),
///   u  = sum of points assigned so far,   U = 2(N_i u_i - sum_{j~i} u_j)
/// plus subtree aggregates of w*N, w*R, w*U and w, where the weight w is r'
/// (exact rule) or 1 (surrogate rule). Neighbourhoods j~i come from the
/// lifting graph; the search tree only organizes the descent.
class AugmentedSearchTree {
 public:
  AugmentedSearchTree(const LiftingGraph& lifting, std::size_t search_arity, std::span<const std::size_t> quotas,
                      std::size_t dim, SelectionRule rule);

  std::size_t size() const { return n_.size(); }
  std::size_t dim() const { return dim_; }
  SelectionRule rule() const { return rule_; }

  int degree(std::size_t i) const { return n_[i]; }
  std::size_t remaining(std::size_t i) const { return remaining_[i]; }
  double r_value(std::size_t i) const { return r_[i]; }
  ConstVec u_value(std::size_t i) const { return {u_.data() + i * dim_, dim_}; }
  ConstVec part_sum(std::size_t i) const { return {part_sum_.data() + i * dim_, dim_}; }

  std::size_t parent(std::size_t i) const { return (i - 1) / arity_; }
  std::size_t first_child(std::size_t i) const { return arity_ * i + 1; }

  double weight(std::size_t i) const;
  double subtree_weight(std::size_t i) const { return agg_w_[i]; }
  /// Weighted subtree means of N, R and U (the N^st, R^st, U^st fields).
  double subtree_mean_n(std::size_t i) const { return agg_n_[i] / agg_w_[i]; }
  double subtree_mean_r(std::size_t i) const { return agg_r_[i] / agg_w_[i]; }
  Point subtree_mean_u(std::size_t i) const;

  double objective(std::size_t i, const StepCoefficients& c) const;
  double subtree_average(std::size_t i, const StepCoefficients& c) const;

  /// Picks the class for the current step. Throws when all quotas are spent.
  std::size_t select(const StepCoefficients& c);
  /// Assigns point p to class i and updates every affected field.
  void apply(std::size_t i, ConstVec p);

  /// Number of `select` calls that fell back to the linear scan.
  std::size_t fallback_steps() const { return fallback_steps_; }

  /// Largest deviation between maintained fields and their definitions
  /// (recomputed from r' and u), relative to the field magnitudes.
  double consistency_error() const;

 private:
  void propagate(std::size_t node, double dw, double dn, double dr, ConstVec du, long df);
  std::size_t linear_scan(const StepCoefficients& c);

  const LiftingGraph& lifting_;
  std::size_t arity_;
  std::size_t dim_;
  SelectionRule rule_;

  std::vector<int> n_;
  std::vector<std::size_t> remaining_;
  std::vector<double> r_;
  std::vector<double> part_sum_;
  std::vector<double> u_;

  std::vector<double> agg_w_;
  std::vector<double> agg_n_;
  std::vector<double> agg_r_;
  std::vector<double> agg_u_;
  std::vector<long> agg_feasible_;

  std::vector<double> scratch_;
  std::size_t fallback_steps_ = 0;
};

}  // namespace nodim
