#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nodim/geom.hpp"

namespace nodim {

enum class GraphKind { kStar, kBalancedAry, kPath, kCustom };

std::string to_string(GraphKind kind);
GraphKind graph_kind_from_string(const std::string& s);

struct GraphStats {
  std::size_t edge_count = 0;
  std::size_t max_degree = 0;
  /// Height from the root for trees, graph diameter otherwise.
  std::size_t diameter_or_height = 0;
};

/// Connected simple graph whose nodes stand for the implicit lifting vectors
/// q_0..q_{k-1}: <q_i,q_i> = deg(i), <q_i,q_j> = -1 on edges, 0 otherwise,
/// and sum_i q_i = 0. The vectors themselves are never built.
///
/// Nodes are 0-based. Trees are rooted at node 0 with children numbered in
/// breadth-first order, so in a balanced `arity`-ary tree the children of i
/// are arity*i+1 .. arity*i+arity.
class LiftingGraph {
 public:
  static LiftingGraph star(std::size_t k);
  static LiftingGraph balanced(std::size_t k, std::size_t arity);
  static LiftingGraph path(std::size_t k);
  /// Arbitrary connected simple graph; throws on loops, multi-edges, or
  /// disconnected input.
  static LiftingGraph custom(std::size_t k, const std::vector<std::pair<std::size_t, std::size_t>>& edges);

  std::size_t size() const { return adjacency_.size(); }
  GraphKind kind() const { return kind_; }
  /// Branching factor for balanced trees; k-1 for the star, 1 for the path.
  std::size_t arity() const { return arity_; }
  std::size_t root() const { return 0; }

  std::span<const std::size_t> neighbors(std::size_t i) const { return adjacency_.at(i); }
  std::size_t degree(std::size_t i) const { return adjacency_.at(i).size(); }
  bool adjacent(std::size_t i, std::size_t j) const;
  bool is_tree() const { return edge_count_ + 1 == size(); }
  std::size_t edge_count() const { return edge_count_; }

  /// Edges as (i, j) with i < j, sorted.
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;

 private:
  LiftingGraph(GraphKind kind, std::size_t arity, std::vector<std::vector<std::size_t>> adjacency);

  GraphKind kind_;
  std::size_t arity_;
  std::vector<std::vector<std::size_t>> adjacency_;
  std::size_t edge_count_ = 0;
};

/// <q_i, q_j>.
int q_dot(const LiftingGraph& g, std::size_t i, std::size_t j);

/// <p (x) q_i, p2 (x) q_j> = <p, p2> <q_i, q_j>.
double lifted_dot(const LiftingGraph& g, ConstVec p, std::size_t i, ConstVec p2, std::size_t j);

/// |sum_i u_i (x) q_i|^2, evaluated as sum over edges of |u_i - u_j|^2.
double quadratic_form(const LiftingGraph& g, std::span<const Point> u);
/// Same, with the k vectors stored as rows of a flat k*d array.
double quadratic_form(const LiftingGraph& g, std::span<const double> rows, std::size_t dim);

GraphStats stats(const LiftingGraph& g);

/// Smallest h with base^h >= k (so 0 for k = 1).
std::size_t ceil_log(std::size_t base, std::size_t k);

}  // namespace nodim
