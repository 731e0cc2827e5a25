#include "nodim/lifting.hpp"

#include <algorithm>
#include <deque>

#include "nodim/errors.hpp"

namespace nodim {

std::string to_string(GraphKind kind) {
  switch (kind) {
    case GraphKind::kStar:
      return "star";
    case GraphKind::kBalancedAry:
      return "balanced";
    case GraphKind::kPath:
      return "path";
    case GraphKind::kCustom:
      return "custom";
  }
  return "unknown";
}

GraphKind graph_kind_from_string(const std::string& s) {
  if (s == "star") return GraphKind::kStar;
  if (s == "balanced") return GraphKind::kBalancedAry;
  if (s == "path") return GraphKind::kPath;
  if (s == "custom") return GraphKind::kCustom;
  throw InvalidArgument("unknown graph kind '" + s + "'");
}

namespace {

void require_k(std::size_t k) {
  if (k == 0) throw InvalidArgument("lifting graph needs at least one node");
}

std::vector<std::size_t> bfs_depths(const std::vector<std::vector<std::size_t>>& adj, std::size_t src) {
  std::vector<std::size_t> depth(adj.size(), static_cast<std::size_t>(-1));
  std::deque<std::size_t> queue{src};
  depth[src] = 0;
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t w : adj[v]) {
      if (depth[w] == static_cast<std::size_t>(-1)) {
        depth[w] = depth[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return depth;
}

}  // namespace

LiftingGraph::LiftingGraph(GraphKind kind, std::size_t arity, std::vector<std::vector<std::size_t>> adjacency)
    : kind_(kind), arity_(arity), adjacency_(std::move(adjacency)) {
  std::size_t total = 0;
  for (auto& nb : adjacency_) {
    std::sort(nb.begin(), nb.end());
    total += nb.size();
  }
  edge_count_ = total / 2;
}

LiftingGraph LiftingGraph::star(std::size_t k) {
  require_k(k);
  std::vector<std::vector<std::size_t>> adj(k);
  for (std::size_t i = 1; i < k; ++i) {
    adj[0].push_back(i);
    adj[i].push_back(0);
  }
  return {GraphKind::kStar, k > 1 ? k - 1 : 1, std::move(adj)};
}

LiftingGraph LiftingGraph::balanced(std::size_t k, std::size_t arity) {
  require_k(k);
  if (arity < 2) throw InvalidArgument("balanced tree arity must be at least 2");
  std::vector<std::vector<std::size_t>> adj(k);
  for (std::size_t i = 1; i < k; ++i) {
    const std::size_t parent = (i - 1) / arity;
    adj[parent].push_back(i);
    adj[i].push_back(parent);
  }
  return {GraphKind::kBalancedAry, arity, std::move(adj)};
}

LiftingGraph LiftingGraph::path(std::size_t k) {
  require_k(k);
  std::vector<std::vector<std::size_t>> adj(k);
  for (std::size_t i = 1; i < k; ++i) {
    adj[i - 1].push_back(i);
    adj[i].push_back(i - 1);
  }
  return {GraphKind::kPath, 1, std::move(adj)};
}

LiftingGraph LiftingGraph::custom(std::size_t k, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  require_k(k);
  std::vector<std::vector<std::size_t>> adj(k);
  for (auto [a, b] : edges) {
    if (a >= k || b >= k) throw InvalidArgument("edge endpoint out of range");
    if (a == b) throw InvalidArgument("self loop in lifting graph");
    if (std::find(adj[a].begin(), adj[a].end(), b) != adj[a].end()) {
      throw InvalidArgument("multi-edge in lifting graph");
    }
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  const auto depth = bfs_depths(adj, 0);
  if (std::any_of(depth.begin(), depth.end(), [](std::size_t x) { return x == static_cast<std::size_t>(-1); })) {
    throw InvalidArgument("lifting graph is not connected");
  }
  return {GraphKind::kCustom, 0, std::move(adj)};
}

bool LiftingGraph::adjacent(std::size_t i, std::size_t j) const {
  const auto& nb = adjacency_.at(i);
  return std::binary_search(nb.begin(), nb.end(), j);
}

std::vector<std::pair<std::size_t, std::size_t>> LiftingGraph::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  out.reserve(edge_count_);
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j : adjacency_[i]) {
      if (i < j) out.emplace_back(i, j);
    }
  }
  return out;
}

int q_dot(const LiftingGraph& g, std::size_t i, std::size_t j) {
  if (i >= g.size() || j >= g.size()) throw InvalidArgument("lifting node index out of range");
  if (i == j) return static_cast<int>(g.degree(i));
  return g.adjacent(i, j) ? -1 : 0;
}

double lifted_dot(const LiftingGraph& g, ConstVec p, std::size_t i, ConstVec p2, std::size_t j) {
  if (p.size() != p2.size()) throw InvalidArgument("dimension mismatch in lifted_dot");
  const int q = q_dot(g, i, j);
  return q == 0 ? 0.0 : q * dot(p, p2);
}

double quadratic_form(const LiftingGraph& g, std::span<const double> rows, std::size_t dim) {
  if (rows.size() != g.size() * dim) throw InvalidArgument("quadratic_form needs exactly one vector per node");
  double total = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j : g.neighbors(i)) {
      if (j < i) continue;
      total += squared_distance(rows.subspan(i * dim, dim), rows.subspan(j * dim, dim));
    }
  }
  return total;
}

double quadratic_form(const LiftingGraph& g, std::span<const Point> u) {
  if (u.size() != g.size()) throw InvalidArgument("quadratic_form needs exactly one vector per node");
  if (u.empty()) return 0.0;
  const std::size_t d = u.front().size();
  std::vector<double> rows;
  rows.reserve(u.size() * d);
  for (const auto& x : u) {
    if (x.size() != d) throw InvalidArgument("dimension mismatch in quadratic_form");
    rows.insert(rows.end(), x.begin(), x.end());
  }
  return quadratic_form(g, rows, d);
}

GraphStats stats(const LiftingGraph& g) {
  GraphStats s;
  s.edge_count = g.edge_count();
  for (std::size_t i = 0; i < g.size(); ++i) s.max_degree = std::max(s.max_degree, g.degree(i));
  std::vector<std::vector<std::size_t>> adj(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) adj[i].assign(g.neighbors(i).begin(), g.neighbors(i).end());
  if (g.is_tree()) {
    const auto depth = bfs_depths(adj, g.root());
    s.diameter_or_height = *std::max_element(depth.begin(), depth.end());
  } else {
    for (std::size_t v = 0; v < g.size(); ++v) {
      const auto depth = bfs_depths(adj, v);
      s.diameter_or_height = std::max(s.diameter_or_height, *std::max_element(depth.begin(), depth.end()));
    }
  }
  return s;
}

std::size_t ceil_log(std::size_t base, std::size_t k) {
  std::size_t h = 0;
  std::size_t reach = 1;
  while (reach < k) {
    reach *= base;
    ++h;
  }
  return h;
}

}  // namespace nodim
