#include "nodim/search_tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nodim/errors.hpp"

namespace nodim {

std::string to_string(SelectionRule rule) {
  return rule == SelectionRule::kExactExpectation ? "exact-expectation" : "surrogate";
}

SelectionRule selection_rule_from_string(const std::string& s) {
  if (s == "exact-expectation" || s == "exact") return SelectionRule::kExactExpectation;
  if (s == "surrogate") return SelectionRule::kSurrogate;
  throw InvalidArgument("unknown selection rule '" + s + "'");
}

StepCoefficients surrogate_coefficients(const StepInput& in) {
  StepCoefficients c;
  c.n_coef = squared_norm(in.point);
  c.r_coef = in.s > 1 ? dot(in.point, in.prefix_sum) / static_cast<double>(in.s - 1) : 0.0;
  c.u_dir.assign(in.point.begin(), in.point.end());
  return c;
}

// With s points left (p_s current) and remaining quotas r', choosing class i
// changes E|sum|^2 by
//   N_i (alpha - 2 beta - A/(s-1) + 2 kappa) + R_i (beta - kappa) + <p_s - c_{s-1}, U_i>
// plus terms that do not depend on i. Here A = sum_{t<s} |p_t|^2,
// kappa = 2 B / ((s-1)(s-2)) with B = sum_{a<b<s} <p_a, p_b>, and c_{s-1} the
// centroid of p_1..p_{s-1}. The extra terms relative to the surrogate come
// from the quota decrement r'_i -> r'_i - 1 seen by the unassigned points.
StepCoefficients exact_coefficients(const StepInput& in) {
  StepCoefficients c;
  const double alpha = squared_norm(in.point);
  const std::size_t rest = in.s > 0 ? in.s - 1 : 0;
  double beta = 0.0;
  double mean_sq = 0.0;
  double kappa = 0.0;
  c.u_dir.assign(in.point.begin(), in.point.end());
  if (rest > 0) {
    const double inv = 1.0 / static_cast<double>(rest);
    beta = dot(in.point, in.prefix_sum) * inv;
    mean_sq = in.prefix_sq * inv;
    axpy(-inv, in.prefix_sum, c.u_dir);
  }
  if (rest > 1) {
    const double cross = 0.5 * (squared_norm(in.prefix_sum) - in.prefix_sq);
    kappa = 2.0 * cross / (static_cast<double>(rest) * static_cast<double>(rest - 1));
  }
  c.n_coef = alpha - 2.0 * beta - mean_sq + 2.0 * kappa;
  c.r_coef = beta - kappa;
  return c;
}

AugmentedSearchTree::AugmentedSearchTree(const LiftingGraph& lifting, std::size_t search_arity,
                                         std::span<const std::size_t> quotas, std::size_t dim, SelectionRule rule)
    : lifting_(lifting), arity_(search_arity), dim_(dim), rule_(rule) {
  const std::size_t k = lifting.size();
  if (quotas.size() != k) throw InvalidArgument("one quota per lifting node required");
  if (search_arity < 2) throw InvalidArgument("search tree arity must be at least 2");
  if (dim == 0) throw InvalidArgument("dimension must be positive");

  n_.resize(k);
  remaining_.assign(quotas.begin(), quotas.end());
  r_.resize(k);
  part_sum_.assign(k * dim, 0.0);
  u_.assign(k * dim, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    n_[i] = static_cast<int>(lifting.degree(i));
    double nb = 0.0;
    for (std::size_t j : lifting.neighbors(i)) nb += static_cast<double>(remaining_[j]);
    r_[i] = 2.0 * (static_cast<double>(remaining_[i]) * n_[i] - nb);
  }

  agg_w_.assign(k, 0.0);
  agg_n_.assign(k, 0.0);
  agg_r_.assign(k, 0.0);
  agg_u_.assign(k * dim, 0.0);
  agg_feasible_.assign(k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    const double w = weight(i);
    agg_w_[i] = w;
    agg_n_[i] = w * n_[i];
    agg_r_[i] = w * r_[i];
    agg_feasible_[i] = remaining_[i] > 0 ? 1 : 0;
  }
  // Children have larger indices than their parent.
  for (std::size_t i = k; i-- > 1;) {
    const std::size_t p = parent(i);
    agg_w_[p] += agg_w_[i];
    agg_n_[p] += agg_n_[i];
    agg_r_[p] += agg_r_[i];
    agg_feasible_[p] += agg_feasible_[i];
  }
  scratch_.resize(dim);
}

double AugmentedSearchTree::weight(std::size_t i) const {
  return rule_ == SelectionRule::kExactExpectation ? static_cast<double>(remaining_[i]) : 1.0;
}

Point AugmentedSearchTree::subtree_mean_u(std::size_t i) const {
  Point out(agg_u_.begin() + static_cast<std::ptrdiff_t>(i * dim_),
            agg_u_.begin() + static_cast<std::ptrdiff_t>((i + 1) * dim_));
  for (double& x : out) x /= agg_w_[i];
  return out;
}

double AugmentedSearchTree::objective(std::size_t i, const StepCoefficients& c) const {
  return c.n_coef * n_[i] + c.r_coef * r_[i] + dot(c.u_dir, u_value(i));
}

double AugmentedSearchTree::subtree_average(std::size_t i, const StepCoefficients& c) const {
  const ConstVec agg_u{agg_u_.data() + i * dim_, dim_};
  return (c.n_coef * agg_n_[i] + c.r_coef * agg_r_[i] + dot(c.u_dir, agg_u)) / agg_w_[i];
}

std::size_t AugmentedSearchTree::linear_scan(const StepCoefficients& c) {
  std::size_t best = size();
  double best_value = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < size(); ++i) {
    if (remaining_[i] == 0) continue;
    const double v = objective(i, c);
    if (best == size() || v < best_value) {
      best = i;
      best_value = v;
    }
  }
  return best;
}

std::size_t AugmentedSearchTree::select(const StepCoefficients& c) {
  if (agg_feasible_[0] <= 0) throw InvalidArgument("size spec exhausted");
  const std::size_t k = size();
  const double target = subtree_average(0, c);
  const bool exact = rule_ == SelectionRule::kExactExpectation;

  std::size_t v = 0;
  while (true) {
    if (remaining_[v] > 0 && objective(v, c) <= target) return v;

    std::size_t chosen = k;
    std::size_t lowest = k;
    double lowest_avg = std::numeric_limits<double>::infinity();
    const std::size_t first = first_child(v);
    for (std::size_t ch = first; ch < std::min(first + arity_, k); ++ch) {
      if (agg_feasible_[ch] <= 0) continue;
      const double avg = subtree_average(ch, c);
      if (avg <= target) {
        chosen = ch;
        break;
      }
      if (avg < lowest_avg) {
        lowest_avg = avg;
        lowest = ch;
      }
    }
    if (chosen == k) {
      if (!exact) {
        ++fallback_steps_;
        return linear_scan(c);
      }
      // Exact rule: the subtree mean is <= target, so only rounding can get
      // here; follow the smallest child mean, or stop at v if it is the
      // only class left in this subtree.
      if (lowest == k) {
        if (remaining_[v] > 0) return v;
        ++fallback_steps_;
        return linear_scan(c);
      }
      chosen = lowest;
    }
    v = chosen;
  }
}

void AugmentedSearchTree::propagate(std::size_t node, double dw, double dn, double dr, ConstVec du, long df) {
  std::size_t a = node;
  while (true) {
    agg_w_[a] += dw;
    agg_n_[a] += dn;
    agg_r_[a] += dr;
    agg_feasible_[a] += df;
    double* au = agg_u_.data() + a * dim_;
    for (std::size_t t = 0; t < dim_; ++t) au[t] += du[t];
    if (a == 0) break;
    a = parent(a);
  }
}

void AugmentedSearchTree::apply(std::size_t i, ConstVec p) {
  if (i >= size()) throw InvalidArgument("class index out of range");
  if (remaining_[i] == 0) throw InvalidArgument("class quota already exhausted");
  if (p.size() != dim_) throw InvalidArgument("dimension mismatch");

  const double ni = n_[i];
  const double old_w = weight(i);
  const double old_r = r_[i];
  remaining_[i] -= 1;
  const double new_w = weight(i);
  r_[i] -= 2.0 * ni;

  double* ui = u_.data() + i * dim_;
  double* si = part_sum_.data() + i * dim_;
  for (std::size_t t = 0; t < dim_; ++t) {
    scratch_[t] = (new_w - old_w) * ui[t] + 2.0 * ni * new_w * p[t];
    ui[t] += 2.0 * ni * p[t];
    si[t] += p[t];
  }
  const double dw = new_w - old_w;
  propagate(i, dw, dw * ni, new_w * r_[i] - old_w * old_r, scratch_, remaining_[i] == 0 ? -1 : 0);

  for (std::size_t j : lifting_.neighbors(i)) {
    r_[j] += 2.0;
    double* uj = u_.data() + j * dim_;
    for (std::size_t t = 0; t < dim_; ++t) uj[t] -= 2.0 * p[t];
    const double w = weight(j);
    if (w == 0.0) continue;
    for (std::size_t t = 0; t < dim_; ++t) scratch_[t] = -2.0 * w * p[t];
    propagate(j, 0.0, 0.0, 2.0 * w, scratch_, 0);
  }
}

double AugmentedSearchTree::consistency_error() const {
  const std::size_t k = size();
  std::vector<double> r(k);
  std::vector<double> u(k * dim_, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    double nb = 0.0;
    for (std::size_t j : lifting_.neighbors(i)) {
      nb += static_cast<double>(remaining_[j]);
      for (std::size_t t = 0; t < dim_; ++t) u[i * dim_ + t] -= 2.0 * part_sum_[j * dim_ + t];
    }
    r[i] = 2.0 * (static_cast<double>(remaining_[i]) * n_[i] - nb);
    for (std::size_t t = 0; t < dim_; ++t) u[i * dim_ + t] += 2.0 * n_[i] * part_sum_[i * dim_ + t];
  }
  std::vector<double> aw(k), an(k), ar(k), au(k * dim_);
  for (std::size_t i = 0; i < k; ++i) {
    const double w = weight(i);
    aw[i] = w;
    an[i] = w * n_[i];
    ar[i] = w * r[i];
    for (std::size_t t = 0; t < dim_; ++t) au[i * dim_ + t] = w * u[i * dim_ + t];
  }
  for (std::size_t i = k; i-- > 1;) {
    const std::size_t p = parent(i);
    aw[p] += aw[i];
    an[p] += an[i];
    ar[p] += ar[i];
    for (std::size_t t = 0; t < dim_; ++t) au[p * dim_ + t] += au[i * dim_ + t];
  }

  auto rel = [](std::span<const double> got, std::span<const double> want) {
    double scale = 0.0;
    double err = 0.0;
    for (std::size_t t = 0; t < want.size(); ++t) {
      scale = std::max(scale, std::abs(want[t]));
      err = std::max(err, std::abs(got[t] - want[t]));
    }
    return scale > 0.0 ? err / scale : err;
  };
  double worst = 0.0;
  worst = std::max(worst, rel(r_, r));
  worst = std::max(worst, rel(u_, u));
  worst = std::max(worst, rel(agg_w_, aw));
  worst = std::max(worst, rel(agg_n_, an));
  worst = std::max(worst, rel(agg_r_, ar));
  worst = std::max(worst, rel(agg_u_, au));
  return worst;
}

}  // namespace nodim
