#include "evofs/decision_tree.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace evofs {

double gini_from_counts(const std::vector<std::int64_t>& counts, std::int64_t n) {
  if (n <= 0) return 0.0;
  double sum_sq = 0.0;
  for (const auto c : counts) {
    const double p = static_cast<double>(c) / static_cast<double>(n);
    sum_sq += p * p;
  }
  return 1.0 - sum_sq;
}

double weighted_gini(const std::vector<std::int64_t>& left_counts, std::int64_t nl,
                     const std::vector<std::int64_t>& right_counts, std::int64_t nr) {
  const auto n = static_cast<double>(nl + nr);
  return (static_cast<double>(nl) * gini_from_counts(left_counts, nl) +
          static_cast<double>(nr) * gini_from_counts(right_counts, nr)) /
         n;
}

namespace {

// Midpoint that always lands strictly below the upper value, so the predicate
// "v <= threshold" reproduces the positional partition used while scoring.
double midpoint_threshold(double lo, double hi) {
  const double mid = lo + (hi - lo) / 2.0;
  return mid < hi ? mid : lo;
}

int majority_class(const std::vector<int>& y, const std::vector<std::size_t>& rows,
                   int class_count) {
  std::vector<std::int64_t> counts(class_count, 0);
  for (const auto r : rows) ++counts[y[r]];
  int best = 0;
  for (int c = 1; c < class_count; ++c)
    if (counts[c] > counts[best]) best = c;  // ties keep the lower index
  return best;
}

}  // namespace

SplitChoice best_split(const Matrix& x, const std::vector<int>& y,
                       const std::vector<std::size_t>& rows,
                       const std::vector<int>& candidate_features,
                       int class_count) {
  SplitChoice best;
  const std::size_t m = rows.size();
  if (m < 2) return best;

  std::vector<std::int64_t> total(class_count, 0);
  for (const auto r : rows) ++total[y[r]];

  std::vector<std::pair<double, int>> ordered(m);
  std::vector<std::int64_t> left(class_count), right(class_count);
  for (const int f : candidate_features) {
    for (std::size_t i = 0; i < m; ++i)
      ordered[i] = {x(rows[i], f), y[rows[i]]};
    std::sort(ordered.begin(), ordered.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    std::fill(left.begin(), left.end(), 0);
    std::int64_t nl = 0;
    for (std::size_t i = 0; i + 1 < m; ++i) {
      ++left[ordered[i].second];
      ++nl;
      if (!(ordered[i + 1].first > ordered[i].first)) continue;
      for (int c = 0; c < class_count; ++c) right[c] = total[c] - left[c];
      const double g =
          weighted_gini(left, nl, right, static_cast<std::int64_t>(m) - nl);
      if (g < best.impurity) {
        best.feature = f;
        best.threshold = midpoint_threshold(ordered[i].first, ordered[i + 1].first);
        best.impurity = g;
      }
    }
  }
  return best;
}

DecisionTree DecisionTree::train(const Matrix& x, const std::vector<int>& y,
                                 int class_count, const DtreeParams& params,
                                 const FeatureSampler& sampler) {
  if (params.criterion != "gini")
    throw std::invalid_argument("dtree: unsupported criterion '" +
                                params.criterion + "'");
  if (params.min_samples_split < 2)
    throw std::invalid_argument("dtree: min_samples_split must be >= 2");
  if (params.max_depth && *params.max_depth <= 0)
    throw std::invalid_argument("dtree: max_depth must be positive");
  if (x.rows() == 0 || x.rows() != y.size())
    throw std::invalid_argument("dtree: bad training shape");

  DecisionTree tree;
  tree.class_count_ = class_count;
  const int d = static_cast<int>(x.cols());
  std::vector<int> all_features(d);
  std::iota(all_features.begin(), all_features.end(), 0);

  struct Work {
    std::vector<std::size_t> rows;
    int depth;
    int node;
  };
  std::vector<std::size_t> root_rows(x.rows());
  std::iota(root_rows.begin(), root_rows.end(), 0);
  tree.nodes_.emplace_back();
  std::vector<Work> stack;
  stack.push_back({std::move(root_rows), 0, 0});

  while (!stack.empty()) {
    Work w = std::move(stack.back());
    stack.pop_back();

    const bool pure = std::all_of(
        w.rows.begin(), w.rows.end(),
        [&](std::size_t r) { return y[r] == y[w.rows.front()]; });
    const bool depth_capped = params.max_depth && w.depth >= *params.max_depth;
    const bool too_small =
        w.rows.size() < static_cast<std::size_t>(params.min_samples_split);

    SplitChoice choice;
    if (!pure && !depth_capped && !too_small) {
      const std::vector<int> candidates =
          sampler ? sampler(d) : all_features;
      choice = best_split(x, y, w.rows, candidates, class_count);
    }
    if (!choice.found()) {
      tree.nodes_[w.node].leaf_class = majority_class(y, w.rows, class_count);
      continue;
    }

    std::vector<std::size_t> left_rows, right_rows;
    for (const auto r : w.rows) {
      if (x(r, choice.feature) <= choice.threshold)
        left_rows.push_back(r);
      else
        right_rows.push_back(r);
    }
    if (left_rows.empty() || right_rows.empty()) {
      tree.nodes_[w.node].leaf_class = majority_class(y, w.rows, class_count);
      continue;
    }

    const int left_idx = static_cast<int>(tree.nodes_.size());
    tree.nodes_.emplace_back();
    const int right_idx = static_cast<int>(tree.nodes_.size());
    tree.nodes_.emplace_back();
    tree.nodes_[w.node].feature = choice.feature;
    tree.nodes_[w.node].threshold = choice.threshold;
    tree.nodes_[w.node].left = left_idx;
    tree.nodes_[w.node].right = right_idx;
    stack.push_back({std::move(right_rows), w.depth + 1, right_idx});
    stack.push_back({std::move(left_rows), w.depth + 1, left_idx});
  }
  return tree;
}

int DecisionTree::predict_row(std::span<const double> row) const {
  int node = 0;
  while (nodes_[node].feature >= 0) {
    node = row[nodes_[node].feature] <= nodes_[node].threshold
               ? nodes_[node].left
               : nodes_[node].right;
  }
  return nodes_[node].leaf_class;
}

std::vector<int> DecisionTree::predict(const Matrix& rows) const {
  std::vector<int> out(rows.rows());
  for (std::size_t r = 0; r < rows.rows(); ++r) out[r] = predict_row(rows.row(r));
  return out;
}

}  // namespace evofs
