#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "evofs/classifiers.hpp"
#include "evofs/matrix.hpp"

namespace evofs {

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  int left = -1, right = -1;
  int leaf_class = -1;
};

// Gini impurity from integer class counts; exposed so tests compute candidate
// impurities through the exact same arithmetic as the trainer.
double gini_from_counts(const std::vector<std::int64_t>& counts, std::int64_t n);
double weighted_gini(const std::vector<std::int64_t>& left_counts, std::int64_t nl,
                     const std::vector<std::int64_t>& right_counts, std::int64_t nr);

struct SplitChoice {
  int feature = -1;
  double threshold = 0.0;
  double impurity = std::numeric_limits<double>::infinity();
  bool found() const { return feature >= 0; }
};

// Minimizes weighted Gini over midpoint thresholds of the candidate features.
// Ties go to the lowest feature index, then the lowest threshold. Row indices
// select a subset of x/y.
SplitChoice best_split(const Matrix& x, const std::vector<int>& y,
                       const std::vector<std::size_t>& rows,
                       const std::vector<int>& candidate_features,
                       int class_count);

// Candidate-feature provider, called once per attempted split (lets the
// forest subsample features). An empty function means "all features".
using FeatureSampler = std::function<std::vector<int>(int)>;

class DecisionTree : public Model {
 public:
  static DecisionTree train(const Matrix& x, const std::vector<int>& y,
                            int class_count, const DtreeParams& params,
                            const FeatureSampler& sampler = {});

  std::vector<int> predict(const Matrix& rows) const override;
  int predict_row(std::span<const double> row) const;
  const std::vector<TreeNode>& nodes() const { return nodes_; }

 private:
  std::vector<TreeNode> nodes_;
  int class_count_ = 0;
};

}  // namespace evofs
