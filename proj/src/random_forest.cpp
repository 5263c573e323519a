#include "evofs/random_forest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace evofs {

RandomForest RandomForest::train(const Matrix& x, const std::vector<int>& y,
                                 int class_count, const RforestParams& params,
                                 std::uint64_t seed) {
  if (params.n_estimators < 1)
    throw std::invalid_argument("rforest: n_estimators must be >= 1");
  const int d = static_cast<int>(x.cols());
  const int m = params.max_features
                    ? *params.max_features
                    : static_cast<int>(std::ceil(std::sqrt(static_cast<double>(d))));
  if (m < 1 || m > d)
    throw std::invalid_argument("rforest: max_features outside [1, d]");

  RandomForest forest;
  forest.class_count_ = class_count;
  DtreeParams tree_params;  // full-depth gini trees

  std::mt19937_64 master(seed);
  const std::size_t n = x.rows();
  for (int t = 0; t < params.n_estimators; ++t) {
    std::mt19937_64 rng(master());

    const Matrix* train_x = &x;
    const std::vector<int>* train_y = &y;
    Matrix boot_x;
    std::vector<int> boot_y;
    if (params.bootstrap) {
      boot_x = Matrix(n, x.cols());
      boot_y.resize(n);
      std::uniform_int_distribution<std::size_t> pick(0, n - 1);
      for (std::size_t r = 0; r < n; ++r) {
        const std::size_t src = pick(rng);
        const auto row = x.row(src);
        std::copy(row.begin(), row.end(), boot_x.row(r).begin());
        boot_y[r] = y[src];
      }
      train_x = &boot_x;
      train_y = &boot_y;
    }

    FeatureSampler sampler;  // empty = every feature, consumes no randomness
    if (m < d) {
      sampler = [m, &rng](int width) {
        std::vector<int> pool(width);
        std::iota(pool.begin(), pool.end(), 0);
        for (int i = 0; i < m; ++i) {
          std::uniform_int_distribution<int> pick(i, width - 1);
          std::swap(pool[i], pool[pick(rng)]);
        }
        std::vector<int> chosen(pool.begin(), pool.begin() + m);
        std::sort(chosen.begin(), chosen.end());
        return chosen;
      };
    }
    forest.trees_.push_back(
        DecisionTree::train(*train_x, *train_y, class_count, tree_params, sampler));
  }
  return forest;
}

std::vector<int> RandomForest::predict(const Matrix& rows) const {
  std::vector<std::int64_t> votes(rows.rows() * static_cast<std::size_t>(class_count_), 0);
  for (const auto& tree : trees_) {
    for (std::size_t r = 0; r < rows.rows(); ++r)
      ++votes[r * class_count_ + tree.predict_row(rows.row(r))];
  }
  std::vector<int> out(rows.rows());
  for (std::size_t r = 0; r < rows.rows(); ++r) {
    int best = 0;
    for (int c = 1; c < class_count_; ++c)
      if (votes[r * class_count_ + c] > votes[r * class_count_ + best]) best = c;
    out[r] = best;
  }
  return out;
}

}  // namespace evofs
