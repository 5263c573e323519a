#pragma once

#include <cstdint>
#include <vector>

#include "evofs/decision_tree.hpp"

namespace evofs {

// Bagged Gini trees with per-split feature subsampling; majority vote with
// ties to the lowest class index.
class RandomForest : public Model {
 public:
  static RandomForest train(const Matrix& x, const std::vector<int>& y,
                            int class_count, const RforestParams& params,
                            std::uint64_t seed);

  std::vector<int> predict(const Matrix& rows) const override;
  const std::vector<DecisionTree>& trees() const { return trees_; }

 private:
  std::vector<DecisionTree> trees_;
  int class_count_ = 0;
};

}  // namespace evofs
