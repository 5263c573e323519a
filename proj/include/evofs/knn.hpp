#pragma once

#include <vector>

#include "evofs/classifiers.hpp"
#include "evofs/matrix.hpp"

namespace evofs {

// Exact k-nearest-neighbors under euclidean distance. Neighbor ties at equal
// distance go to the lower training index; vote ties to the lower class index.
class KnnModel : public Model {
 public:
  static KnnModel train(const Matrix& x, const std::vector<int>& y,
                        int class_count, const KnnParams& params);

  std::vector<int> predict(const Matrix& rows) const override;

 private:
  Matrix train_x_;
  std::vector<int> train_y_;
  int class_count_ = 0;
  int k_ = 0;
};

}  // namespace evofs
