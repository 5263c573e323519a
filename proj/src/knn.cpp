#include "evofs/knn.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace evofs {

KnnModel KnnModel::train(const Matrix& x, const std::vector<int>& y,
                         int class_count, const KnnParams& params) {
  if (params.k < 1) throw std::invalid_argument("knn: k must be >= 1");
  if (static_cast<std::size_t>(params.k) > x.rows()) {
    std::ostringstream msg;
    msg << "knn: k=" << params.k << " exceeds training rows (" << x.rows() << ")";
    throw std::invalid_argument(msg.str());
  }
  KnnModel model;
  model.train_x_ = x;
  model.train_y_ = y;
  model.class_count_ = class_count;
  model.k_ = params.k;
  return model;
}

std::vector<int> KnnModel::predict(const Matrix& rows) const {
  const std::size_t n = train_x_.rows();
  const std::size_t d = train_x_.cols();
  std::vector<double> dist(n);
  std::vector<std::size_t> order(n);
  std::vector<std::int64_t> votes(class_count_);
  std::vector<int> out(rows.rows());

  for (std::size_t q = 0; q < rows.rows(); ++q) {
    const auto query = rows.row(q);
    for (std::size_t i = 0; i < n; ++i) {
      const auto ref = train_x_.row(i);
      double s = 0.0;
      for (std::size_t c = 0; c < d; ++c) {
        const double diff = query[c] - ref[c];
        s += diff * diff;
      }
      dist[i] = s;
    }
    std::iota(order.begin(), order.end(), 0);
    std::partial_sort(order.begin(), order.begin() + k_, order.end(),
                      [&](std::size_t a, std::size_t b) {
                        return dist[a] < dist[b] || (dist[a] == dist[b] && a < b);
                      });
    std::fill(votes.begin(), votes.end(), 0);
    for (int i = 0; i < k_; ++i) ++votes[train_y_[order[i]]];
    int best = 0;
    for (int c = 1; c < class_count_; ++c)
      if (votes[c] > votes[best]) best = c;
    out[q] = best;
  }
  return out;
}

}  // namespace evofs
