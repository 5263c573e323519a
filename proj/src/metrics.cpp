#include "evofs/metrics.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace evofs {

std::uint64_t ConfusionMatrix::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

std::uint64_t ConfusionMatrix::trace() const {
  std::uint64_t t = 0;
  for (int c = 0; c < classes; ++c) t += at(c, c);
  return t;
}

std::uint64_t ConfusionMatrix::row_sum(int actual) const {
  std::uint64_t s = 0;
  for (int c = 0; c < classes; ++c) s += at(actual, c);
  return s;
}

std::uint64_t ConfusionMatrix::col_sum(int predicted) const {
  std::uint64_t s = 0;
  for (int r = 0; r < classes; ++r) s += at(r, predicted);
  return s;
}

ConfusionMatrix confusion(const std::vector<int>& actual,
                          const std::vector<int>& predicted, int classes) {
  if (classes <= 0) throw std::invalid_argument("confusion: classes must be positive");
  if (actual.size() != predicted.size())
    throw std::invalid_argument("confusion: actual/predicted length mismatch");
  if (actual.empty()) throw std::invalid_argument("confusion: empty input");

  ConfusionMatrix cm;
  cm.classes = classes;
  cm.counts.assign(static_cast<std::size_t>(classes) * classes, 0);
  for (std::size_t i = 0; i < actual.size(); ++i) {
    const int a = actual[i], p = predicted[i];
    if (a < 0 || a >= classes || p < 0 || p >= classes) {
      std::ostringstream msg;
      msg << "confusion: label out of range at index " << i << " (actual=" << a
          << ", predicted=" << p << ", classes=" << classes << ")";
      throw std::invalid_argument(msg.str());
    }
    ++cm.at(a, p);
  }
  return cm;
}

double accuracy(const ConfusionMatrix& cm) {
  const std::uint64_t total = cm.total();
  if (total == 0) throw std::invalid_argument("accuracy: empty confusion matrix");
  return static_cast<double>(cm.trace()) / static_cast<double>(total);
}

MetricReport precision_recall_f1(const ConfusionMatrix& cm) {
  const std::uint64_t total = cm.total();
  if (total == 0)
    throw std::invalid_argument("precision_recall_f1: empty confusion matrix");

  MetricReport rep;
  rep.accuracy = accuracy(cm);
  const int k = cm.classes;
  rep.precision.resize(k);
  rep.recall.resize(k);
  rep.f1.resize(k);
  rep.support.resize(k);

  for (int c = 0; c < k; ++c) {
    const auto tp = static_cast<double>(cm.at(c, c));
    const auto actual_c = static_cast<double>(cm.row_sum(c));
    const auto predicted_c = static_cast<double>(cm.col_sum(c));
    const double p = predicted_c > 0.0 ? tp / predicted_c : 0.0;
    const double r = actual_c > 0.0 ? tp / actual_c : 0.0;
    rep.precision[c] = p;
    rep.recall[c] = r;
    rep.f1[c] = (p + r) > 0.0 ? 2.0 * p * r / (p + r) : 0.0;
    rep.support[c] = cm.row_sum(c);
  }

  for (int c = 0; c < k; ++c) {
    rep.precision_macro += rep.precision[c];
    rep.recall_macro += rep.recall[c];
    rep.f1_macro += rep.f1[c];
    const double w =
        static_cast<double>(rep.support[c]) / static_cast<double>(total);
    rep.precision_weighted += w * rep.precision[c];
    rep.recall_weighted += w * rep.recall[c];
    rep.f1_weighted += w * rep.f1[c];
  }
  rep.precision_macro /= k;
  rep.recall_macro /= k;
  rep.f1_macro /= k;
  return rep;
}

double relative_improvement(double new_value, double old_value) {
  if (old_value == 0.0)
    throw std::invalid_argument("relative_improvement: old value is zero");
  return (new_value - old_value) / std::fabs(old_value) * 100.0;
}

}  // namespace evofs
