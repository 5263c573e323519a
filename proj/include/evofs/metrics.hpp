#pragma once

#include <cstdint>
#include <vector>

namespace evofs {

// k x k contingency counts; rows are actual classes, columns predicted.
struct ConfusionMatrix {
  int classes = 0;
  std::vector<std::uint64_t> counts;  // row-major, classes * classes

  std::uint64_t at(int actual, int predicted) const {
    return counts[static_cast<std::size_t>(actual) * classes + predicted];
  }
  std::uint64_t& at(int actual, int predicted) {
    return counts[static_cast<std::size_t>(actual) * classes + predicted];
  }
  std::uint64_t total() const;
  std::uint64_t trace() const;
  std::uint64_t row_sum(int actual) const;
  std::uint64_t col_sum(int predicted) const;
};

// Per-class one-vs-rest scores plus macro and support-weighted averages.
// Zero-denominator cells score 0 by convention.
struct MetricReport {
  double accuracy = 0.0;
  std::vector<double> precision;  // one entry per class
  std::vector<double> recall;
  std::vector<double> f1;
  std::vector<std::uint64_t> support;  // actual count per class
  double precision_macro = 0.0, recall_macro = 0.0, f1_macro = 0.0;
  double precision_weighted = 0.0, recall_weighted = 0.0, f1_weighted = 0.0;
};

// Tallies labels into a k-class matrix. Throws on length mismatch, empty
// input, or a label outside [0, k).
ConfusionMatrix confusion(const std::vector<int>& actual,
                          const std::vector<int>& predicted, int classes);

// trace / total. Throws when the matrix holds no observations.
double accuracy(const ConfusionMatrix& cm);

MetricReport precision_recall_f1(const ConfusionMatrix& cm);

// Percent change of new_value over old_value: ((new - old) / |old|) * 100.
// Throws when old_value is 0.
double relative_improvement(double new_value, double old_value);

}  // namespace evofs
