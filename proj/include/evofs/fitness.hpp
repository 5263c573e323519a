#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "evofs/classifiers.hpp"
#include "evofs/dataset.hpp"
#include "evofs/mask.hpp"

namespace evofs {

enum class FitnessMode { kfold_cv, holdout };

struct FitnessStrategy {
  FitnessMode mode = FitnessMode::kfold_cv;
  int folds = 5;                      // kfold_cv only
  double validation_fraction = 0.2;   // holdout only
  ClassifierSpec classifier;
  std::uint64_t seed = 42;
};

// Fitness of a feature subset: minus the mean validation accuracy of the
// strategy's classifier restricted to the masked columns, so lower is better
// and values live in [-1, 0]. An all-zero mask short-circuits to +1.0 without
// training. Every call, sentinel included, bumps the evaluation counter.
//
// Fold assignment, holdout split and classifier seeds all derive from
// strategy.seed per call, so equal (table, mask, strategy) give bit-identical
// results regardless of call order or sharing.
class MaskEvaluator {
 public:
  MaskEvaluator(DataTable table, FitnessStrategy strategy);

  double operator()(const FeatureMask& mask) const;
  std::uint64_t evaluations() const { return count_.load(); }

  const DataTable& table() const { return table_; }
  const FitnessStrategy& strategy() const { return strategy_; }

  // Test instrumentation: reports the row ids a (non-sentinel) evaluation read.
  void set_row_hook(std::function<void(const std::vector<std::int64_t>&)> hook) {
    row_hook_ = std::move(hook);
  }

 private:
  DataTable table_;
  FitnessStrategy strategy_;
  mutable std::atomic<std::uint64_t> count_{0};
  std::function<void(const std::vector<std::int64_t>&)> row_hook_;
  int min_class_count_ = 0;
  int min_class_ = 0;
};

// Convenience adapter for the optimizers.
using FitnessFn = std::function<double(const FeatureMask&)>;

}  // namespace evofs
