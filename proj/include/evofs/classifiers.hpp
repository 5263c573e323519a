#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "evofs/dataset.hpp"
#include "evofs/matrix.hpp"

namespace evofs {

enum class ClassifierKind { dtree, rforest, knn, svm_rbf };

std::string to_string(ClassifierKind kind);
ClassifierKind classifier_kind_from(const std::string& name);

struct DtreeParams {
  std::string criterion = "gini";      // only gini is supported
  std::optional<int> max_depth;        // unset = grow until pure
  int min_samples_split = 2;
};

struct RforestParams {
  int n_estimators = 100;
  std::optional<int> max_features;     // unset = ceil(sqrt(d)), per split
  bool bootstrap = true;
};

struct KnnParams {
  int k = 5;                           // euclidean distance
};

struct SvmParams {
  double c = 1.0;
  std::optional<double> gamma;         // unset = 1 / (d * var(features))
  int max_passes = 10;                 // stop after this many stagnant sweeps
  double tolerance = 1e-3;
};

// Which classifier to train plus its hyperparameters; only the block matching
// `kind` is read.
struct ClassifierSpec {
  ClassifierKind kind = ClassifierKind::dtree;
  DtreeParams dtree;
  RforestParams rforest;
  KnnParams knn;
  SvmParams svm;

  static ClassifierSpec decision_tree(DtreeParams params = {}) {
    ClassifierSpec s;
    s.dtree = std::move(params);
    return s;
  }
  static ClassifierSpec random_forest(RforestParams params = {}) {
    ClassifierSpec s;
    s.kind = ClassifierKind::rforest;
    s.rforest = std::move(params);
    return s;
  }
  static ClassifierSpec nearest_neighbors(KnnParams params = {}) {
    ClassifierSpec s;
    s.kind = ClassifierKind::knn;
    s.knn = std::move(params);
    return s;
  }
  static ClassifierSpec support_vector(SvmParams params = {}) {
    ClassifierSpec s;
    s.kind = ClassifierKind::svm_rbf;
    s.svm = std::move(params);
    return s;
  }
};

// Trained predictor; implementations live in the per-family translation units.
class Model {
 public:
  virtual ~Model() = default;
  virtual std::vector<int> predict(const Matrix& rows) const = 0;
};

struct TrainedModel {
  ClassifierSpec spec;
  std::shared_ptr<const Model> model;
  int class_count = 0;     // size of the label vocabulary, not classes seen
  int feature_count = 0;
  double train_seconds = 0.0;
};

// Trains `spec` on the table. Throws on empty data, a single distinct class,
// k > n for knn, or invalid hyperparameters. Deterministic given (data, spec,
// seed).
TrainedModel fit(const ClassifierSpec& spec, const DataTable& train,
                 std::uint64_t seed);

// Predicts class indices for each row; also returns wall seconds spent.
// Throws when the row width differs from the training width.
std::pair<std::vector<int>, double> predict(const TrainedModel& model,
                                            const Matrix& rows);

}  // namespace evofs
