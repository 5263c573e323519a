#include "evofs/classifiers.hpp"

#include <chrono>
#include <set>
#include <stdexcept>

#include "evofs/decision_tree.hpp"
#include "evofs/knn.hpp"
#include "evofs/random_forest.hpp"
#include "evofs/svm.hpp"

namespace evofs {

std::string to_string(ClassifierKind kind) {
  switch (kind) {
    case ClassifierKind::dtree: return "dtree";
    case ClassifierKind::rforest: return "rforest";
    case ClassifierKind::knn: return "knn";
    case ClassifierKind::svm_rbf: return "svm";
  }
  return "?";
}

ClassifierKind classifier_kind_from(const std::string& name) {
  if (name == "dtree") return ClassifierKind::dtree;
  if (name == "rforest") return ClassifierKind::rforest;
  if (name == "knn") return ClassifierKind::knn;
  if (name == "svm") return ClassifierKind::svm_rbf;
  throw std::invalid_argument("classifier: unknown kind '" + name + "'");
}

TrainedModel fit(const ClassifierSpec& spec, const DataTable& train,
                 std::uint64_t seed) {
  if (train.rows() == 0) throw std::invalid_argument("fit: empty training table");
  const std::set<int> distinct(train.labels.begin(), train.labels.end());
  if (distinct.size() < 2)
    throw std::invalid_argument("fit: training data has a single class");

  const int classes = static_cast<int>(train.class_count());
  const auto start = std::chrono::steady_clock::now();

  std::shared_ptr<const Model> model;
  switch (spec.kind) {
    case ClassifierKind::dtree:
      model = std::make_shared<DecisionTree>(DecisionTree::train(
          train.features, train.labels, classes, spec.dtree));
      break;
    case ClassifierKind::rforest:
      model = std::make_shared<RandomForest>(RandomForest::train(
          train.features, train.labels, classes, spec.rforest, seed));
      break;
    case ClassifierKind::knn:
      model = std::make_shared<KnnModel>(
          KnnModel::train(train.features, train.labels, classes, spec.knn));
      break;
    case ClassifierKind::svm_rbf:
      // deliberately ignores the seed: the solver is deterministic by design
      model = std::make_shared<SvmModel>(
          SvmModel::train(train.features, train.labels, classes, spec.svm));
      break;
  }
  const auto stop = std::chrono::steady_clock::now();

  TrainedModel out;
  out.spec = spec;
  out.model = std::move(model);
  out.class_count = classes;
  out.feature_count = static_cast<int>(train.feature_count());
  out.train_seconds = std::chrono::duration<double>(stop - start).count();
  return out;
}

std::pair<std::vector<int>, double> predict(const TrainedModel& model,
                                            const Matrix& rows) {
  if (!model.model) throw std::invalid_argument("predict: model not trained");
  if (rows.rows() > 0 &&
      rows.cols() != static_cast<std::size_t>(model.feature_count))
    throw std::invalid_argument("predict: feature width mismatch");
  const auto start = std::chrono::steady_clock::now();
  std::vector<int> labels =
      rows.rows() == 0 ? std::vector<int>{} : model.model->predict(rows);
  const auto stop = std::chrono::steady_clock::now();
  return {std::move(labels),
          std::chrono::duration<double>(stop - start).count()};
}

}  // namespace evofs
