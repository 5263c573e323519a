#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "evofs/experiment.hpp"
#include "evofs/report.hpp"
#include "evofs/version.hpp"

namespace py = pybind11;
using namespace evofs;

namespace {

Matrix matrix_from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) return Matrix(0, 0);
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols())
      throw std::invalid_argument("rows must all have the same width");
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = rows[r][c];
  }
  return m;
}

std::vector<std::vector<double>> matrix_to_rows(const Matrix& m) {
  std::vector<std::vector<double>> rows(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    rows[r].assign(m.row(r).begin(), m.row(r).end());
  return rows;
}

ClassifierSpec spec_from(const std::string& classifier, int knn_k, int trees,
                         double svm_c) {
  ClassifierSpec spec;
  spec.kind = classifier_kind_from(classifier);
  spec.knn.k = knn_k;
  spec.rforest.n_estimators = trees;
  spec.svm.c = svm_c;
  return spec;
}

FitnessStrategy strategy_from(const std::string& classifier, int folds,
                              std::uint64_t seed, const std::string& mode,
                              double validation_fraction, int knn_k, int trees,
                              double svm_c) {
  FitnessStrategy s;
  s.mode = mode == "holdout" ? FitnessMode::holdout : FitnessMode::kfold_cv;
  s.folds = folds;
  s.validation_fraction = validation_fraction;
  s.seed = seed;
  s.classifier = spec_from(classifier, knn_k, trees, svm_c);
  return s;
}

py::dict result_to_dict(const SearchResult& r) {
  py::dict out;
  out["mask"] = r.best_mask.to_string();
  out["fitness"] = r.best_fitness;
  out["evaluations"] = r.evaluations_used;
  out["trace"] = r.trace;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "wrapper feature selection toolkit: preprocessing, classifiers, "
            "subset search and metrics";
  m.attr("__version__") = kVersion;

  py::class_<DataTable>(m, "DataTable")
      .def_property_readonly("rows", &DataTable::rows)
      .def_property_readonly("feature_count", &DataTable::feature_count)
      .def_property_readonly("class_count", &DataTable::class_count)
      .def_readonly("feature_names", &DataTable::feature_names)
      .def_readonly("class_names", &DataTable::class_names)
      .def_readonly("labels", &DataTable::labels)
      .def_readonly("row_ids", &DataTable::row_ids)
      .def("features", [](const DataTable& t) { return matrix_to_rows(t.features); })
      .def("__repr__", [](const DataTable& t) {
        return "<DataTable rows=" + std::to_string(t.rows()) +
               " features=" + std::to_string(t.feature_count()) +
               " classes=" + std::to_string(t.class_count()) + ">";
      });

  m.def(
      "load_csv",
      [](const std::vector<std::string>& paths, const std::string& schema,
         const std::string& label_column,
         const std::vector<std::string>& extra_drops) {
        DatasetSchema s = schema_for(schema);
        if (!label_column.empty()) s.label_column = label_column;
        s.drop_columns.insert(s.drop_columns.end(), extra_drops.begin(),
                              extra_drops.end());
        return clean_and_encode(load_csv(paths, s));
      },
      py::arg("paths"), py::arg("schema") = "generic",
      py::arg("label_column") = "", py::arg("extra_drops") = std::vector<std::string>{},
      "Load CSV files, drop schema columns, impute, encode and scale to [0,1].");

  m.def("schema_names", &schema_names);
  m.def("downsample", &downsample, py::arg("table"), py::arg("per_class_cap"),
        py::arg("seed") = 42,
        "Cap every class at per_class_cap rows with a seeded draw.");
  m.def(
      "split",
      [](const DataTable& t, double train_fraction, std::uint64_t seed) {
        SplitPair p = split(t, train_fraction, seed);
        return py::make_tuple(std::move(p.train), std::move(p.test));
      },
      py::arg("table"), py::arg("train_fraction") = 0.8, py::arg("seed") = 42,
      "Seeded shuffle split; returns (train, test).");
  m.def(
      "select_features",
      [](const DataTable& t, const std::string& mask) {
        return select_features(t, FeatureMask::from_string(mask));
      },
      py::arg("table"), py::arg("mask"));

  m.def(
      "hamming_distance",
      [](const std::string& a, const std::string& b) {
        return hamming_distance(FeatureMask::from_string(a),
                                FeatureMask::from_string(b));
      },
      py::arg("a"), py::arg("b"));

  m.def(
      "evaluate_mask",
      [](const DataTable& table, const std::string& mask,
         const std::string& classifier, int folds, std::uint64_t seed,
         const std::string& mode, double validation_fraction, int knn_k,
         int trees, double svm_c) {
        MaskEvaluator eval(table, strategy_from(classifier, folds, seed, mode,
                                                validation_fraction, knn_k,
                                                trees, svm_c));
        return eval(FeatureMask::from_string(mask));
      },
      py::arg("table"), py::arg("mask"), py::arg("classifier") = "dtree",
      py::arg("folds") = 5, py::arg("seed") = 42, py::arg("mode") = "kfold_cv",
      py::arg("validation_fraction") = 0.2, py::arg("knn_k") = 5,
      py::arg("trees") = 100, py::arg("svm_c") = 1.0,
      "Negative cross-validated accuracy of the masked feature set "
      "(lower is better; the empty mask scores +1).");

  m.def(
      "run_evo",
      [](const DataTable& table, const std::string& classifier, int particles,
         int max_fes, std::uint64_t seed, int folds,
         const std::string& binarization) {
        MaskEvaluator eval(table, strategy_from(classifier, folds, seed,
                                                "kfold_cv", 0.2, 5, 100, 1.0));
        EvoConfig config;
        config.n_particles = particles;
        config.max_fes = max_fes;
        config.seed = seed;
        config.binarization = binarization_from(binarization);
        const auto result = run_evo(
            table.feature_count(),
            [&](const FeatureMask& mask) { return eval(mask); }, config);
        return result_to_dict(result);
      },
      py::arg("table"), py::arg("classifier") = "dtree",
      py::arg("particles") = 40, py::arg("max_fes") = 100, py::arg("seed") = 42,
      py::arg("folds") = 5, py::arg("binarization") = "bernoulli",
      "Energy-valley subset search over the table's features.");

  m.def(
      "run_gwo",
      [](const DataTable& table, const std::string& classifier, int wolves,
         int iterations, std::uint64_t seed, int folds,
         const std::string& binarization) {
        MaskEvaluator eval(table, strategy_from(classifier, folds, seed,
                                                "kfold_cv", 0.2, 5, 100, 1.0));
        GwoConfig config;
        config.n_wolves = wolves;
        config.n_iterations = iterations;
        config.seed = seed;
        config.binarization = binarization_from(binarization);
        const auto result = run_gwo(
            table.feature_count(),
            [&](const FeatureMask& mask) { return eval(mask); }, config);
        return result_to_dict(result);
      },
      py::arg("table"), py::arg("classifier") = "dtree", py::arg("wolves") = 20,
      py::arg("iterations") = 20, py::arg("seed") = 42, py::arg("folds") = 5,
      py::arg("binarization") = "bernoulli",
      "Grey-wolf subset search over the table's features.");

  py::class_<TrainedModel>(m, "TrainedModel")
      .def_property_readonly("classifier",
                             [](const TrainedModel& m_) { return to_string(m_.spec.kind); })
      .def_readonly("feature_count", &TrainedModel::feature_count)
      .def_readonly("class_count", &TrainedModel::class_count)
      .def_readonly("train_seconds", &TrainedModel::train_seconds)
      .def("predict", [](const TrainedModel& model,
                         const std::vector<std::vector<double>>& rows) {
        return predict(model, matrix_from_rows(rows)).first;
      });

  m.def(
      "fit",
      [](const DataTable& table, const std::string& classifier,
         std::uint64_t seed, int knn_k, int trees, double svm_c) {
        return fit(spec_from(classifier, knn_k, trees, svm_c), table, seed);
      },
      py::arg("table"), py::arg("classifier") = "dtree", py::arg("seed") = 42,
      py::arg("knn_k") = 5, py::arg("trees") = 100, py::arg("svm_c") = 1.0);

  m.def(
      "confusion",
      [](const std::vector<int>& actual, const std::vector<int>& predicted,
         int classes) {
        const ConfusionMatrix cm = confusion(actual, predicted, classes);
        std::vector<std::vector<std::uint64_t>> rows(classes);
        for (int a = 0; a < classes; ++a)
          for (int p = 0; p < classes; ++p) rows[a].push_back(cm.at(a, p));
        return rows;
      },
      py::arg("actual"), py::arg("predicted"), py::arg("classes"));

  m.def(
      "scores",
      [](const std::vector<int>& actual, const std::vector<int>& predicted,
         int classes) {
        const ConfusionMatrix cm = confusion(actual, predicted, classes);
        const MetricReport r = precision_recall_f1(cm);
        py::dict out;
        out["accuracy"] = accuracy(cm);
        out["precision"] = r.precision;
        out["recall"] = r.recall;
        out["f1"] = r.f1;
        out["support"] = r.support;
        out["precision_macro"] = r.precision_macro;
        out["recall_macro"] = r.recall_macro;
        out["f1_macro"] = r.f1_macro;
        out["precision_weighted"] = r.precision_weighted;
        out["recall_weighted"] = r.recall_weighted;
        out["f1_weighted"] = r.f1_weighted;
        return out;
      },
      py::arg("actual"), py::arg("predicted"), py::arg("classes"),
      "Accuracy plus per-class/macro/weighted precision, recall and F1.");

  m.def("relative_improvement", &relative_improvement, py::arg("new_value"),
        py::arg("old_value"),
        "Percent change of new_value over old_value, e.g. (99.13, 99) -> 0.1313.");

  m.def(
      "run_experiment",
      [](const std::vector<std::string>& paths, const std::string& schema,
         const std::string& optimizer, const std::string& classifier,
         std::uint64_t seed, int downsample_cap, double train_fraction,
         int folds, int particles, int max_fes, int wolves, int iterations,
         const std::string& output_path) {
        ExperimentConfig config;
        config.dataset.schema_name = schema;
        config.dataset.paths = paths;
        config.dataset.downsample_cap = downsample_cap;
        config.dataset.train_fraction = train_fraction;
        config.dataset.seed = seed;
        config.optimizer = optimizer_kind_from(optimizer);
        config.evo.n_particles = particles;
        config.evo.max_fes = max_fes;
        config.evo.seed = seed;
        config.gwo.n_wolves = wolves;
        config.gwo.n_iterations = iterations;
        config.gwo.seed = seed;
        config.classifier = spec_from(classifier, 5, 100, 1.0);
        config.fitness.folds = folds;
        config.fitness.seed = seed;
        config.seed = seed;
        config.output_path = output_path;
        return emit_report(run_experiment(config));
      },
      py::arg("paths"), py::arg("schema") = "generic",
      py::arg("optimizer") = "none", py::arg("classifier") = "dtree",
      py::arg("seed") = 42, py::arg("downsample_cap") = 0,
      py::arg("train_fraction") = 0.8, py::arg("folds") = 5,
      py::arg("particles") = 40, py::arg("max_fes") = 100,
      py::arg("wolves") = 20, py::arg("iterations") = 20,
      py::arg("output_path") = "",
      "Full pipeline on CSV files; returns the serialized report text.");
}
