#include "evofs/experiment.hpp"

#include <chrono>
#include <numeric>
#include <stdexcept>

#include "evofs/report.hpp"
#include "evofs/version.hpp"

namespace evofs {

namespace {

template <typename F>
auto stage(const char* name, F&& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("[") + name + "] " + e.what());
  }
}

DatasetSchema effective_schema(const DataSource& src) {
  DatasetSchema s = schema_for(src.schema_name);
  if (!src.label_column.empty()) s.label_column = src.label_column;
  for (const auto& d : src.drop_columns) s.drop_columns.push_back(d);
  return s;
}

}  // namespace

std::string to_string(OptimizerKind kind) {
  switch (kind) {
    case OptimizerKind::none: return "none";
    case OptimizerKind::evo: return "evo";
    case OptimizerKind::gwo: return "gwo";
  }
  return "?";
}

OptimizerKind optimizer_kind_from(const std::string& name) {
  if (name == "none") return OptimizerKind::none;
  if (name == "evo") return OptimizerKind::evo;
  if (name == "gwo") return OptimizerKind::gwo;
  throw std::invalid_argument("optimizer: unknown kind '" + name + "'");
}

ExperimentReport run_experiment(const ExperimentConfig& config,
                                const ExperimentHooks* hooks) {
  const DataSource& src = config.dataset;
  const bool explicit_test = !src.test_paths.empty();
  if (explicit_test && src.downsample_cap > 0)
    throw std::runtime_error(
        "[load] downsample_cap is not supported with explicit test files");

  const DatasetSchema schema = stage("load", [&] { return effective_schema(src); });
  // Train and test files are loaded as one table so encoding and scaling see
  // a single consistent vocabulary; the boundary is re-drawn from row counts.
  std::size_t explicit_train_rows = 0;
  const RawTable raw = stage("load", [&] {
    std::vector<std::string> all_paths = src.paths;
    all_paths.insert(all_paths.end(), src.test_paths.begin(), src.test_paths.end());
    RawTable r = load_csv(all_paths, schema);
    for (std::size_t i = 0; i < src.paths.size(); ++i)
      explicit_train_rows += r.file_rows[i];
    return r;
  });

  DataTable table = stage("preprocess", [&] { return clean_and_encode(raw); });
  if (!explicit_test && src.downsample_cap > 0)
    table = stage("downsample",
                  [&] { return downsample(table, src.downsample_cap, src.seed); });

  SplitPair parts = stage("split", [&] {
    if (explicit_test) {
      if (explicit_train_rows == 0 || explicit_train_rows == table.rows())
        throw std::runtime_error("explicit test split left an empty side");
      std::vector<std::size_t> train_idx(explicit_train_rows);
      std::iota(train_idx.begin(), train_idx.end(), 0);
      std::vector<std::size_t> test_idx(table.rows() - explicit_train_rows);
      std::iota(test_idx.begin(), test_idx.end(), explicit_train_rows);
      return SplitPair{subset_rows(table, train_idx), subset_rows(table, test_idx)};
    }
    return split(table, src.train_fraction, src.seed);
  });
  if (hooks && hooks->on_split)
    hooks->on_split(parts.train.row_ids, parts.test.row_ids);

  const std::size_t d = table.feature_count();
  ExperimentReport report;
  report.config = config;
  report.tool_version = kVersion;
  report.columns_raw = static_cast<int>(table.columns_raw);
  report.features_before = static_cast<int>(d);
  report.class_names = table.class_names;
  report.train_rows = parts.train.rows();
  report.test_rows = parts.test.rows();

  const auto sel_start = std::chrono::steady_clock::now();
  stage("select", [&] {
    if (config.optimizer == OptimizerKind::none) {
      report.selected_mask = FeatureMask::ones(d);
      return;
    }
    FitnessStrategy strategy = config.fitness;
    strategy.classifier = config.classifier;
    MaskEvaluator evaluate(parts.train, strategy);
    if (hooks && hooks->on_fitness_rows)
      evaluate.set_row_hook(hooks->on_fitness_rows);
    const FitnessFn fn = [&](const FeatureMask& m) { return evaluate(m); };

    SearchResult result = config.optimizer == OptimizerKind::evo
                              ? run_evo(d, fn, config.evo)
                              : run_gwo(d, fn, config.gwo);
    // an all-zero winner cannot be fitted; fall back to the full set
    report.selected_mask =
        result.best_mask.popcount() > 0 ? result.best_mask : FeatureMask::ones(d);
    report.best_fitness = quantize_rate(result.best_fitness);
    report.evaluations_used = result.evaluations_used;
    report.fitness_trace = std::move(result.trace);
    for (auto& [_, v] : report.fitness_trace) v = quantize_rate(v);
  });
  report.wall_times.selection_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - sel_start)
          .count();
  report.features_after = report.selected_mask.popcount();

  const TrainedModel model = stage("train", [&] {
    return fit(config.classifier, select_features(parts.train, report.selected_mask),
               config.seed);
  });
  report.wall_times.train_seconds = model.train_seconds;

  std::vector<int> predicted = stage("test", [&] {
    auto [labels, seconds] =
        predict(model, select_features(parts.test, report.selected_mask).features);
    report.wall_times.test_seconds = seconds;
    return labels;
  });

  stage("metrics", [&] {
    report.confusion = confusion(parts.test.labels, predicted,
                                 static_cast<int>(table.class_count()));
    MetricReport m = precision_recall_f1(report.confusion);
    m.accuracy = quantize_rate(m.accuracy);
    for (auto& v : m.precision) v = quantize_rate(v);
    for (auto& v : m.recall) v = quantize_rate(v);
    for (auto& v : m.f1) v = quantize_rate(v);
    m.precision_macro = quantize_rate(m.precision_macro);
    m.recall_macro = quantize_rate(m.recall_macro);
    m.f1_macro = quantize_rate(m.f1_macro);
    m.precision_weighted = quantize_rate(m.precision_weighted);
    m.recall_weighted = quantize_rate(m.recall_weighted);
    m.f1_weighted = quantize_rate(m.f1_weighted);
    report.metrics = std::move(m);
  });

  if (!config.output_path.empty())
    stage("report", [&] { write_report(report, config.output_path); });
  return report;
}

}  // namespace evofs
