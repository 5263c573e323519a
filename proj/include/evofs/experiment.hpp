#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "evofs/classifiers.hpp"
#include "evofs/dataset.hpp"
#include "evofs/evo.hpp"
#include "evofs/fitness.hpp"
#include "evofs/gwo.hpp"
#include "evofs/metrics.hpp"

namespace evofs {

enum class OptimizerKind { none, evo, gwo };

std::string to_string(OptimizerKind kind);
OptimizerKind optimizer_kind_from(const std::string& name);

struct DataSource {
  std::string schema_name = "generic";
  std::vector<std::string> paths;
  std::vector<std::string> test_paths;  // optional explicit test files; when
                                        // set, no random split happens
  std::string label_column;             // overrides the schema when non-empty
  std::vector<std::string> drop_columns;  // extends the schema's list
  int downsample_cap = 0;               // <= 0 disables
  double train_fraction = 0.8;
  std::uint64_t seed = 42;
};

struct ExperimentConfig {
  DataSource dataset;
  OptimizerKind optimizer = OptimizerKind::none;
  EvoConfig evo;
  GwoConfig gwo;
  ClassifierSpec classifier;
  FitnessStrategy fitness;  // its classifier block is overwritten with
                            // `classifier` so the wrapper and the final fit
                            // always agree
  std::uint64_t seed = 42;  // convenience master seed echoed in the report
  std::string output_path;  // empty = do not write
};

struct WallTimes {
  double selection_seconds = 0.0;
  double train_seconds = 0.0;
  double test_seconds = 0.0;
};

// Everything a finished run reports. Real-valued result fields are quantized
// to 6 decimals on construction so the serialized form round-trips exactly;
// wall times stay raw and live outside the canonical section.
struct ExperimentReport {
  ExperimentConfig config;
  int columns_raw = 0;
  int features_before = 0;
  int features_after = 0;
  FeatureMask selected_mask;
  double best_fitness = 0.0;
  std::uint64_t evaluations_used = 0;
  std::vector<std::pair<int, double>> fitness_trace;
  std::vector<std::string> class_names;
  std::uint64_t train_rows = 0, test_rows = 0;
  ConfusionMatrix confusion;
  MetricReport metrics;
  WallTimes wall_times;
  std::string tool_version;
};

struct ExperimentHooks {
  // Fired per fitness evaluation with the source row ids the evaluation read.
  std::function<void(const std::vector<std::int64_t>&)> on_fitness_rows;
  // Source row ids of the split, for audits.
  std::function<void(const std::vector<std::int64_t>& train,
                     const std::vector<std::int64_t>& test)>
      on_split;
};

// Full pipeline: load -> clean/encode -> downsample -> split -> optional
// subset search on the train side only -> final fit -> test -> metrics.
// Failures carry their stage name, e.g. "[load] ...". Writes the report and
// its trace CSV when config.output_path is set.
ExperimentReport run_experiment(const ExperimentConfig& config,
                                const ExperimentHooks* hooks = nullptr);

}  // namespace evofs
