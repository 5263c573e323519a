#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "evofs/experiment.hpp"
#include "evofs/report.hpp"
#include "evofs/version.hpp"
#include "json.hpp"

namespace {

using nlohmann::json;

// Allows "$EVOFS_DATA_ROOT/..." (or ${EVOFS_DATA_ROOT}) inside config paths.
std::string expand_path(std::string path) {
  static const std::string plain = "$EVOFS_DATA_ROOT";
  static const std::string braced = "${EVOFS_DATA_ROOT}";
  const char* root = std::getenv("EVOFS_DATA_ROOT");
  const std::string value = root ? root : ".";
  for (const auto& pattern : {braced, plain}) {
    const auto pos = path.find(pattern);
    if (pos != std::string::npos)
      path = path.substr(0, pos) + value + path.substr(pos + pattern.size());
  }
  return path;
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  json j;
  in >> j;
  return j;
}

void dataset_from_json(const json& j, evofs::DataSource& out) {
  if (j.contains("schema")) out.schema_name = j["schema"].get<std::string>();
  if (j.contains("paths"))
    for (const auto& p : j["paths"]) out.paths.push_back(expand_path(p.get<std::string>()));
  if (j.contains("test_paths"))
    for (const auto& p : j["test_paths"])
      out.test_paths.push_back(expand_path(p.get<std::string>()));
  if (j.contains("label_column")) out.label_column = j["label_column"].get<std::string>();
  if (j.contains("drop_columns"))
    for (const auto& d : j["drop_columns"])
      out.drop_columns.push_back(d.get<std::string>());
  if (j.contains("downsample_cap")) out.downsample_cap = j["downsample_cap"].get<int>();
  if (j.contains("train_fraction")) out.train_fraction = j["train_fraction"].get<double>();
  if (j.contains("seed")) out.seed = j["seed"].get<std::uint64_t>();
}

void evo_from_json(const json& j, evofs::EvoConfig& out) {
  if (j.contains("particles")) out.n_particles = j["particles"].get<int>();
  if (j.contains("max_fes")) out.max_fes = j["max_fes"].get<int>();
  if (j.contains("seed")) out.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("binarization"))
    out.binarization = evofs::binarization_from(j["binarization"].get<std::string>());
}

void gwo_from_json(const json& j, evofs::GwoConfig& out) {
  if (j.contains("wolves")) out.n_wolves = j["wolves"].get<int>();
  if (j.contains("iterations")) out.n_iterations = j["iterations"].get<int>();
  if (j.contains("seed")) out.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("binarization"))
    out.binarization = evofs::binarization_from(j["binarization"].get<std::string>());
}

void classifier_from_json(const json& j, evofs::ClassifierSpec& out) {
  if (j.contains("kind")) out.kind = evofs::classifier_kind_from(j["kind"].get<std::string>());
  if (j.contains("criterion")) out.dtree.criterion = j["criterion"].get<std::string>();
  if (j.contains("max_depth") && !j["max_depth"].is_null())
    out.dtree.max_depth = j["max_depth"].get<int>();
  if (j.contains("min_samples_split"))
    out.dtree.min_samples_split = j["min_samples_split"].get<int>();
  if (j.contains("n_estimators")) out.rforest.n_estimators = j["n_estimators"].get<int>();
  if (j.contains("max_features") && !j["max_features"].is_null())
    out.rforest.max_features = j["max_features"].get<int>();
  if (j.contains("bootstrap")) out.rforest.bootstrap = j["bootstrap"].get<bool>();
  if (j.contains("k")) out.knn.k = j["k"].get<int>();
  if (j.contains("c")) out.svm.c = j["c"].get<double>();
  if (j.contains("gamma") && !j["gamma"].is_null())
    out.svm.gamma = j["gamma"].get<double>();
  if (j.contains("max_passes")) out.svm.max_passes = j["max_passes"].get<int>();
  if (j.contains("tolerance")) out.svm.tolerance = j["tolerance"].get<double>();
}

void fitness_from_json(const json& j, evofs::FitnessStrategy& out) {
  if (j.contains("mode"))
    out.mode = j["mode"].get<std::string>() == "holdout"
                   ? evofs::FitnessMode::holdout
                   : evofs::FitnessMode::kfold_cv;
  if (j.contains("folds")) out.folds = j["folds"].get<int>();
  if (j.contains("validation_fraction"))
    out.validation_fraction = j["validation_fraction"].get<double>();
  if (j.contains("seed")) out.seed = j["seed"].get<std::uint64_t>();
}

void apply_master_seed(evofs::ExperimentConfig& config, std::uint64_t seed) {
  config.seed = seed;
  config.dataset.seed = seed;
  config.fitness.seed = seed;
  config.evo.seed = seed;
  config.gwo.seed = seed;
}

evofs::ExperimentConfig config_from_json(const json& j) {
  evofs::ExperimentConfig config;
  if (j.contains("seed")) apply_master_seed(config, j["seed"].get<std::uint64_t>());
  if (j.contains("dataset")) dataset_from_json(j["dataset"], config.dataset);
  if (j.contains("optimizer"))
    config.optimizer = evofs::optimizer_kind_from(j["optimizer"].get<std::string>());
  if (j.contains("evo")) evo_from_json(j["evo"], config.evo);
  if (j.contains("gwo")) gwo_from_json(j["gwo"], config.gwo);
  if (j.contains("classifier")) classifier_from_json(j["classifier"], config.classifier);
  if (j.contains("fitness")) fitness_from_json(j["fitness"], config.fitness);
  if (j.contains("out")) config.output_path = j["out"].get<std::string>();
  return config;
}

void print_summary(const evofs::ExperimentReport& r) {
  std::cout << "dataset=" << r.config.dataset.schema_name
            << " optimizer=" << evofs::to_string(r.config.optimizer)
            << " classifier=" << evofs::to_string(r.config.classifier.kind)
            << " features=" << r.features_after << "/" << r.features_before
            << " accuracy=" << r.metrics.accuracy
            << " f1_macro=" << r.metrics.f1_macro << "\n";
  if (!r.config.output_path.empty())
    std::cout << "report written to " << r.config.output_path << "\n";
}

int run_matrix(const std::string& config_path) {
  const json j = load_json(config_path);
  const std::string output_dir =
      j.value("output_dir", std::string("reports"));
  std::filesystem::create_directories(output_dir);

  std::vector<std::string> classifiers =
      j.value("classifiers", std::vector<std::string>{"dtree", "rforest", "knn", "svm"});
  std::vector<std::string> optimizers =
      j.value("optimizers", std::vector<std::string>{"none", "evo", "gwo"});

  auto excluded = [&](const std::string& dataset, const std::string& optimizer,
                      const std::string& classifier) {
    if (!j.contains("exclude")) return false;
    for (const auto& e : j["exclude"]) {
      const bool dataset_ok =
          !e.contains("dataset") || e["dataset"].get<std::string>() == dataset;
      const bool optimizer_ok =
          !e.contains("optimizer") || e["optimizer"].get<std::string>() == optimizer;
      const bool classifier_ok =
          !e.contains("classifier") || e["classifier"].get<std::string>() == classifier;
      if (dataset_ok && optimizer_ok && classifier_ok) return true;
    }
    return false;
  };

  if (!j.contains("datasets") || j["datasets"].empty())
    throw std::runtime_error("config: matrix needs a non-empty 'datasets' array");

  // count first so progress lines can show x/y
  int total = 0;
  for (const auto& dj : j["datasets"]) {
    const std::string name = dj.value("name", dj.value("schema", std::string("generic")));
    for (const auto& cls : classifiers)
      for (const auto& opt : optimizers)
        if (!excluded(name, opt, cls)) ++total;
  }

  std::vector<evofs::ExperimentReport> reports;
  int done = 0;
  for (const auto& dj : j["datasets"]) {
    const std::string name = dj.value("name", dj.value("schema", std::string("generic")));
    for (const auto& cls : classifiers) {
      for (const auto& opt : optimizers) {
        if (excluded(name, opt, cls)) continue;
        evofs::ExperimentConfig config;
        if (j.contains("seed")) apply_master_seed(config, j["seed"].get<std::uint64_t>());
        if (j.contains("fitness")) fitness_from_json(j["fitness"], config.fitness);
        if (j.contains("evo")) evo_from_json(j["evo"], config.evo);
        if (j.contains("gwo")) gwo_from_json(j["gwo"], config.gwo);
        dataset_from_json(dj, config.dataset);
        if (dj.contains("evo")) evo_from_json(dj["evo"], config.evo);
        if (dj.contains("gwo")) gwo_from_json(dj["gwo"], config.gwo);
        config.optimizer = evofs::optimizer_kind_from(opt);
        config.classifier.kind = evofs::classifier_kind_from(cls);
        if (dj.contains("classifier_params"))
          classifier_from_json(dj["classifier_params"], config.classifier);
        config.classifier.kind = evofs::classifier_kind_from(cls);
        config.output_path =
            output_dir + "/" + name + "_" + cls + "_" + opt + ".txt";

        ++done;
        std::cout << "[" << done << "/" << total << "] " << name << " " << cls
                  << " " << opt << " ..." << std::flush;
        const evofs::ExperimentReport report = evofs::run_experiment(config);
        std::cout << " accuracy=" << report.metrics.accuracy
                  << " features=" << report.features_after << "/"
                  << report.features_before << "\n";
        reports.push_back(report);
      }
    }
  }

  const std::string table = evofs::compare_reports(reports);
  std::ofstream summary(output_dir + "/summary.txt");
  summary << table;
  std::cout << "\n" << table;
  std::cout << "summary written to " << output_dir << "/summary.txt\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wrapper feature selection for intrusion detection datasets"};
  app.set_version_flag("--version", evofs::kVersion);
  app.require_subcommand(1);

  // ---- run -----------------------------------------------------------------
  auto* run = app.add_subcommand("run", "run one experiment");
  std::string config_path, dataset = "generic", label_column;
  std::vector<std::string> data_paths, test_paths, drop_columns;
  std::string optimizer = "none", classifier = "dtree", out_path = "report.txt";
  std::string binarization = "bernoulli";
  std::uint64_t seed = 42;
  int max_fes = 100, particles = 40, wolves = 20, iterations = 20;
  int folds = 5, downsample_cap = 0, knn_k = 5, trees = 100;
  double train_fraction = 0.8, validation_fraction = 0.2, svm_c = 1.0;
  bool holdout = false;

  run->add_option("--config", config_path, "JSON experiment config; other flags override it");
  run->add_option("--dataset", dataset, "schema: cic_ddos2019|cse_cic_ids2018|nsl_kdd|generic");
  run->add_option("--data", data_paths, "input CSV path (repeatable)");
  run->add_option("--test-data", test_paths, "explicit test CSV; disables the random split");
  run->add_option("--label", label_column, "label column for generic schemas");
  run->add_option("--drop", drop_columns, "extra column to drop (repeatable)");
  run->add_option("--optimizer", optimizer, "none|evo|gwo")
      ->check(CLI::IsMember({"none", "evo", "gwo"}));
  run->add_option("--classifier", classifier, "dtree|rforest|knn|svm")
      ->check(CLI::IsMember({"dtree", "rforest", "knn", "svm"}));
  run->add_option("--seed", seed, "master seed for split/fitness/search");
  run->add_option("--max-fes", max_fes, "evo evaluation budget");
  run->add_option("--particles", particles, "evo population size");
  run->add_option("--wolves", wolves, "gwo pack size");
  run->add_option("--iterations", iterations, "gwo iteration count");
  run->add_option("--folds", folds, "cross-validation folds for the fitness");
  run->add_flag("--holdout", holdout, "use a holdout validation fitness instead of k-fold");
  run->add_option("--validation-fraction", validation_fraction,
                  "holdout validation share");
  run->add_option("--downsample", downsample_cap, "per-class row cap, 0 = off");
  run->add_option("--train-fraction", train_fraction, "train share of the split");
  run->add_option("--binarization", binarization, "bernoulli|threshold_half")
      ->check(CLI::IsMember({"bernoulli", "threshold_half"}));
  run->add_option("--knn-k", knn_k, "neighbors for knn");
  run->add_option("--trees", trees, "trees for rforest");
  run->add_option("--svm-c", svm_c, "svm penalty");
  run->add_option("--out", out_path, "report output path");

  // ---- matrix --------------------------------------------------------------
  auto* matrix = app.add_subcommand("matrix", "run a dataset x classifier x optimizer grid");
  std::string matrix_config;
  matrix->add_option("--config", matrix_config, "JSON matrix config")->required();

  // ---- compare -------------------------------------------------------------
  auto* compare = app.add_subcommand("compare", "tabulate reports against their baseline");
  std::vector<std::string> report_paths;
  compare->add_option("reports", report_paths, "report files")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      evofs::ExperimentConfig config;
      if (!config_path.empty()) config = config_from_json(load_json(config_path));

      if (run->count("--seed") || config_path.empty())
        apply_master_seed(config, seed);
      auto override_if = [&](const char* flag, auto apply) {
        if (run->count(flag) || config_path.empty()) apply();
      };
      override_if("--dataset", [&] { config.dataset.schema_name = dataset; });
      if (!data_paths.empty()) {
        config.dataset.paths.clear();
        for (const auto& p : data_paths)
          config.dataset.paths.push_back(expand_path(p));
      }
      if (!test_paths.empty()) {
        config.dataset.test_paths.clear();
        for (const auto& p : test_paths)
          config.dataset.test_paths.push_back(expand_path(p));
      }
      override_if("--label", [&] { config.dataset.label_column = label_column; });
      if (!drop_columns.empty()) config.dataset.drop_columns = drop_columns;
      override_if("--downsample", [&] { config.dataset.downsample_cap = downsample_cap; });
      override_if("--train-fraction", [&] { config.dataset.train_fraction = train_fraction; });
      override_if("--optimizer", [&] { config.optimizer = evofs::optimizer_kind_from(optimizer); });
      override_if("--classifier", [&] {
        config.classifier.kind = evofs::classifier_kind_from(classifier);
      });
      override_if("--max-fes", [&] { config.evo.max_fes = max_fes; });
      override_if("--particles", [&] { config.evo.n_particles = particles; });
      override_if("--wolves", [&] { config.gwo.n_wolves = wolves; });
      override_if("--iterations", [&] { config.gwo.n_iterations = iterations; });
      override_if("--binarization", [&] {
        config.evo.binarization = evofs::binarization_from(binarization);
        config.gwo.binarization = config.evo.binarization;
      });
      override_if("--folds", [&] { config.fitness.folds = folds; });
      if (holdout) config.fitness.mode = evofs::FitnessMode::holdout;
      override_if("--validation-fraction",
                  [&] { config.fitness.validation_fraction = validation_fraction; });
      override_if("--knn-k", [&] { config.classifier.knn.k = knn_k; });
      override_if("--trees", [&] { config.classifier.rforest.n_estimators = trees; });
      override_if("--svm-c", [&] { config.classifier.svm.c = svm_c; });
      override_if("--out", [&] { config.output_path = out_path; });

      if (config.dataset.paths.empty())
        throw std::runtime_error("run: no input data (--data or config paths)");
      const evofs::ExperimentReport report = evofs::run_experiment(config);
      print_summary(report);
      return 0;
    }
    if (matrix->parsed()) return run_matrix(matrix_config);
    if (compare->parsed()) {
      std::vector<evofs::ExperimentReport> reports;
      for (const auto& p : report_paths) reports.push_back(evofs::read_report(p));
      std::cout << evofs::compare_reports(reports);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
