#include "evofs/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>

namespace evofs {

namespace {

std::string f6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string f9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", v);
  return buf;
}

std::string g12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (const char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string join(const std::vector<std::string>& v, char sep) {
  if (v.empty()) return "-";
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += v[i];
  }
  return out;
}

std::string opt_str(const std::string& s) { return s.empty() ? "-" : s; }

std::string classifier_params_line(const ClassifierSpec& spec) {
  std::ostringstream out;
  switch (spec.kind) {
    case ClassifierKind::dtree:
      out << "criterion=" << spec.dtree.criterion << " max_depth="
          << (spec.dtree.max_depth ? std::to_string(*spec.dtree.max_depth)
                                   : std::string("none"))
          << " min_samples_split=" << spec.dtree.min_samples_split;
      break;
    case ClassifierKind::rforest:
      out << "n_estimators=" << spec.rforest.n_estimators << " max_features="
          << (spec.rforest.max_features
                  ? std::to_string(*spec.rforest.max_features)
                  : std::string("auto"))
          << " bootstrap=" << (spec.rforest.bootstrap ? 1 : 0);
      break;
    case ClassifierKind::knn:
      out << "k=" << spec.knn.k;
      break;
    case ClassifierKind::svm_rbf:
      out << "c=" << g12(spec.svm.c) << " gamma="
          << (spec.svm.gamma ? g12(*spec.svm.gamma) : std::string("auto"))
          << " max_passes=" << spec.svm.max_passes
          << " tolerance=" << g12(spec.svm.tolerance);
      break;
  }
  return out.str();
}

void parse_classifier_params(const std::string& line, ClassifierSpec& spec) {
  std::map<std::string, std::string> kv;
  for (const auto& tok : split_on(line, ' ')) {
    if (tok.empty()) continue;
    const auto eq = tok.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("report: bad classifier_params token '" + tok + "'");
    kv[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  auto want = [&](const char* key) {
    const auto it = kv.find(key);
    if (it == kv.end())
      throw std::runtime_error(std::string("report: classifier_params missing ") + key);
    return it->second;
  };
  switch (spec.kind) {
    case ClassifierKind::dtree: {
      spec.dtree.criterion = want("criterion");
      const std::string depth = want("max_depth");
      if (depth == "none")
        spec.dtree.max_depth.reset();
      else
        spec.dtree.max_depth = std::stoi(depth);
      spec.dtree.min_samples_split = std::stoi(want("min_samples_split"));
      break;
    }
    case ClassifierKind::rforest: {
      spec.rforest.n_estimators = std::stoi(want("n_estimators"));
      const std::string mf = want("max_features");
      if (mf == "auto")
        spec.rforest.max_features.reset();
      else
        spec.rforest.max_features = std::stoi(mf);
      spec.rforest.bootstrap = want("bootstrap") == "1";
      break;
    }
    case ClassifierKind::knn:
      spec.knn.k = std::stoi(want("k"));
      break;
    case ClassifierKind::svm_rbf: {
      spec.svm.c = std::stod(want("c"));
      const std::string gamma = want("gamma");
      if (gamma == "auto")
        spec.svm.gamma.reset();
      else
        spec.svm.gamma = std::stod(gamma);
      spec.svm.max_passes = std::stoi(want("max_passes"));
      spec.svm.tolerance = std::stod(want("tolerance"));
      break;
    }
  }
}

std::string trace_line(const std::vector<std::pair<int, double>>& trace) {
  if (trace.empty()) return "-";
  std::string out;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (i) out += ';';
    out += std::to_string(trace[i].first) + ':' + f6(trace[i].second);
  }
  return out;
}

template <typename T>
std::string num_list(const std::vector<T>& v) {
  if (v.empty()) return "-";
  std::ostringstream out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out << ',';
    if constexpr (std::is_floating_point_v<T>)
      out << f6(v[i]);
    else
      out << v[i];
  }
  return out.str();
}

}  // namespace

double quantize_rate(double v) { return std::round(v * 1e6) / 1e6; }

std::string emit_report(const ExperimentReport& r) {
  const ExperimentConfig& c = r.config;
  std::ostringstream out;
  out << "evofs report v1\n";
  out << "[experiment]\n";
  out << "tool_version: " << r.tool_version << "\n";
  out << "seed: " << c.seed << "\n";
  out << "schema: " << c.dataset.schema_name << "\n";
  out << "data: " << join(c.dataset.paths, ';') << "\n";
  out << "test_data: " << join(c.dataset.test_paths, ';') << "\n";
  out << "label_column: " << opt_str(c.dataset.label_column) << "\n";
  out << "extra_drop_columns: " << join(c.dataset.drop_columns, ';') << "\n";
  out << "downsample_cap: " << c.dataset.downsample_cap << "\n";
  out << "train_fraction: " << f6(c.dataset.train_fraction) << "\n";
  out << "dataset_seed: " << c.dataset.seed << "\n";
  out << "optimizer: " << to_string(c.optimizer) << "\n";
  out << "evo_particles: " << c.evo.n_particles << "\n";
  out << "evo_max_fes: " << c.evo.max_fes << "\n";
  out << "evo_seed: " << c.evo.seed << "\n";
  out << "evo_binarization: " << to_string(c.evo.binarization) << "\n";
  out << "gwo_wolves: " << c.gwo.n_wolves << "\n";
  out << "gwo_iterations: " << c.gwo.n_iterations << "\n";
  out << "gwo_seed: " << c.gwo.seed << "\n";
  out << "gwo_binarization: " << to_string(c.gwo.binarization) << "\n";
  out << "classifier: " << to_string(c.classifier.kind) << "\n";
  out << "classifier_params: " << classifier_params_line(c.classifier) << "\n";
  out << "fitness_mode: "
      << (c.fitness.mode == FitnessMode::kfold_cv ? "kfold_cv" : "holdout") << "\n";
  out << "fitness_folds: " << c.fitness.folds << "\n";
  out << "fitness_validation_fraction: " << f6(c.fitness.validation_fraction)
      << "\n";
  out << "fitness_seed: " << c.fitness.seed << "\n";
  out << "[data]\n";
  out << "columns_raw: " << r.columns_raw << "\n";
  out << "features_before: " << r.features_before << "\n";
  out << "features_after: " << r.features_after << "\n";
  out << "classes: " << r.class_names.size() << "\n";
  out << "class_names: " << join(r.class_names, ';') << "\n";
  out << "train_rows: " << r.train_rows << "\n";
  out << "test_rows: " << r.test_rows << "\n";
  out << "[selection]\n";
  out << "selected_mask: " << r.selected_mask.to_string() << "\n";
  out << "best_fitness: " << f6(r.best_fitness) << "\n";
  out << "evaluations_used: " << r.evaluations_used << "\n";
  out << "trace: " << trace_line(r.fitness_trace) << "\n";
  out << "[metrics]\n";
  out << "accuracy: " << f6(r.metrics.accuracy) << "\n";
  out << "precision_macro: " << f6(r.metrics.precision_macro) << "\n";
  out << "recall_macro: " << f6(r.metrics.recall_macro) << "\n";
  out << "f1_macro: " << f6(r.metrics.f1_macro) << "\n";
  out << "precision_weighted: " << f6(r.metrics.precision_weighted) << "\n";
  out << "recall_weighted: " << f6(r.metrics.recall_weighted) << "\n";
  out << "f1_weighted: " << f6(r.metrics.f1_weighted) << "\n";
  out << "per_class_precision: " << num_list(r.metrics.precision) << "\n";
  out << "per_class_recall: " << num_list(r.metrics.recall) << "\n";
  out << "per_class_f1: " << num_list(r.metrics.f1) << "\n";
  out << "support: " << num_list(r.metrics.support) << "\n";
  out << "confusion_classes: " << r.confusion.classes << "\n";
  for (int a = 0; a < r.confusion.classes; ++a) {
    out << "confusion_" << a << ": ";
    for (int p = 0; p < r.confusion.classes; ++p) {
      if (p) out << ',';
      out << r.confusion.at(a, p);
    }
    out << "\n";
  }
  out << "[timing]\n";
  out << "selection_seconds: " << f9(r.wall_times.selection_seconds) << "\n";
  out << "train_seconds: " << f9(r.wall_times.train_seconds) << "\n";
  out << "test_seconds: " << f9(r.wall_times.test_seconds) << "\n";
  return out.str();
}

std::string canonical_section(const std::string& report_text) {
  const auto pos = report_text.find("\n[timing]");
  if (pos == std::string::npos) return report_text;
  return report_text.substr(0, pos + 1);
}

namespace {

class LineReader {
 public:
  explicit LineReader(const std::string& text) : lines_(split_on(text, '\n')) {}

  // key -> value map, section headers skipped
  std::map<std::string, std::string> all_pairs() const {
    std::map<std::string, std::string> kv;
    for (const auto& line : lines_) {
      if (line.empty() || line[0] == '[') continue;
      const auto sep = line.find(": ");
      if (sep == std::string::npos) {
        if (line == "evofs report v1") continue;
        throw std::runtime_error("report: malformed line '" + line + "'");
      }
      kv[line.substr(0, sep)] = line.substr(sep + 2);
    }
    return kv;
  }

 private:
  std::vector<std::string> lines_;
};

std::vector<std::string> parse_list(const std::string& v, char sep) {
  if (v == "-") return {};
  return split_on(v, sep);
}

std::vector<double> parse_doubles(const std::string& v) {
  std::vector<double> out;
  if (v == "-") return out;
  for (const auto& tok : split_on(v, ',')) out.push_back(std::stod(tok));
  return out;
}

std::vector<std::uint64_t> parse_u64s(const std::string& v) {
  std::vector<std::uint64_t> out;
  if (v == "-") return out;
  for (const auto& tok : split_on(v, ',')) out.push_back(std::stoull(tok));
  return out;
}

}  // namespace

ExperimentReport parse_report(const std::string& text) {
  if (text.rfind("evofs report v1", 0) != 0)
    throw std::runtime_error("report: missing 'evofs report v1' signature");
  const auto kv = LineReader(text).all_pairs();
  auto want = [&](const std::string& key) -> const std::string& {
    const auto it = kv.find(key);
    if (it == kv.end())
      throw std::runtime_error("report: missing key '" + key + "'");
    return it->second;
  };

  ExperimentReport r;
  ExperimentConfig& c = r.config;
  r.tool_version = want("tool_version");
  c.seed = std::stoull(want("seed"));
  c.dataset.schema_name = want("schema");
  c.dataset.paths = parse_list(want("data"), ';');
  c.dataset.test_paths = parse_list(want("test_data"), ';');
  const std::string label = want("label_column");
  c.dataset.label_column = label == "-" ? "" : label;
  c.dataset.drop_columns = parse_list(want("extra_drop_columns"), ';');
  c.dataset.downsample_cap = std::stoi(want("downsample_cap"));
  c.dataset.train_fraction = std::stod(want("train_fraction"));
  c.dataset.seed = std::stoull(want("dataset_seed"));
  c.optimizer = optimizer_kind_from(want("optimizer"));
  c.evo.n_particles = std::stoi(want("evo_particles"));
  c.evo.max_fes = std::stoi(want("evo_max_fes"));
  c.evo.seed = std::stoull(want("evo_seed"));
  c.evo.binarization = binarization_from(want("evo_binarization"));
  c.gwo.n_wolves = std::stoi(want("gwo_wolves"));
  c.gwo.n_iterations = std::stoi(want("gwo_iterations"));
  c.gwo.seed = std::stoull(want("gwo_seed"));
  c.gwo.binarization = binarization_from(want("gwo_binarization"));
  c.classifier.kind = classifier_kind_from(want("classifier"));
  parse_classifier_params(want("classifier_params"), c.classifier);
  c.fitness.mode = want("fitness_mode") == "holdout" ? FitnessMode::holdout
                                                     : FitnessMode::kfold_cv;
  c.fitness.folds = std::stoi(want("fitness_folds"));
  c.fitness.validation_fraction = std::stod(want("fitness_validation_fraction"));
  c.fitness.seed = std::stoull(want("fitness_seed"));
  c.fitness.classifier = c.classifier;

  r.columns_raw = std::stoi(want("columns_raw"));
  r.features_before = std::stoi(want("features_before"));
  r.features_after = std::stoi(want("features_after"));
  r.class_names = parse_list(want("class_names"), ';');
  if (r.class_names.size() != std::stoul(want("classes")))
    throw std::runtime_error("report: classes/class_names disagree");
  r.train_rows = std::stoull(want("train_rows"));
  r.test_rows = std::stoull(want("test_rows"));

  r.selected_mask = FeatureMask::from_string(want("selected_mask"));
  if (static_cast<int>(r.selected_mask.size()) != r.features_before)
    throw std::runtime_error("report: selected_mask length != features_before");
  if (r.selected_mask.popcount() != r.features_after)
    throw std::runtime_error("report: selected_mask popcount != features_after");
  r.best_fitness = std::stod(want("best_fitness"));
  r.evaluations_used = std::stoull(want("evaluations_used"));
  const std::string trace = want("trace");
  if (trace != "-") {
    for (const auto& tok : split_on(trace, ';')) {
      const auto colon = tok.find(':');
      if (colon == std::string::npos)
        throw std::runtime_error("report: bad trace token '" + tok + "'");
      r.fitness_trace.emplace_back(std::stoi(tok.substr(0, colon)),
                                   std::stod(tok.substr(colon + 1)));
    }
  }

  r.metrics.accuracy = std::stod(want("accuracy"));
  r.metrics.precision_macro = std::stod(want("precision_macro"));
  r.metrics.recall_macro = std::stod(want("recall_macro"));
  r.metrics.f1_macro = std::stod(want("f1_macro"));
  r.metrics.precision_weighted = std::stod(want("precision_weighted"));
  r.metrics.recall_weighted = std::stod(want("recall_weighted"));
  r.metrics.f1_weighted = std::stod(want("f1_weighted"));
  r.metrics.precision = parse_doubles(want("per_class_precision"));
  r.metrics.recall = parse_doubles(want("per_class_recall"));
  r.metrics.f1 = parse_doubles(want("per_class_f1"));
  r.metrics.support = parse_u64s(want("support"));

  r.confusion.classes = std::stoi(want("confusion_classes"));
  r.confusion.counts.assign(
      static_cast<std::size_t>(r.confusion.classes) * r.confusion.classes, 0);
  for (int a = 0; a < r.confusion.classes; ++a) {
    const auto row = parse_u64s(want("confusion_" + std::to_string(a)));
    if (static_cast<int>(row.size()) != r.confusion.classes)
      throw std::runtime_error("report: confusion row width mismatch");
    for (int p = 0; p < r.confusion.classes; ++p) r.confusion.at(a, p) = row[p];
  }

  r.wall_times.selection_seconds = std::stod(want("selection_seconds"));
  r.wall_times.train_seconds = std::stod(want("train_seconds"));
  r.wall_times.test_seconds = std::stod(want("test_seconds"));
  return r;
}

ExperimentReport read_report(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("report: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_report(buf.str());
}

void write_report(const ExperimentReport& report, const std::string& path) {
  const std::filesystem::path parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(parent, ec);  // failure surfaces below
  }
  {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("report: cannot write " + path);
    out << emit_report(report);
  }
  std::ofstream curve(path + ".trace.csv", std::ios::binary);
  if (!curve) throw std::runtime_error("report: cannot write " + path + ".trace.csv");
  curve << trace_csv(report);
}

std::string trace_csv(const ExperimentReport& report) {
  std::ostringstream out;
  out << "iteration,best_fitness\n";
  for (const auto& [it, v] : report.fitness_trace) out << it << ',' << f6(v) << "\n";
  return out.str();
}

std::string compare_reports(const std::vector<ExperimentReport>& reports) {
  std::vector<std::string> group_order;
  std::map<std::string, std::vector<const ExperimentReport*>> groups;
  for (const auto& r : reports) {
    const std::string key =
        r.config.dataset.schema_name + " / " + to_string(r.config.classifier.kind);
    if (!groups.count(key)) group_order.push_back(key);
    groups[key].push_back(&r);
  }

  std::ostringstream out;
  for (const auto& key : group_order) {
    out << "# " << key << "\n";
    const auto& group = groups[key];
    const ExperimentReport* baseline = nullptr;
    for (const auto* r : group)
      if (r->config.optimizer == OptimizerKind::none) {
        baseline = r;
        break;
      }
    out << std::left << std::setw(10) << "run" << std::right << std::setw(10)
        << "features" << std::setw(12) << "accuracy%" << std::setw(12)
        << "precision%" << std::setw(12) << "recall%" << std::setw(12) << "f1%"
        << std::setw(14) << "improvement%" << std::setw(10) << "select_s"
        << std::setw(10) << "train_s" << std::setw(10) << "test_s" << "\n";
    for (const auto* r : group) {
      char acc[32], prec[32], rec[32], f1[32];
      std::snprintf(acc, sizeof acc, "%.4f", r->metrics.accuracy * 100.0);
      std::snprintf(prec, sizeof prec, "%.4f", r->metrics.precision_macro * 100.0);
      std::snprintf(rec, sizeof rec, "%.4f", r->metrics.recall_macro * 100.0);
      std::snprintf(f1, sizeof f1, "%.4f", r->metrics.f1_macro * 100.0);
      std::string improvement = "-";
      if (baseline && r != baseline && baseline->metrics.accuracy != 0.0) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.4f",
                      relative_improvement(r->metrics.accuracy * 100.0,
                                           baseline->metrics.accuracy * 100.0));
        improvement = buf;
      }
      char sel[32], tr[32], te[32];
      std::snprintf(sel, sizeof sel, "%.3f", r->wall_times.selection_seconds);
      std::snprintf(tr, sizeof tr, "%.3f", r->wall_times.train_seconds);
      std::snprintf(te, sizeof te, "%.3f", r->wall_times.test_seconds);
      out << std::left << std::setw(10) << to_string(r->config.optimizer)
          << std::right << std::setw(10) << r->features_after << std::setw(12)
          << acc << std::setw(12) << prec << std::setw(12) << rec
          << std::setw(12) << f1 << std::setw(14) << improvement << std::setw(10)
          << sel << std::setw(10) << tr << std::setw(10) << te << "\n";
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace evofs
