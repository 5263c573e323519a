#include <stdexcept>
#include <cstdio>
#include <cstdlib>
#include <random>

#include "doctest.h"
#include "evofs/experiment.hpp"
#include "evofs/report.hpp"
#include "helpers.hpp"

using namespace evofs;

namespace {

ExperimentReport run_small(const testutil::TempDir& dir, OptimizerKind opt) {
  const DataTable t = testutil::make_synthetic_table(70, 5, 31, 0.05);
  const std::string path = dir.file("data.csv");
  testutil::write_file(path, testutil::table_to_csv(t));
  ExperimentConfig config;
  config.dataset.paths = {path};
  config.optimizer = opt;
  config.evo.n_particles = 5;
  config.evo.max_fes = 20;
  config.gwo.n_wolves = 4;
  config.gwo.n_iterations = 4;
  config.classifier = ClassifierSpec::decision_tree();
  config.fitness.folds = 3;
  return run_experiment(config);
}

// swaps the value of `key: ...` for a given replacement
std::string rewrite(const std::string& text, const std::string& key,
                    const std::string& value) {
  const std::string prefix = key + ": ";
  const auto start = text.find(prefix);
  REQUIRE(start != std::string::npos);
  const auto eol = text.find('\n', start);
  return text.substr(0, start + prefix.size()) + value + text.substr(eol);
}

std::string drop_line(const std::string& text, const std::string& key) {
  const std::string prefix = key + ": ";
  const auto start = text.find(prefix);
  REQUIRE(start != std::string::npos);
  const auto eol = text.find('\n', start);
  return text.substr(0, start) + text.substr(eol + 1);
}

}  // namespace

TEST_CASE("quantization keeps six decimals and survives text round trips") {
  CHECK(quantize_rate(0.1234567) == doctest::Approx(0.123457).epsilon(1e-12));
  CHECK(quantize_rate(-0.987654321) == doctest::Approx(-0.987654).epsilon(1e-12));
  CHECK(quantize_rate(1.0) == 1.0);
  CHECK(quantize_rate(0.0) == 0.0);

  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  for (int trial = 0; trial < 2000; ++trial) {
    const double q = quantize_rate(uniform(rng));
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", q);
    CHECK(std::strtod(buf, nullptr) == q);  // bit-exact, not approximate
  }
}

TEST_CASE("emit -> parse -> emit is the identity on the full text") {
  testutil::TempDir dir("report_roundtrip");
  for (const auto opt : {OptimizerKind::none, OptimizerKind::evo}) {
    const ExperimentReport original = run_small(dir, opt);
    const std::string text = emit_report(original);
    const ExperimentReport parsed = parse_report(text);
    CHECK(emit_report(parsed) == text);

    CHECK(parsed.selected_mask == original.selected_mask);
    CHECK(parsed.best_fitness == original.best_fitness);
    CHECK(parsed.fitness_trace == original.fitness_trace);
    CHECK(parsed.metrics.accuracy == original.metrics.accuracy);
    CHECK(parsed.confusion.counts == original.confusion.counts);
    CHECK(parsed.class_names == original.class_names);
    CHECK(parsed.config.dataset.paths == original.config.dataset.paths);
    CHECK(parsed.config.evo.seed == original.config.evo.seed);
  }
}

TEST_CASE("wall times stay out of the canonical section") {
  testutil::TempDir dir("report_canon");
  ExperimentReport report = run_small(dir, OptimizerKind::none);
  const std::string before = emit_report(report);
  report.wall_times.train_seconds += 1.5;
  const std::string after = emit_report(report);
  CHECK(before != after);
  CHECK(canonical_section(before) == canonical_section(after));
  CHECK(canonical_section(before).find("[timing]") == std::string::npos);
  CHECK(before.find("[timing]") != std::string::npos);
}

TEST_CASE("parser rejects structural damage with a pointed message") {
  testutil::TempDir dir("report_damage");
  const std::string good = emit_report(run_small(dir, OptimizerKind::none));

  CHECK_THROWS_WITH_AS(parse_report("hello\n"), doctest::Contains("signature"),
                       std::runtime_error);
  CHECK_THROWS_WITH_AS(parse_report(drop_line(good, "accuracy")),
                       doctest::Contains("missing key 'accuracy'"),
                       std::runtime_error);
  CHECK_THROWS_WITH_AS(parse_report(good + "garbage\n"),
                       doctest::Contains("malformed line"), std::runtime_error);
  CHECK_THROWS_WITH_AS(parse_report(rewrite(good, "selected_mask", "10")),
                       doctest::Contains("length"), std::runtime_error);
  CHECK_THROWS_WITH_AS(parse_report(rewrite(good, "features_after", "1")),
                       doctest::Contains("popcount"), std::runtime_error);
  CHECK_THROWS_WITH_AS(parse_report(rewrite(good, "classes", "3")),
                       doctest::Contains("class_names"), std::runtime_error);
  CHECK_THROWS_WITH_AS(parse_report(rewrite(good, "confusion_0", "1")),
                       doctest::Contains("width"), std::runtime_error);
}

TEST_CASE("reports and traces land on disk and read back whole") {
  testutil::TempDir dir("report_disk");
  const ExperimentReport report = run_small(dir, OptimizerKind::evo);
  const std::string path = dir.file("out.txt");
  write_report(report, path);

  const ExperimentReport loaded = read_report(path);
  CHECK(emit_report(loaded) == emit_report(report));

  const std::string curve = testutil::read_file(path + ".trace.csv");
  CHECK(curve.rfind("iteration,best_fitness\n", 0) == 0);
  std::size_t lines = 0;
  for (const char ch : curve)
    if (ch == '\n') ++lines;
  CHECK(lines == report.fitness_trace.size() + 1);

  CHECK_THROWS_WITH_AS(read_report(dir.file("missing.txt")),
                       doctest::Contains("cannot open"), std::runtime_error);
}

TEST_CASE("the comparison table measures gains against the plain baseline") {
  ExperimentReport baseline;
  baseline.tool_version = "0.1.0";
  baseline.config.dataset.schema_name = "cic_ddos2019";
  baseline.config.classifier = ClassifierSpec::decision_tree();
  baseline.config.optimizer = OptimizerKind::none;
  baseline.metrics.accuracy = 0.99;
  baseline.features_after = 81;

  ExperimentReport tuned = baseline;
  tuned.config.optimizer = OptimizerKind::evo;
  tuned.metrics.accuracy = 0.9913;
  tuned.features_after = 24;

  const std::string table = compare_reports({baseline, tuned});
  CHECK(table.find("# cic_ddos2019 / dtree") != std::string::npos);
  CHECK(table.find("0.1313") != std::string::npos);  // (99.13-99)/99 * 100
  CHECK(table.find("none") != std::string::npos);
  CHECK(table.find("evo") != std::string::npos);

  // two classifier groups produce two headed sections
  ExperimentReport other = baseline;
  other.config.classifier = ClassifierSpec::nearest_neighbors();
  const std::string two = compare_reports({baseline, tuned, other});
  CHECK(two.find("# cic_ddos2019 / knn") != std::string::npos);
}
