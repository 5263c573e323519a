#pragma once

// Shared generators for the test suites: synthetic tables with a known
// structure, random tables for oracle comparisons, and temp-file plumbing.

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "evofs/dataset.hpp"
#include "evofs/matrix.hpp"

namespace testutil {

// Two informative columns (0 and 1) drive the label through an XOR of
// half-space tests; remaining columns are noise. A slice of labels is flipped
// so no subset classifies perfectly and the subset landscape has texture.
inline evofs::DataTable make_synthetic_table(std::size_t n, std::size_t d,
                                             std::uint64_t seed,
                                             double label_noise = 0.05) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  evofs::DataTable t;
  t.features = evofs::Matrix(n, d);
  t.labels.resize(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < d; ++c) t.features(r, c) = uniform(rng);
    const bool a = t.features(r, 0) > 0.5;
    const bool b = t.features(r, 1) > 0.5;
    int label = (a != b) ? 1 : 0;
    if (uniform(rng) < label_noise) label = 1 - label;
    t.labels[r] = label;
  }
  for (std::size_t c = 0; c < d; ++c)
    t.feature_names.push_back("f" + std::to_string(c));
  t.class_names = {"benign", "attack"};
  t.row_ids.resize(n);
  for (std::size_t r = 0; r < n; ++r) t.row_ids[r] = static_cast<std::int64_t>(r);
  t.columns_raw = d + 1;
  return t;
}

// Random classification table for oracle cross-checks.
inline evofs::DataTable make_random_table(std::size_t n, std::size_t d,
                                          int classes, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::uniform_int_distribution<int> pick_class(0, classes - 1);
  evofs::DataTable t;
  t.features = evofs::Matrix(n, d);
  t.labels.resize(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < d; ++c) t.features(r, c) = uniform(rng);
    t.labels[r] = pick_class(rng);
  }
  // keep at least two classes present
  if (n >= 2) {
    t.labels[0] = 0;
    t.labels[1] = 1 % classes == 0 ? classes - 1 : 1;
  }
  for (std::size_t c = 0; c < d; ++c)
    t.feature_names.push_back("f" + std::to_string(c));
  for (int c = 0; c < classes; ++c) t.class_names.push_back("k" + std::to_string(c));
  t.row_ids.resize(n);
  for (std::size_t r = 0; r < n; ++r) t.row_ids[r] = static_cast<std::int64_t>(r);
  t.columns_raw = d + 1;
  return t;
}

// CSV text for a table, header "f0,...,label"; used to exercise the full
// pipeline from disk.
inline std::string table_to_csv(const evofs::DataTable& t) {
  std::ostringstream out;
  for (std::size_t c = 0; c < t.feature_count(); ++c)
    out << t.feature_names[c] << ",";
  out << "label\n";
  for (std::size_t r = 0; r < t.rows(); ++r) {
    for (std::size_t c = 0; c < t.feature_count(); ++c)
      out << t.features(r, c) << ",";
    out << t.class_names[t.labels[r]] << "\n";
  }
  return out.str();
}

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
#ifdef EVOFS_TEST_TMP
    root_ = std::filesystem::path(EVOFS_TEST_TMP) / tag;
#else
    root_ = std::filesystem::temp_directory_path() / ("evofs_" + tag);
#endif
    std::filesystem::remove_all(root_);
    std::filesystem::create_directories(root_);
  }
  std::string file(const std::string& name) const { return (root_ / name).string(); }
  const std::filesystem::path& path() const { return root_; }

 private:
  std::filesystem::path root_;
};

inline std::string write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  return path;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace testutil
