#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "evofs/mask.hpp"
#include "evofs/matrix.hpp"

namespace evofs {

// How to interpret one dataset family's CSV files.
struct DatasetSchema {
  std::string name = "generic";
  std::string label_column = "label";
  std::vector<std::string> drop_columns;       // removed when present
  bool header_present = true;
  std::vector<std::string> column_names;       // used when header_present == false
};

// Built-in schemas: cic_ddos2019, cse_cic_ids2018, nsl_kdd, generic.
// Throws std::invalid_argument for unknown names.
DatasetSchema schema_for(const std::string& name);
std::vector<std::string> schema_names();

// One column as loaded: either fully numeric (NaN marks a missing cell) or
// categorical text.
struct RawColumn {
  std::string name;
  bool numeric = false;
  std::vector<double> numbers;      // valid when numeric
  std::vector<std::string> text;    // valid when !numeric
};

// Loaded but not yet cleaned/encoded.
struct RawTable {
  std::vector<RawColumn> features;
  std::vector<std::string> labels;  // raw label strings, one per row
  std::size_t rows = 0;
  std::size_t columns_raw = 0;      // column count in the source before drops
  std::vector<std::size_t> file_rows;  // row count contributed by each input
};

// Fully numeric, encoded, min-max scaled table.
struct DataTable {
  Matrix features;                        // rows x features, each column in [0,1]
  std::vector<int> labels;                // indices into class_names
  std::vector<std::string> feature_names;
  std::vector<std::string> class_names;   // lexicographically sorted originals
  std::vector<std::int64_t> row_ids;      // provenance: source row order survives
                                          // downsampling and splitting
  std::size_t columns_raw = 0;

  std::size_t rows() const { return labels.size(); }
  std::size_t feature_count() const { return features.cols(); }
  std::size_t class_count() const { return class_names.size(); }
};

struct SplitPair {
  DataTable train;
  DataTable test;
};

// Reads one or more CSV files sharing the schema, concatenates their rows,
// applies the schema's column drops and separates the label column.
// Throws when the label column is absent, a file is empty, or files disagree
// on columns.
RawTable load_csv(const std::vector<std::string>& paths, const DatasetSchema& schema);

// As above but from in-memory text (one file), for tests and tools.
RawTable load_csv_text(const std::string& text, const DatasetSchema& schema);

// Missing/±inf numeric cells -> column mean of the finite cells; categorical
// columns and labels integer-encoded by lexicographic order of the distinct
// values; every feature column min-max scaled to [0,1] (constant -> 0).
// Throws when a numeric column has no finite cell at all.
DataTable clean_and_encode(const RawTable& raw);

// Caps every class at `per_class_cap` rows, sampled uniformly without
// replacement with `seed`. Output rows are grouped by class index; row order
// within a group is the seeded draw order. cap <= 0 returns the input as is.
DataTable downsample(const DataTable& table, int per_class_cap, std::uint64_t seed);

// Seeded shuffle of all rows, first floor(n * train_fraction) become train.
// Not stratified. Throws if either side would be empty or the fraction is
// outside (0,1).
SplitPair split(const DataTable& table, double train_fraction, std::uint64_t seed);

// Copy of the table keeping only the columns whose mask bit is set. Throws on
// a length mismatch.
DataTable select_features(const DataTable& table, const FeatureMask& mask);

// Copy of the table keeping only the given row positions, in that order.
DataTable subset_rows(const DataTable& table, const std::vector<std::size_t>& idx);

}  // namespace evofs
