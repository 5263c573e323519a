#include "evofs/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include "evofs/csv.hpp"

namespace evofs {

namespace {

const char* kNslKddColumns[] = {
    "duration", "protocol_type", "service", "flag", "src_bytes", "dst_bytes",
    "land", "wrong_fragment", "urgent", "hot", "num_failed_logins", "logged_in",
    "num_compromised", "root_shell", "su_attempted", "num_root",
    "num_file_creations", "num_shells", "num_access_files", "num_outbound_cmds",
    "is_host_login", "is_guest_login", "count", "srv_count", "serror_rate",
    "srv_serror_rate", "rerror_rate", "srv_rerror_rate", "same_srv_rate",
    "diff_srv_rate", "srv_diff_host_rate", "dst_host_count",
    "dst_host_srv_count", "dst_host_same_srv_rate", "dst_host_diff_srv_rate",
    "dst_host_same_src_port_rate", "dst_host_srv_diff_host_rate",
    "dst_host_serror_rate", "dst_host_srv_serror_rate", "dst_host_rerror_rate",
    "dst_host_srv_rerror_rate", "class", "difficulty"};

bool is_missing_cell(const std::string& s) {
  return s.empty() || s == "nan" || s == "NaN" || s == "NAN" || s == "NA" ||
         s == "?";
}

// Full-string numeric parse; understands the usual infinity spellings.
bool parse_number(const std::string& s, double& out) {
  if (s == "Infinity" || s == "inf" || s == "Inf" || s == "INF") {
    out = std::numeric_limits<double>::infinity();
    return true;
  }
  if (s == "-Infinity" || s == "-inf" || s == "-Inf" || s == "-INF") {
    out = -std::numeric_limits<double>::infinity();
    return true;
  }
  const char* begin = s.c_str();
  char* end = nullptr;
  errno = 0;
  double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') return false;
  out = v;
  return true;
}

std::vector<std::string> column_names_for(const CsvGrid& grid,
                                          const DatasetSchema& schema) {
  if (!grid.header.empty()) return grid.header;
  if (!schema.column_names.empty()) {
    if (!grid.rows.empty() && grid.rows[0].size() != schema.column_names.size()) {
      std::ostringstream msg;
      msg << "dataset: schema '" << schema.name << "' expects "
          << schema.column_names.size() << " columns, file has "
          << grid.rows[0].size();
      throw std::runtime_error(msg.str());
    }
    return schema.column_names;
  }
  // headerless generic file: synthesize names
  std::vector<std::string> names;
  if (!grid.rows.empty())
    for (std::size_t c = 0; c < grid.rows[0].size(); ++c)
      names.push_back("c" + std::to_string(c));
  return names;
}

RawTable from_grid(const CsvGrid& grid, const DatasetSchema& schema) {
  const auto names = column_names_for(grid, schema);
  if (names.empty() || grid.rows.empty())
    throw std::runtime_error("dataset: no data rows");

  std::size_t label_idx = names.size();
  for (std::size_t c = 0; c < names.size(); ++c)
    if (names[c] == schema.label_column) label_idx = c;
  if (label_idx == names.size())
    throw std::runtime_error("dataset: label column '" + schema.label_column +
                             "' not found");

  std::vector<bool> keep(names.size(), true);
  keep[label_idx] = false;
  for (const auto& d : schema.drop_columns)
    for (std::size_t c = 0; c < names.size(); ++c)
      if (names[c] == d) keep[c] = false;

  RawTable out;
  out.rows = grid.rows.size();
  out.columns_raw = names.size();
  out.labels.reserve(out.rows);
  for (std::size_t r = 0; r < out.rows; ++r) {
    std::string label = trim(grid.rows[r][label_idx]);
    if (label.empty()) {
      std::ostringstream msg;
      msg << "dataset: empty label at data row " << r + 1;
      throw std::runtime_error(msg.str());
    }
    out.labels.push_back(std::move(label));
  }

  for (std::size_t c = 0; c < names.size(); ++c) {
    if (!keep[c]) continue;
    std::vector<std::string> cells(out.rows);
    for (std::size_t r = 0; r < out.rows; ++r) cells[r] = trim(grid.rows[r][c]);

    bool numeric = true;
    std::vector<double> numbers(out.rows);
    for (std::size_t r = 0; r < out.rows && numeric; ++r) {
      if (is_missing_cell(cells[r])) {
        numbers[r] = std::numeric_limits<double>::quiet_NaN();
      } else if (!parse_number(cells[r], numbers[r])) {
        numeric = false;
      }
    }

    RawColumn col;
    col.name = names[c];
    col.numeric = numeric;
    if (numeric)
      col.numbers = std::move(numbers);
    else
      col.text = std::move(cells);
    out.features.push_back(std::move(col));
  }
  if (out.features.empty())
    throw std::runtime_error("dataset: no feature columns after drops");
  return out;
}

// Looks like a raw headerless file misread as one? True when the schema's
// label column is absent from the parsed header but the schema carries
// canonical names of exactly the parsed width.
bool headerless_fallback(const CsvGrid& grid, const DatasetSchema& schema) {
  if (schema.column_names.empty() || grid.header.empty()) return false;
  if (grid.header.size() != schema.column_names.size()) return false;
  return std::find(grid.header.begin(), grid.header.end(),
                   schema.label_column) == grid.header.end();
}

CsvGrid reinterpret_headerless(const CsvGrid& grid) {
  CsvGrid out;
  out.rows.reserve(grid.rows.size() + 1);
  out.rows.push_back(grid.header);
  for (const auto& r : grid.rows) out.rows.push_back(r);
  return out;
}

}  // namespace

DatasetSchema schema_for(const std::string& name) {
  DatasetSchema s;
  s.name = name;
  if (name == "cic_ddos2019") {
    s.label_column = "Label";
    s.drop_columns = {"Unnamed: 0", "Flow ID",  "Source IP",
                      "Destination IP", "Timestamp", "SimillarHTTP"};
  } else if (name == "cse_cic_ids2018") {
    s.label_column = "Label";
    s.drop_columns = {"Timestamp"};
  } else if (name == "nsl_kdd") {
    s.label_column = "class";
    s.drop_columns = {"id"};
    s.column_names.assign(std::begin(kNslKddColumns), std::end(kNslKddColumns));
  } else if (name == "generic") {
    s.label_column = "label";
  } else {
    throw std::invalid_argument("dataset: unknown schema '" + name + "'");
  }
  return s;
}

std::vector<std::string> schema_names() {
  return {"cic_ddos2019", "cse_cic_ids2018", "nsl_kdd", "generic"};
}

RawTable load_csv_text(const std::string& text, const DatasetSchema& schema) {
  CsvGrid grid = parse_csv(text, schema.header_present);
  if (headerless_fallback(grid, schema)) grid = reinterpret_headerless(grid);
  if (grid.header.empty() && !schema.column_names.empty()) {
    CsvGrid named = std::move(grid);
    named.header = schema.column_names;
    grid = std::move(named);
  }
  RawTable out = from_grid(grid, schema);
  out.file_rows = {out.rows};
  return out;
}

RawTable load_csv(const std::vector<std::string>& paths,
                  const DatasetSchema& schema) {
  if (paths.empty()) throw std::runtime_error("dataset: no input files");
  CsvGrid all;
  std::vector<std::size_t> file_rows;
  for (const auto& path : paths) {
    CsvGrid grid = read_csv(path, schema.header_present);
    if (headerless_fallback(grid, schema)) grid = reinterpret_headerless(grid);
    if (grid.header.empty() && !schema.column_names.empty())
      grid.header = schema.column_names;
    file_rows.push_back(grid.rows.size());
    if (all.header.empty() && all.rows.empty()) {
      all = std::move(grid);
    } else {
      if (grid.header != all.header)
        throw std::runtime_error("dataset: column mismatch in " + path);
      for (auto& r : grid.rows) all.rows.push_back(std::move(r));
    }
  }
  RawTable out = from_grid(all, schema);
  out.file_rows = std::move(file_rows);
  return out;
}

DataTable clean_and_encode(const RawTable& raw) {
  if (raw.rows == 0) throw std::runtime_error("dataset: no data rows");
  if (raw.features.empty()) throw std::runtime_error("dataset: no feature columns");

  const std::size_t n = raw.rows;
  const std::size_t d = raw.features.size();
  DataTable out;
  out.features = Matrix(n, d);
  out.columns_raw = raw.columns_raw;
  for (const auto& col : raw.features) out.feature_names.push_back(col.name);

  for (std::size_t c = 0; c < d; ++c) {
    const RawColumn& col = raw.features[c];
    std::vector<double> vals(n);
    if (col.numeric) {
      double sum = 0.0;
      std::size_t finite = 0;
      for (std::size_t r = 0; r < n; ++r) {
        double v = col.numbers[r];
        vals[r] = std::isfinite(v) ? v : std::numeric_limits<double>::quiet_NaN();
        if (std::isfinite(v)) {
          sum += v;
          ++finite;
        }
      }
      if (finite == 0)
        throw std::runtime_error("dataset: column '" + col.name +
                                 "' has no finite values");
      const double mean = sum / static_cast<double>(finite);
      for (auto& v : vals)
        if (std::isnan(v)) v = mean;
    } else {
      std::map<std::string, int> codes;
      for (std::size_t r = 0; r < n; ++r) codes.emplace(col.text[r], 0);
      int next = 0;
      for (auto& [_, code] : codes) code = next++;
      for (std::size_t r = 0; r < n; ++r)
        vals[r] = static_cast<double>(codes[col.text[r]]);
    }

    const auto [lo_it, hi_it] = std::minmax_element(vals.begin(), vals.end());
    const double lo = *lo_it, hi = *hi_it;
    const double range = hi - lo;
    for (std::size_t r = 0; r < n; ++r)
      out.features(r, c) = range > 0.0 ? (vals[r] - lo) / range : 0.0;
  }

  std::map<std::string, int> classes;
  for (const auto& s : raw.labels) classes.emplace(s, 0);
  int next = 0;
  for (auto& [name, code] : classes) {
    code = next++;
    out.class_names.push_back(name);
  }
  out.labels.reserve(n);
  for (const auto& s : raw.labels) out.labels.push_back(classes[s]);

  out.row_ids.resize(n);
  std::iota(out.row_ids.begin(), out.row_ids.end(), 0);
  return out;
}

DataTable downsample(const DataTable& table, int per_class_cap,
                     std::uint64_t seed) {
  if (per_class_cap <= 0) return table;
  std::vector<std::vector<std::size_t>> by_class(table.class_count());
  for (std::size_t r = 0; r < table.rows(); ++r)
    by_class[table.labels[r]].push_back(r);

  std::mt19937_64 rng(seed);
  std::vector<std::size_t> chosen;
  for (auto& group : by_class) {
    std::shuffle(group.begin(), group.end(), rng);
    const std::size_t take =
        std::min(group.size(), static_cast<std::size_t>(per_class_cap));
    chosen.insert(chosen.end(), group.begin(), group.begin() + take);
  }
  return subset_rows(table, chosen);
}

DataTable subset_rows(const DataTable& table, const std::vector<std::size_t>& idx) {
  DataTable out;
  out.features = Matrix(idx.size(), table.feature_count());
  out.labels.reserve(idx.size());
  out.row_ids.reserve(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    const auto src = table.features.row(idx[i]);
    std::copy(src.begin(), src.end(), out.features.row(i).begin());
    out.labels.push_back(table.labels[idx[i]]);
    out.row_ids.push_back(table.row_ids[idx[i]]);
  }
  out.feature_names = table.feature_names;
  out.class_names = table.class_names;
  out.columns_raw = table.columns_raw;
  return out;
}

DataTable select_features(const DataTable& table, const FeatureMask& mask) {
  if (mask.size() != table.feature_count())
    throw std::invalid_argument("select_features: mask length mismatch");
  std::vector<std::size_t> cols;
  for (std::size_t c = 0; c < mask.size(); ++c)
    if (mask.bits[c]) cols.push_back(c);

  DataTable out;
  out.features = Matrix(table.rows(), cols.size());
  for (std::size_t r = 0; r < table.rows(); ++r)
    for (std::size_t j = 0; j < cols.size(); ++j)
      out.features(r, j) = table.features(r, cols[j]);
  out.labels = table.labels;
  out.class_names = table.class_names;
  out.row_ids = table.row_ids;
  out.columns_raw = table.columns_raw;
  for (const auto c : cols) out.feature_names.push_back(table.feature_names[c]);
  return out;
}

SplitPair split(const DataTable& table, double train_fraction,
                std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    throw std::invalid_argument("split: train_fraction must be in (0,1)");
  const std::size_t n = table.rows();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);

  const auto train_n =
      static_cast<std::size_t>(std::floor(static_cast<double>(n) * train_fraction));
  if (train_n == 0) throw std::runtime_error("split: empty train set");
  if (train_n == n) throw std::runtime_error("split: empty test set");

  std::vector<std::size_t> train_idx(order.begin(), order.begin() + train_n);
  std::vector<std::size_t> test_idx(order.begin() + train_n, order.end());
  return {subset_rows(table, train_idx), subset_rows(table, test_idx)};
}

}  // namespace evofs
