#include <stdexcept>
#include <algorithm>
#include <set>

#include "doctest.h"
#include "evofs/dataset.hpp"
#include "helpers.hpp"

using namespace evofs;

namespace {

RawTable load_generic(const std::string& text) {
  return load_csv_text(text, schema_for("generic"));
}

}  // namespace

TEST_CASE("generic schema separates the label column") {
  const RawTable raw = load_generic("f0,f1,label\n1,2,a\n3,4,b\n");
  CHECK(raw.rows == 2);
  CHECK(raw.columns_raw == 3);
  REQUIRE(raw.features.size() == 2);
  CHECK(raw.features[0].name == "f0");
  CHECK(raw.labels == std::vector<std::string>{"a", "b"});
}

TEST_CASE("missing label column and empty tables are rejected") {
  CHECK_THROWS_WITH_AS(load_generic("a,b\n1,2\n"),
                       doctest::Contains("label column 'label' not found"),
                       std::runtime_error);
  CHECK_THROWS(load_generic("f0,label\n"));  // header only, no rows
  CHECK_THROWS_WITH_AS(load_generic("f0,label\n1,\n"),
                       doctest::Contains("empty label"), std::runtime_error);
}

TEST_CASE("drop columns shrink the flow schema to its modeling columns") {
  // column inventory shaped like the DDoS capture: 81 features, 6 droppable
  // bookkeeping columns and the label make 88 raw columns, of which 82
  // modeling columns (81 features + held-out label) survive the drops
  std::string header;
  for (int i = 0; i < 81; ++i) header += "f" + std::to_string(i) + ",";
  header += "Unnamed: 0,Flow ID,Source IP,Destination IP,Timestamp,SimillarHTTP,Label";
  std::string row;
  for (int i = 0; i < 81; ++i) row += "1,";
  row += "0,x,1.1.1.1,2.2.2.2,ts,,Benign";
  const RawTable raw =
      load_csv_text(header + "\n" + row + "\n" + row + "\n", schema_for("cic_ddos2019"));

  CHECK(raw.columns_raw == 88);
  CHECK(raw.features.size() == 81);
  CHECK(raw.labels[0] == "Benign");
  const auto has = [&](const std::string& name) {
    return std::any_of(raw.features.begin(), raw.features.end(),
                       [&](const RawColumn& c) { return c.name == name; });
  };
  CHECK_FALSE(has("Flow ID"));
  CHECK_FALSE(has("Timestamp"));
  CHECK_FALSE(has("Label"));
}

TEST_CASE("kdd schema reads both headered and headerless layouts") {
  // headerless: 43 comma-separated fields, canonical column names kick in
  std::string row = "0,tcp,ftp_data,SF,491,0";
  for (int i = 0; i < 35; ++i) row += ",0";
  row += ",normal,20";
  const RawTable headerless =
      load_csv_text(row + "\n" + row + "\n", schema_for("nsl_kdd"));
  CHECK(headerless.columns_raw == 43);
  CHECK(headerless.features.size() == 42);  // difficulty stays, class held out
  CHECK(headerless.labels[0] == "normal");
  CHECK(headerless.features[1].name == "protocol_type");

  // headered variant with an id column, which the schema drops
  std::string header = "id,duration,protocol_type,service,flag,src_bytes,dst_bytes";
  for (int i = 0; i < 35; ++i) header += ",x" + std::to_string(i);
  header += ",class,difficulty";
  std::string hrow = "7," + row;
  const RawTable headered =
      load_csv_text(header + "\n" + hrow + "\n", schema_for("nsl_kdd"));
  CHECK(headered.columns_raw == 44);
  CHECK(headered.features.size() == 42);
}

TEST_CASE("unknown schema names are rejected") {
  CHECK_THROWS_AS(schema_for("no_such"), std::invalid_argument);
  CHECK(schema_names().size() == 4);
}

TEST_CASE("numeric columns impute infinities and gaps with the finite mean") {
  const RawTable raw = load_generic(
      "a,b,label\n1,Infinity,x\n3,4,y\nNaN,-Infinity,x\n");
  const DataTable t = clean_and_encode(raw);
  // column a: [1, 3, mean(1,3)=2] -> scaled [0, 1, 0.5]
  CHECK(t.features(0, 0) == doctest::Approx(0.0));
  CHECK(t.features(1, 0) == doctest::Approx(1.0));
  CHECK(t.features(2, 0) == doctest::Approx(0.5));
  // column b: only finite value is 4 -> constant after imputation -> all 0
  CHECK(t.features(0, 1) == 0.0);
  CHECK(t.features(1, 1) == 0.0);
  CHECK(t.features(2, 1) == 0.0);
}

TEST_CASE("a column with no finite values names itself in the error") {
  const RawTable raw = load_generic("a,b,label\nInfinity,1,x\nNaN,2,y\n");
  CHECK_THROWS_WITH_AS(clean_and_encode(raw),
                       doctest::Contains("column 'a'"), std::runtime_error);
}

TEST_CASE("categorical features and labels encode lexicographically") {
  const RawTable raw = load_generic("proto,label\nudp,attack\nicmp,normal\ntcp,attack\n");
  const DataTable t = clean_and_encode(raw);
  // distinct {icmp, tcp, udp} -> codes {0,1,2} -> scaled {0, .5, 1}
  CHECK(t.features(0, 0) == doctest::Approx(1.0));   // udp
  CHECK(t.features(1, 0) == doctest::Approx(0.0));   // icmp
  CHECK(t.features(2, 0) == doctest::Approx(0.5));   // tcp
  CHECK(t.class_names == std::vector<std::string>{"attack", "normal"});
  CHECK(t.labels == std::vector<int>{0, 1, 0});
}

TEST_CASE("encoding does not depend on row order") {
  const DataTable a =
      clean_and_encode(load_generic("p,label\nb,x\na,y\nc,z\n"));
  const DataTable b =
      clean_and_encode(load_generic("p,label\nc,z\na,y\nb,x\n"));
  CHECK(a.class_names == b.class_names);
  // same raw cell -> same encoded value regardless of position
  CHECK(a.features(1, 0) == b.features(1, 0));  // both "a"
}

TEST_CASE("every encoded feature lands in [0,1] and row ids enumerate the rows") {
  const DataTable t = clean_and_encode(
      load_generic("a,b,c,label\n-5,100,x,u\n10,100,y,v\n3,100,z,u\n"));
  for (std::size_t r = 0; r < t.rows(); ++r)
    for (std::size_t c = 0; c < t.feature_count(); ++c) {
      CHECK(t.features(r, c) >= 0.0);
      CHECK(t.features(r, c) <= 1.0);
    }
  CHECK(t.row_ids == std::vector<std::int64_t>{0, 1, 2});
}

TEST_CASE("cleaning an already clean table changes nothing") {
  const DataTable t = clean_and_encode(
      load_generic("a,b,label\n0,0.25,x\n0.5,1,y\n1,0,x\n"));
  // re-wrap as a raw table and clean again
  RawTable again;
  again.rows = t.rows();
  again.columns_raw = t.columns_raw;
  for (std::size_t c = 0; c < t.feature_count(); ++c) {
    RawColumn col;
    col.name = t.feature_names[c];
    col.numeric = true;
    for (std::size_t r = 0; r < t.rows(); ++r) col.numbers.push_back(t.features(r, c));
    again.features.push_back(col);
  }
  for (const int label : t.labels) again.labels.push_back(t.class_names[label]);
  const DataTable twice = clean_and_encode(again);
  for (std::size_t r = 0; r < t.rows(); ++r)
    for (std::size_t c = 0; c < t.feature_count(); ++c)
      CHECK(twice.features(r, c) == doctest::Approx(t.features(r, c)).epsilon(1e-12));
  CHECK(twice.labels == t.labels);
}

TEST_CASE("downsample caps every class and keeps provenance") {
  DataTable t = testutil::make_random_table(300, 3, 3, 11);
  const DataTable capped = downsample(t, 20, 5);

  std::vector<int> counts(3, 0);
  for (const int label : capped.labels) ++counts[label];
  std::vector<int> full_counts(3, 0);
  for (const int label : t.labels) ++full_counts[label];
  for (int c = 0; c < 3; ++c) CHECK(counts[c] == std::min(full_counts[c], 20));

  // class-grouped output order
  CHECK(std::is_sorted(capped.labels.begin(), capped.labels.end()));

  // row ids still point at source rows with the same label
  for (std::size_t r = 0; r < capped.rows(); ++r)
    CHECK(t.labels[capped.row_ids[r]] == capped.labels[r]);

  // reproducible draw
  const DataTable capped2 = downsample(t, 20, 5);
  CHECK(capped2.row_ids == capped.row_ids);
  // different seed draws a different subset (300 rows make a clash unlikely)
  const DataTable other = downsample(t, 20, 6);
  CHECK(other.row_ids != capped.row_ids);
}

TEST_CASE("downsample with a non-positive cap is the identity") {
  const DataTable t = testutil::make_random_table(30, 2, 2, 3);
  const DataTable same = downsample(t, 0, 1);
  CHECK(same.rows() == t.rows());
  CHECK(same.row_ids == t.row_ids);
}

TEST_CASE("split is a seeded partition") {
  const DataTable t = testutil::make_random_table(101, 4, 2, 19);
  const SplitPair parts = split(t, 0.8, 42);
  CHECK(parts.train.rows() == 80);  // floor(101 * 0.8)
  CHECK(parts.test.rows() == 21);
  CHECK(parts.train.feature_names == t.feature_names);
  CHECK(parts.train.class_names == parts.test.class_names);

  std::set<std::int64_t> seen(parts.train.row_ids.begin(), parts.train.row_ids.end());
  for (const auto id : parts.test.row_ids) {
    CHECK(seen.count(id) == 0);
    seen.insert(id);
  }
  CHECK(seen.size() == t.rows());

  const SplitPair again = split(t, 0.8, 42);
  CHECK(again.train.row_ids == parts.train.row_ids);
  const SplitPair other = split(t, 0.8, 43);
  CHECK(other.train.row_ids != parts.train.row_ids);
}

TEST_CASE("split rejects degenerate fractions and tiny tables") {
  const DataTable t = testutil::make_random_table(10, 2, 2, 1);
  CHECK_THROWS_AS(split(t, 0.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(split(t, 1.0, 1), std::invalid_argument);
  const DataTable tiny = testutil::make_random_table(2, 2, 2, 1);
  CHECK_THROWS_WITH_AS(split(tiny, 0.1, 1), doctest::Contains("empty train"),
                       std::runtime_error);
}

TEST_CASE("select_features keeps the chosen columns in order") {
  const DataTable t = testutil::make_random_table(5, 4, 2, 2);
  const DataTable sub = select_features(t, FeatureMask::from_string("1010"));
  CHECK(sub.feature_count() == 2);
  CHECK(sub.feature_names == std::vector<std::string>{"f0", "f2"});
  CHECK(sub.features(3, 1) == t.features(3, 2));
  CHECK_THROWS_AS(select_features(t, FeatureMask::from_string("10")),
                  std::invalid_argument);
}
