#include "evofs/fitness.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace evofs {

int FeatureMask::popcount() const {
  int n = 0;
  for (const auto b : bits) n += b ? 1 : 0;
  return n;
}

std::string FeatureMask::to_string() const {
  std::string s(bits.size(), '0');
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) s[i] = '1';
  return s;
}

FeatureMask FeatureMask::ones(std::size_t n) {
  return {std::vector<std::uint8_t>(n, 1)};
}

FeatureMask FeatureMask::from_string(const std::string& s) {
  FeatureMask m;
  m.bits.reserve(s.size());
  for (const char c : s) {
    if (c != '0' && c != '1')
      throw std::invalid_argument("mask: expected only 0/1 characters");
    m.bits.push_back(c == '1' ? 1 : 0);
  }
  return m;
}

int hamming_distance(const FeatureMask& a, const FeatureMask& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("hamming_distance: length mismatch");
  int n = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if ((a.bits[i] != 0) != (b.bits[i] != 0)) ++n;
  return n;
}

namespace {

Matrix rows_matrix(const DataTable& table, const std::vector<std::size_t>& idx) {
  Matrix out(idx.size(), table.feature_count());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    const auto src = table.features.row(idx[i]);
    std::copy(src.begin(), src.end(), out.row(i).begin());
  }
  return out;
}

}  // namespace

MaskEvaluator::MaskEvaluator(DataTable table, FitnessStrategy strategy)
    : table_(std::move(table)), strategy_(std::move(strategy)) {
  if (table_.rows() == 0)
    throw std::invalid_argument("fitness: empty table");
  if (strategy_.mode == FitnessMode::kfold_cv && strategy_.folds < 2)
    throw std::invalid_argument("fitness: folds must be >= 2");
  if (strategy_.mode == FitnessMode::holdout &&
      !(strategy_.validation_fraction > 0.0 && strategy_.validation_fraction < 1.0))
    throw std::invalid_argument("fitness: validation_fraction must be in (0,1)");

  std::vector<int> class_sizes(table_.class_count(), 0);
  for (const int label : table_.labels) ++class_sizes[label];
  min_class_ = 0;
  min_class_count_ = table_.rows() ? static_cast<int>(table_.rows()) : 0;
  for (std::size_t c = 0; c < class_sizes.size(); ++c)
    if (class_sizes[c] < min_class_count_) {
      min_class_count_ = class_sizes[c];
      min_class_ = static_cast<int>(c);
    }
}

double MaskEvaluator::operator()(const FeatureMask& mask) const {
  if (mask.size() != table_.feature_count())
    throw std::invalid_argument("fitness: mask length differs from feature count");
  count_.fetch_add(1);

  if (mask.popcount() == 0) {
    if (row_hook_) row_hook_(table_.row_ids);  // audits still see the call
    return 1.0;                                // sentinel: nothing to train on
  }

  if (strategy_.mode == FitnessMode::kfold_cv &&
      strategy_.folds > min_class_count_) {
    std::ostringstream msg;
    msg << "fitness: class '" << table_.class_names[min_class_] << "' has "
        << min_class_count_ << " rows, fewer than folds=" << strategy_.folds;
    throw std::runtime_error(msg.str());
  }

  const DataTable sub = select_features(table_, mask);
  const std::size_t n = sub.rows();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(strategy_.seed);
  std::shuffle(order.begin(), order.end(), rng);

  if (row_hook_) row_hook_(sub.row_ids);

  double mean_accuracy = 0.0;
  if (strategy_.mode == FitnessMode::kfold_cv) {
    const auto k = static_cast<std::size_t>(strategy_.folds);
    const std::size_t base = n / k, extra = n % k;
    std::size_t cursor = 0;
    for (std::size_t f = 0; f < k; ++f) {
      const std::size_t size = base + (f < extra ? 1 : 0);
      std::vector<std::size_t> valid_idx(order.begin() + cursor,
                                         order.begin() + cursor + size);
      std::vector<std::size_t> train_idx;
      train_idx.reserve(n - size);
      train_idx.insert(train_idx.end(), order.begin(), order.begin() + cursor);
      train_idx.insert(train_idx.end(), order.begin() + cursor + size, order.end());
      cursor += size;

      const DataTable fold_train = subset_rows(sub, train_idx);
      const TrainedModel model =
          fit(strategy_.classifier, fold_train, strategy_.seed + f);
      const auto [labels, _] = predict(model, rows_matrix(sub, valid_idx));
      std::size_t correct = 0;
      for (std::size_t i = 0; i < valid_idx.size(); ++i)
        if (labels[i] == sub.labels[valid_idx[i]]) ++correct;
      mean_accuracy +=
          static_cast<double>(correct) / static_cast<double>(size);
    }
    mean_accuracy /= static_cast<double>(k);
  } else {
    const auto train_n = static_cast<std::size_t>(std::floor(
        static_cast<double>(n) * (1.0 - strategy_.validation_fraction)));
    if (train_n == 0 || train_n == n)
      throw std::runtime_error("fitness: holdout split left an empty side");
    std::vector<std::size_t> train_idx(order.begin(), order.begin() + train_n);
    std::vector<std::size_t> valid_idx(order.begin() + train_n, order.end());
    const DataTable hold_train = subset_rows(sub, train_idx);
    const TrainedModel model = fit(strategy_.classifier, hold_train, strategy_.seed);
    const auto [labels, _] = predict(model, rows_matrix(sub, valid_idx));
    std::size_t correct = 0;
    for (std::size_t i = 0; i < valid_idx.size(); ++i)
      if (labels[i] == sub.labels[valid_idx[i]]) ++correct;
    mean_accuracy =
        static_cast<double>(correct) / static_cast<double>(valid_idx.size());
  }
  return -mean_accuracy;
}

}  // namespace evofs
