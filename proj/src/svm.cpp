#include "evofs/svm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace evofs {

namespace {

double rbf(std::span<const double> a, std::span<const double> b, double gamma) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    s += diff * diff;
  }
  return std::exp(-gamma * s);
}

// Full kernel matrix for modest problems; above this the rows are recomputed
// on demand.
constexpr std::size_t kKernelCacheLimit = 2048;

class Kernel {
 public:
  Kernel(const Matrix& x, double gamma) : x_(x), gamma_(gamma) {
    if (x.rows() <= kKernelCacheLimit) {
      cache_ = Matrix(x.rows(), x.rows());
      for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = i; j < x.rows(); ++j)
          cache_(i, j) = cache_(j, i) = rbf(x.row(i), x.row(j), gamma);
    }
  }
  double operator()(std::size_t i, std::size_t j) const {
    if (!cache_.empty()) return cache_(i, j);
    return rbf(x_.row(i), x_.row(j), gamma_);
  }

 private:
  const Matrix& x_;
  double gamma_;
  Matrix cache_;
};

bool violates(double e, int y, double alpha, double c, double tol) {
  const double r = e * y;
  return (r < -tol && alpha < c) || (r > tol && alpha > 0.0);
}

double snap(double v, double c) {
  if (v < 1e-10) return 0.0;
  if (v > c - 1e-10) return c;
  return v;
}

}  // namespace

SvmBinary smo_train(const Matrix& x, const std::vector<int>& targets, double c,
                    double gamma, double tolerance, int max_passes) {
  if (c <= 0.0) throw std::invalid_argument("svm: c must be positive");
  if (gamma <= 0.0) throw std::invalid_argument("svm: gamma must be positive");
  if (tolerance <= 0.0) throw std::invalid_argument("svm: tolerance must be positive");
  if (max_passes < 1) throw std::invalid_argument("svm: max_passes must be >= 1");
  const std::size_t n = x.rows();
  if (n == 0 || targets.size() != n)
    throw std::invalid_argument("svm: bad training shape");

  SvmBinary m;
  m.alpha.assign(n, 0.0);

  const bool has_pos = std::any_of(targets.begin(), targets.end(),
                                   [](int t) { return t > 0; });
  const bool has_neg = std::any_of(targets.begin(), targets.end(),
                                   [](int t) { return t < 0; });
  if (!has_pos || !has_neg) {
    m.trivial = true;
    m.trivial_decision = has_pos ? 1e30 : -1e30;
    m.converged = true;
    return m;
  }

  const Kernel k(x, gamma);
  std::vector<double> e(n);
  for (std::size_t i = 0; i < n; ++i) e[i] = -targets[i];  // f == 0 initially

  auto try_step = [&](std::size_t i, std::size_t j) -> bool {
    if (i == j) return false;
    const int yi = targets[i], yj = targets[j];
    const double ai = m.alpha[i], aj = m.alpha[j];
    double lo, hi;
    if (yi != yj) {
      lo = std::max(0.0, aj - ai);
      hi = std::min(c, c + aj - ai);
    } else {
      lo = std::max(0.0, ai + aj - c);
      hi = std::min(c, ai + aj);
    }
    if (lo >= hi) return false;
    const double eta = 2.0 * k(i, j) - k(i, i) - k(j, j);
    if (eta >= 0.0) return false;
    double aj_new = aj - yj * (e[i] - e[j]) / eta;
    aj_new = snap(std::clamp(aj_new, lo, hi), c);
    if (std::fabs(aj_new - aj) < 1e-7) return false;
    const double ai_new = snap(ai + yi * yj * (aj - aj_new), c);

    const double b1 = m.b - e[i] - yi * (ai_new - ai) * k(i, i) -
                      yj * (aj_new - aj) * k(i, j);
    const double b2 = m.b - e[j] - yi * (ai_new - ai) * k(i, j) -
                      yj * (aj_new - aj) * k(j, j);
    double b_new;
    if (ai_new > 0.0 && ai_new < c)
      b_new = b1;
    else if (aj_new > 0.0 && aj_new < c)
      b_new = b2;
    else
      b_new = (b1 + b2) / 2.0;

    const double di = (ai_new - ai) * yi, dj = (aj_new - aj) * yj;
    const double db = b_new - m.b;
    for (std::size_t l = 0; l < n; ++l)
      e[l] += di * k(i, l) + dj * k(j, l) + db;
    m.alpha[i] = ai_new;
    m.alpha[j] = aj_new;
    m.b = b_new;
    return true;
  };

  int stagnant = 0;
  const int sweep_cap = 100 * max_passes;
  for (int sweep = 0; sweep < sweep_cap && stagnant < max_passes; ++sweep) {
    int changed = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!violates(e[i], targets[i], m.alpha[i], c, tolerance)) continue;

      // largest |E_i - E_j| first, ties to the lower index
      std::size_t best_j = n;
      double best_gap = -1.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        const double gap = std::fabs(e[i] - e[j]);
        if (gap > best_gap) {
          best_gap = gap;
          best_j = j;
        }
      }
      if (best_j < n && try_step(i, best_j)) {
        ++changed;
        continue;
      }
      bool progressed = false;
      for (std::size_t j = 0; j < n && !progressed; ++j)
        if (j != i && m.alpha[j] > 0.0 && m.alpha[j] < c)
          progressed = try_step(i, j);
      for (std::size_t j = 0; j < n && !progressed; ++j)
        if (j != i) progressed = try_step(i, j);
      if (progressed) ++changed;
    }
    stagnant = changed == 0 ? stagnant + 1 : 0;
  }

  m.converged = true;
  for (std::size_t i = 0; i < n; ++i)
    if (violates(e[i], targets[i], m.alpha[i], c, tolerance)) {
      m.converged = false;
      break;
    }
  return m;
}

int kkt_violations(const Matrix& x, const std::vector<int>& targets,
                   const SvmBinary& machine, double c, double gamma,
                   double tolerance) {
  if (machine.trivial) return 0;
  int count = 0;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const double e =
        svm_decision(x, targets, machine, gamma, x.row(i)) - targets[i];
    if (violates(e, targets[i], machine.alpha[i], c, tolerance)) ++count;
  }
  return count;
}

double svm_decision(const Matrix& x, const std::vector<int>& targets,
                    const SvmBinary& machine, double gamma,
                    std::span<const double> row) {
  if (machine.trivial) return machine.trivial_decision;
  double s = machine.b;
  for (std::size_t i = 0; i < x.rows(); ++i)
    if (machine.alpha[i] > 0.0)
      s += machine.alpha[i] * targets[i] * rbf(x.row(i), row, gamma);
  return s;
}

SvmModel SvmModel::train(const Matrix& x, const std::vector<int>& y,
                         int class_count, const SvmParams& params) {
  SvmModel model;
  model.train_x_ = x;
  model.class_count_ = class_count;

  if (params.gamma) {
    model.gamma_ = *params.gamma;
  } else {
    // sklearn's "scale" rule: 1 / (d * variance over every matrix entry)
    const auto& v = x.data();
    double mean = 0.0;
    for (const double e : v) mean += e;
    mean /= static_cast<double>(v.size());
    double var = 0.0;
    for (const double e : v) var += (e - mean) * (e - mean);
    var /= static_cast<double>(v.size());
    model.gamma_ = var > 0.0 ? 1.0 / (static_cast<double>(x.cols()) * var)
                             : 1.0 / static_cast<double>(x.cols());
  }

  for (int c = 0; c < class_count; ++c) {
    std::vector<int> targets(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) targets[i] = y[i] == c ? 1 : -1;
    model.machines_.push_back(smo_train(x, targets, params.c, model.gamma_,
                                        params.tolerance, params.max_passes));
    model.targets_.push_back(std::move(targets));
  }
  return model;
}

std::vector<int> SvmModel::predict(const Matrix& rows) const {
  std::vector<int> out(rows.rows());
  std::vector<double> kvec(train_x_.rows());
  for (std::size_t r = 0; r < rows.rows(); ++r) {
    const auto row = rows.row(r);
    for (std::size_t i = 0; i < train_x_.rows(); ++i)
      kvec[i] = rbf(train_x_.row(i), row, gamma_);

    int best = 0;
    double best_val = -std::numeric_limits<double>::infinity();
    for (int c = 0; c < class_count_; ++c) {
      const SvmBinary& m = machines_[c];
      double val;
      if (m.trivial) {
        val = m.trivial_decision;
      } else {
        val = m.b;
        for (std::size_t i = 0; i < kvec.size(); ++i)
          if (m.alpha[i] > 0.0) val += m.alpha[i] * targets_[c][i] * kvec[i];
      }
      if (val > best_val) {
        best_val = val;
        best = c;
      }
    }
    out[r] = best;
  }
  return out;
}

}  // namespace evofs
