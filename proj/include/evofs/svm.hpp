#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "evofs/classifiers.hpp"
#include "evofs/matrix.hpp"

namespace evofs {

// One binary max-margin machine trained by sequential minimal optimization.
struct SvmBinary {
  std::vector<double> alpha;
  double b = 0.0;
  bool converged = false;  // true when no KKT violation beyond tol remained
  bool trivial = false;    // degenerate one-sided problem, fixed decision
  double trivial_decision = 0.0;
};

// Trains on ±1 targets with an RBF kernel. Deterministic: the second working
// variable is chosen by largest |E1 - E2| (ties to the lower index) with
// Platt's non-bound-then-all fallback, so no randomness is consumed.
// max_passes bounds consecutive sweeps without progress.
SvmBinary smo_train(const Matrix& x, const std::vector<int>& targets, double c,
                    double gamma, double tolerance, int max_passes);

// Number of KKT violations beyond the tolerance for a trained machine.
int kkt_violations(const Matrix& x, const std::vector<int>& targets,
                   const SvmBinary& machine, double c, double gamma,
                   double tolerance);

// Decision value sum(alpha_i * y_i * K(x_i, row)) + b.
double svm_decision(const Matrix& x, const std::vector<int>& targets,
                    const SvmBinary& machine, double gamma,
                    std::span<const double> row);

// One-vs-rest multiclass wrapper; prediction is the machine with the highest
// decision value, ties to the lower class index.
class SvmModel : public Model {
 public:
  static SvmModel train(const Matrix& x, const std::vector<int>& y,
                        int class_count, const SvmParams& params);

  std::vector<int> predict(const Matrix& rows) const override;
  const std::vector<SvmBinary>& machines() const { return machines_; }
  double gamma() const { return gamma_; }

 private:
  Matrix train_x_;
  std::vector<std::vector<int>> targets_;  // ±1 per machine
  std::vector<SvmBinary> machines_;
  double gamma_ = 1.0;
  int class_count_ = 0;
};

}  // namespace evofs
