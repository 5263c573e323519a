#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "evofs/optimizer.hpp"

namespace evofs {

struct GwoConfig {
  int n_wolves = 20;
  int n_iterations = 20;
  std::uint64_t seed = 42;
  Binarization binarization = Binarization::bernoulli;
};

// Exploration coefficient, linear from 2 at t=0 down to 0 at t=n_iterations.
double coefficient_a(int t, int n_iterations);

// Logistic transfer squashing a continuous coordinate into a bit probability.
// Centered at 0.5 with slope 10, so 0.5 maps to probability 0.5.
double transfer_probability(double coordinate);

// Current pack leaders, best first. Replacement is greedy: a leader only
// changes when a strictly better mask shows up, so the alpha trace never
// regresses.
struct WolfPack {
  FeatureMask alpha, beta, delta;
  double alpha_fitness, beta_fitness, delta_fitness;
};

struct GwoHooks {
  std::function<void(int iteration, const WolfPack&,
                     const std::vector<FeatureMask>& wolves)>
      on_iteration;
};

// Classic three-leader pack search adapted to bit masks: each wolf averages
// its pull toward alpha, beta and delta, then the transfer function decides
// each bit. Evaluations total n_wolves * (n_iterations + 1).
SearchResult run_gwo(std::size_t dimensions, const FitnessFn& fitness,
                     const GwoConfig& config, const GwoHooks* hooks = nullptr);

}  // namespace evofs
