#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <utility>
#include <vector>

#include "evofs/optimizer.hpp"

namespace evofs {

// Physics-flavored population search over binary masks: particles below the
// mean energy barrier drift toward the best particle and the population
// center; particles above it take larger steps toward the best and the
// midpoint of their two nearest neighbors.
struct EvoConfig {
  int n_particles = 40;
  int max_fes = 100;  // total fitness evaluations, initialization included
  std::uint64_t seed = 42;
  Binarization binarization = Binarization::bernoulli;
};

struct Particle {
  FeatureMask position;
  double nel = 0.0;  // fitness; lower is better
};

// Indices of the two nearest other particles by Hamming distance, ties to the
// lower index. Needs at least three particles.
std::pair<int, int> cluster_points(const std::vector<Particle>& population, int i);

// Per-bit mean over every particle.
std::vector<double> center_point(const std::vector<Particle>& population);

// Per-bit mean of two particles' bits (values 0, 0.5 or 1).
std::vector<double> gravitational_point(const Particle& a, const Particle& b);

// Mean fitness of the population.
double energy_barrier(const std::vector<Particle>& population);

// Normalized rank of a fitness inside [best, worst]; 0 when the population is
// flat (worst == best).
double slope(double nel, double best_nel, double worst_nel);

// One move in continuous space, already clamped to [0,1] per dimension.
// below_barrier selects the small-step branch (scale 1 - slope) toward
// best/center; otherwise the large-step branch (scale slope) toward
// best/neighbor-midpoint. r1/r2 are per-dimension uniforms in [0,1).
std::vector<double> update_position(const FeatureMask& x, const FeatureMask& best,
                                    const std::vector<double>& toward_center,
                                    const std::vector<double>& toward_neighbors,
                                    double slope_value, bool below_barrier,
                                    const std::vector<double>& r1,
                                    const std::vector<double>& r2);

FeatureMask binarize(const std::vector<double>& position, Binarization mode,
                     std::mt19937_64& rng);

struct EvoHooks {
  // Called once after initialization (iteration 0) and once per completed
  // iteration with the surviving population.
  std::function<void(int iteration, const std::vector<Particle>&)> on_iteration;
};

// Runs the search for a mask of `dimensions` bits. Stops starting evaluations
// once max_fes is reached; the best-so-far is updated on every single
// evaluation, so partial final sweeps still count.
SearchResult run_evo(std::size_t dimensions, const FitnessFn& fitness,
                     const EvoConfig& config, const EvoHooks* hooks = nullptr);

}  // namespace evofs
