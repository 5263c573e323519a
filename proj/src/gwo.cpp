#include "evofs/gwo.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace evofs {

double coefficient_a(int t, int n_iterations) {
  return 2.0 * (1.0 - static_cast<double>(t) / static_cast<double>(n_iterations));
}

double transfer_probability(double coordinate) {
  return 1.0 / (1.0 + std::exp(-10.0 * (coordinate - 0.5)));
}

SearchResult run_gwo(std::size_t dimensions, const FitnessFn& fitness,
                     const GwoConfig& config, const GwoHooks* hooks) {
  if (dimensions == 0) throw std::invalid_argument("gwo: zero dimensions");
  if (config.n_wolves < 3)
    throw std::invalid_argument("gwo: n_wolves must be >= 3");
  if (config.n_iterations < 1)
    throw std::invalid_argument("gwo: n_iterations must be >= 1");

  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);

  SearchResult result;
  const double inf = std::numeric_limits<double>::infinity();
  WolfPack pack;
  pack.alpha_fitness = pack.beta_fitness = pack.delta_fitness = inf;

  auto offer_leader = [&](const FeatureMask& mask, double f) {
    if (f < pack.alpha_fitness) {
      pack.delta = std::move(pack.beta);
      pack.delta_fitness = pack.beta_fitness;
      pack.beta = std::move(pack.alpha);
      pack.beta_fitness = pack.alpha_fitness;
      pack.alpha = mask;
      pack.alpha_fitness = f;
    } else if (f < pack.beta_fitness) {
      pack.delta = std::move(pack.beta);
      pack.delta_fitness = pack.beta_fitness;
      pack.beta = mask;
      pack.beta_fitness = f;
    } else if (f < pack.delta_fitness) {
      pack.delta = mask;
      pack.delta_fitness = f;
    }
  };

  std::vector<FeatureMask> wolves(config.n_wolves);
  for (auto& w : wolves) {
    w.bits.resize(dimensions);
    for (std::size_t j = 0; j < dimensions; ++j)
      w.bits[j] = uniform(rng) > 0.5 ? 1 : 0;
    const double f = fitness(w);
    ++result.evaluations_used;
    offer_leader(w, f);
  }
  result.trace.emplace_back(0, pack.alpha_fitness);
  if (hooks && hooks->on_iteration) hooks->on_iteration(0, pack, wolves);

  for (int t = 0; t < config.n_iterations; ++t) {
    const double a = coefficient_a(t, config.n_iterations);
    for (auto& w : wolves) {
      FeatureMask next;
      next.bits.resize(dimensions);
      for (std::size_t j = 0; j < dimensions; ++j) {
        const double xj = w.bits[j];
        double pull = 0.0;
        for (const FeatureMask* leader : {&pack.alpha, &pack.beta, &pack.delta}) {
          const double lj = leader->bits[j];
          const double coef_a = 2.0 * a * uniform(rng) - a;
          const double coef_c = 2.0 * uniform(rng);
          pull += lj - coef_a * std::fabs(coef_c * lj - xj);
        }
        const double y = pull / 3.0;
        const double p = transfer_probability(y);
        if (config.binarization == Binarization::bernoulli)
          next.bits[j] = uniform(rng) < p ? 1 : 0;
        else
          next.bits[j] = p > 0.5 ? 1 : 0;
      }
      w = std::move(next);
      const double f = fitness(w);
      ++result.evaluations_used;
      offer_leader(w, f);
    }
    result.trace.emplace_back(t + 1, pack.alpha_fitness);
    if (hooks && hooks->on_iteration) hooks->on_iteration(t + 1, pack, wolves);
  }

  result.best_mask = pack.alpha;
  result.best_fitness = pack.alpha_fitness;
  return result;
}

}  // namespace evofs
