#include "evofs/evo.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace evofs {

Binarization binarization_from(const std::string& name) {
  if (name == "bernoulli") return Binarization::bernoulli;
  if (name == "threshold_half") return Binarization::threshold_half;
  throw std::invalid_argument("optimizer: unknown binarization '" + name + "'");
}

std::string to_string(Binarization b) {
  return b == Binarization::bernoulli ? "bernoulli" : "threshold_half";
}

std::pair<int, int> cluster_points(const std::vector<Particle>& population, int i) {
  const int n = static_cast<int>(population.size());
  if (n < 3) throw std::invalid_argument("cluster_points: need at least 3 particles");
  int first = -1, second = -1, d_first = 0, d_second = 0;
  for (int j = 0; j < n; ++j) {
    if (j == i) continue;
    const int d = hamming_distance(population[i].position, population[j].position);
    if (first < 0 || d < d_first) {
      second = first;
      d_second = d_first;
      first = j;
      d_first = d;
    } else if (second < 0 || d < d_second) {
      second = j;
      d_second = d;
    }
  }
  return {first, second};
}

std::vector<double> center_point(const std::vector<Particle>& population) {
  const std::size_t d = population.front().position.size();
  std::vector<double> center(d, 0.0);
  for (const auto& p : population)
    for (std::size_t j = 0; j < d; ++j) center[j] += p.position.bits[j];
  for (auto& v : center) v /= static_cast<double>(population.size());
  return center;
}

std::vector<double> gravitational_point(const Particle& a, const Particle& b) {
  std::vector<double> mid(a.position.size());
  for (std::size_t j = 0; j < mid.size(); ++j)
    mid[j] = (a.position.bits[j] + b.position.bits[j]) / 2.0;
  return mid;
}

double energy_barrier(const std::vector<Particle>& population) {
  double sum = 0.0;
  for (const auto& p : population) sum += p.nel;
  return sum / static_cast<double>(population.size());
}

double slope(double nel, double best_nel, double worst_nel) {
  const double spread = worst_nel - best_nel;
  if (spread <= 0.0) return 0.0;
  return (nel - best_nel) / spread;
}

std::vector<double> update_position(const FeatureMask& x, const FeatureMask& best,
                                    const std::vector<double>& toward_center,
                                    const std::vector<double>& toward_neighbors,
                                    double slope_value, bool below_barrier,
                                    const std::vector<double>& r1,
                                    const std::vector<double>& r2) {
  const std::size_t d = x.size();
  std::vector<double> y(d);
  const double scale = below_barrier ? 1.0 - slope_value : slope_value;
  const std::vector<double>& second_target =
      below_barrier ? toward_center : toward_neighbors;
  for (std::size_t j = 0; j < d; ++j) {
    const double xj = x.bits[j];
    const double step = scale * r1[j] * (best.bits[j] - xj) +
                        scale * r2[j] * (second_target[j] - xj);
    y[j] = std::clamp(xj + step, 0.0, 1.0);
  }
  return y;
}

FeatureMask binarize(const std::vector<double>& position, Binarization mode,
                     std::mt19937_64& rng) {
  FeatureMask m;
  m.bits.resize(position.size());
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  for (std::size_t j = 0; j < position.size(); ++j) {
    if (mode == Binarization::bernoulli)
      m.bits[j] = uniform(rng) < position[j] ? 1 : 0;
    else
      m.bits[j] = position[j] > 0.5 ? 1 : 0;
  }
  return m;
}

SearchResult run_evo(std::size_t dimensions, const FitnessFn& fitness,
                     const EvoConfig& config, const EvoHooks* hooks) {
  if (dimensions == 0) throw std::invalid_argument("evo: zero dimensions");
  if (config.n_particles < 3)
    throw std::invalid_argument("evo: n_particles must be >= 3");
  if (config.max_fes < 1) throw std::invalid_argument("evo: max_fes must be >= 1");

  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);

  SearchResult result;
  result.best_fitness = std::numeric_limits<double>::infinity();
  auto note_evaluation = [&](const FeatureMask& mask, double nel) {
    ++result.evaluations_used;
    if (nel < result.best_fitness) {
      result.best_fitness = nel;
      result.best_mask = mask;
    }
  };

  // init: each bit set when a uniform draw clears 0.5
  std::vector<Particle> population;
  population.reserve(config.n_particles);
  for (int i = 0; i < config.n_particles; ++i) {
    Particle p;
    p.position.bits.resize(dimensions);
    for (std::size_t j = 0; j < dimensions; ++j)
      p.position.bits[j] = uniform(rng) > 0.5 ? 1 : 0;
    p.nel = std::numeric_limits<double>::infinity();
    population.push_back(std::move(p));
  }
  const auto budget = static_cast<std::uint64_t>(config.max_fes);
  for (auto& p : population) {
    if (result.evaluations_used >= budget) break;
    p.nel = fitness(p.position);
    note_evaluation(p.position, p.nel);
  }

  result.trace.emplace_back(0, result.best_fitness);
  if (hooks && hooks->on_iteration) hooks->on_iteration(0, population);

  std::vector<double> r1(dimensions), r2(dimensions);
  int iteration = 0;
  while (result.evaluations_used < budget) {
    ++iteration;
    // population statistics frozen for the whole sweep
    int best_idx = 0, worst_idx = 0;
    for (int i = 1; i < config.n_particles; ++i) {
      if (population[i].nel < population[best_idx].nel) best_idx = i;
      if (population[i].nel > population[worst_idx].nel) worst_idx = i;
    }
    const FeatureMask best_mask = population[best_idx].position;
    const double best_nel = population[best_idx].nel;
    const double worst_nel = population[worst_idx].nel;
    const double barrier = energy_barrier(population);
    const std::vector<double> center = center_point(population);

    std::vector<Particle> candidates;
    candidates.reserve(config.n_particles);
    for (int i = 0; i < config.n_particles; ++i) {
      if (result.evaluations_used >= budget) break;
      const Particle& p = population[i];
      const auto [na, nb] = cluster_points(population, i);
      const std::vector<double> neighbor_mid =
          gravitational_point(population[na], population[nb]);
      for (std::size_t j = 0; j < dimensions; ++j) {
        r1[j] = uniform(rng);
        r2[j] = uniform(rng);
      }
      const double sl = slope(p.nel, best_nel, worst_nel);
      const std::vector<double> y =
          update_position(p.position, best_mask, center, neighbor_mid, sl,
                          p.nel < barrier, r1, r2);
      Particle cand;
      cand.position = binarize(y, config.binarization, rng);
      cand.nel = fitness(cand.position);
      note_evaluation(cand.position, cand.nel);
      candidates.push_back(std::move(cand));
    }

    // merge and keep the strongest; stable sort favors incumbents on ties
    for (auto& c : candidates) population.push_back(std::move(c));
    std::stable_sort(population.begin(), population.end(),
                     [](const Particle& a, const Particle& b) {
                       return a.nel < b.nel;
                     });
    population.resize(config.n_particles);

    result.trace.emplace_back(iteration, result.best_fitness);
    if (hooks && hooks->on_iteration) hooks->on_iteration(iteration, population);
  }
  return result;
}

}  // namespace evofs
