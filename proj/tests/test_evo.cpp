#include <stdexcept>
#include <cmath>
#include <cstdlib>

#include "doctest.h"
#include "evofs/evo.hpp"
#include "helpers.hpp"

using namespace evofs;

namespace {

Particle make_particle(const char* bits, double nel = 0.0) {
  return Particle{FeatureMask::from_string(bits), nel};
}

// fitness on pure bit patterns: distance from exactly three set bits
double three_ones(const FeatureMask& m) {
  return std::abs(static_cast<double>(m.popcount()) - 3.0);
}

}  // namespace

TEST_CASE("hamming distance counts differing bits") {
  CHECK(hamming_distance(FeatureMask::from_string("1010"),
                         FeatureMask::from_string("1001")) == 2);
  CHECK(hamming_distance(FeatureMask::from_string("111"),
                         FeatureMask::from_string("111")) == 0);
  CHECK_THROWS_AS(hamming_distance(FeatureMask::from_string("1"),
                                   FeatureMask::from_string("11")),
                  std::invalid_argument);
}

TEST_CASE("cluster points pick the two nearest others, ties to the lower index") {
  const std::vector<Particle> pop = {
      make_particle("0000"),  // 0: query
      make_particle("1111"),  // 1: distance 4
      make_particle("0001"),  // 2: distance 1
      make_particle("0011"),  // 3: distance 2
      make_particle("0100"),  // 4: distance 1 (ties with 2; 2 wins first slot)
  };
  const auto [a, b] = cluster_points(pop, 0);
  CHECK(a == 2);
  CHECK(b == 4);

  const std::vector<Particle> tiny = {make_particle("01"), make_particle("10")};
  CHECK_THROWS_AS(cluster_points(tiny, 0), std::invalid_argument);
}

TEST_CASE("center and gravitational points are per-bit means") {
  const std::vector<Particle> pop = {make_particle("10"), make_particle("11"),
                                     make_particle("00"), make_particle("10")};
  const std::vector<double> c = center_point(pop);
  CHECK(c[0] == doctest::Approx(0.75));
  CHECK(c[1] == doctest::Approx(0.25));

  const std::vector<double> g = gravitational_point(pop[0], pop[1]);
  CHECK(g[0] == 1.0);
  CHECK(g[1] == 0.5);
}

TEST_CASE("barrier is the mean and slope the normalized rank") {
  const std::vector<Particle> pop = {make_particle("1", -0.9), make_particle("1", -0.5),
                                     make_particle("1", -0.1)};
  CHECK(energy_barrier(pop) == doctest::Approx(-0.5));
  CHECK(slope(-0.9, -0.9, -0.1) == 0.0);
  CHECK(slope(-0.1, -0.9, -0.1) == 1.0);
  CHECK(slope(-0.5, -0.9, -0.1) == doctest::Approx(0.5));
  CHECK(slope(-0.4, -0.4, -0.4) == 0.0);  // flat population
}

TEST_CASE("position updates follow the two-branch step and stay in [0,1]") {
  const FeatureMask x = FeatureMask::from_string("01");
  const FeatureMask best = FeatureMask::from_string("10");
  const std::vector<double> center{0.5, 0.5};
  const std::vector<double> neighbors{1.0, 0.0};
  const std::vector<double> r1{0.5, 1.0};
  const std::vector<double> r2{1.0, 0.5};

  // below the barrier: scale = 1 - slope, second target = center
  // dim0: 0 + .7*.5*(1-0) + .7*1*(.5-0)  = .35 + .35 = .7
  // dim1: 1 + .7*1*(0-1)  + .7*.5*(.5-1) = 1 - .7 - .175 = .125
  const auto below = update_position(x, best, center, neighbors, 0.3, true, r1, r2);
  CHECK(below[0] == doctest::Approx(0.7));
  CHECK(below[1] == doctest::Approx(0.125));

  // above the barrier: scale = slope, second target = neighbor midpoint
  // dim0: 0 + .3*.5*(1-0) + .3*1*(1-0) = .15 + .3 = .45
  // dim1: 1 + .3*1*(0-1)  + .3*.5*(0-1) = 1 - .3 - .15 = .55
  const auto above = update_position(x, best, center, neighbors, 0.3, false, r1, r2);
  CHECK(above[0] == doctest::Approx(0.45));
  CHECK(above[1] == doctest::Approx(0.55));

  // clamping: a full-strength pull cannot leave the unit box
  const auto clamped = update_position(x, best, {1.0, 1.0}, neighbors, 1.0, true,
                                       {0.0, 0.0}, {0.0, 0.0});
  CHECK(clamped[0] == 0.0);
  CHECK(clamped[1] == 1.0);
}

TEST_CASE("binarization modes agree on saturated probabilities") {
  std::mt19937_64 rng(1);
  const std::vector<double> sure{0.0, 1.0, 0.0, 1.0};
  for (int trial = 0; trial < 20; ++trial) {
    CHECK(binarize(sure, Binarization::bernoulli, rng) ==
          FeatureMask::from_string("0101"));
  }
  CHECK(binarize({0.2, 0.8, 0.5}, Binarization::threshold_half, rng) ==
        FeatureMask::from_string("010"));
}

TEST_CASE("the search respects its budget exactly and never worsens") {
  EvoConfig config;
  config.n_particles = 8;
  config.max_fes = 50;
  config.seed = 3;
  std::uint64_t calls = 0;
  const FitnessFn counted = [&](const FeatureMask& m) {
    ++calls;
    return three_ones(m);
  };
  const SearchResult result = run_evo(10, counted, config);
  CHECK(calls == 50);
  CHECK(result.evaluations_used == 50);
  CHECK(result.trace.front().first == 0);
  for (std::size_t i = 1; i < result.trace.size(); ++i) {
    CHECK(result.trace[i].first == static_cast<int>(i));
    CHECK(result.trace[i].second <= result.trace[i - 1].second);
  }
  CHECK(result.best_fitness == result.trace.back().second);
  CHECK(three_ones(result.best_mask) == result.best_fitness);
}

TEST_CASE("the population keeps its size and its best matches the global best") {
  EvoConfig config;
  config.n_particles = 6;
  config.max_fes = 60;
  config.seed = 11;
  std::vector<std::size_t> sizes;
  std::vector<double> pop_best;
  EvoHooks hooks;
  hooks.on_iteration = [&](int, const std::vector<Particle>& pop) {
    sizes.push_back(pop.size());
    double best = pop.front().nel;
    for (const auto& p : pop) best = std::min(best, p.nel);
    pop_best.push_back(best);
  };
  const SearchResult result = run_evo(8, three_ones, config, &hooks);
  REQUIRE(sizes.size() == result.trace.size());
  for (const auto s : sizes) CHECK(s == 6);
  // survivors always include the best mask found so far
  for (std::size_t i = 0; i < pop_best.size(); ++i)
    CHECK(pop_best[i] == doctest::Approx(result.trace[i].second));
}

TEST_CASE("identical seeds reproduce the run, different seeds explore differently") {
  EvoConfig config;
  config.n_particles = 5;
  config.max_fes = 40;
  config.seed = 21;
  const auto noisy = [](const FeatureMask& m) {
    double v = 0.0;
    for (std::size_t j = 0; j < m.size(); ++j)
      if (m.bits[j]) v -= std::cos(static_cast<double>(j));
    return v;
  };
  const SearchResult a = run_evo(12, noisy, config);
  const SearchResult b = run_evo(12, noisy, config);
  CHECK(a.best_mask == b.best_mask);
  CHECK(a.trace == b.trace);
  config.seed = 22;
  const SearchResult c = run_evo(12, noisy, config);
  CHECK((a.trace != c.trace || a.best_mask != c.best_mask));
}

TEST_CASE("a modest budget solves the three-bit toy problem") {
  EvoConfig config;
  config.n_particles = 10;
  config.max_fes = 200;
  config.seed = 1;
  const SearchResult result = run_evo(8, three_ones, config);
  CHECK(result.best_fitness == 0.0);
  CHECK(result.best_mask.popcount() == 3);
}

TEST_CASE("threshold binarization mode also drives the search") {
  EvoConfig config;
  config.n_particles = 10;
  config.max_fes = 200;
  config.seed = 1;
  config.binarization = Binarization::threshold_half;
  const SearchResult result = run_evo(8, three_ones, config);
  CHECK(result.best_fitness <= 1.0);
  CHECK(result.evaluations_used == 200);
}

TEST_CASE("invalid search configurations are rejected up front") {
  const FitnessFn fit = three_ones;
  EvoConfig config;
  CHECK_THROWS_WITH_AS(run_evo(0, fit, config), doctest::Contains("dimensions"),
                       std::invalid_argument);
  config.n_particles = 2;
  CHECK_THROWS_WITH_AS(run_evo(4, fit, config), doctest::Contains("particles"),
                       std::invalid_argument);
  config.n_particles = 4;
  config.max_fes = 0;
  CHECK_THROWS_WITH_AS(run_evo(4, fit, config), doctest::Contains("max_fes"),
                       std::invalid_argument);
}

TEST_CASE("binarization names round-trip") {
  CHECK(binarization_from("bernoulli") == Binarization::bernoulli);
  CHECK(binarization_from("threshold_half") == Binarization::threshold_half);
  CHECK(to_string(Binarization::bernoulli) == "bernoulli");
  CHECK_THROWS_AS(binarization_from("coin"), std::invalid_argument);
}
