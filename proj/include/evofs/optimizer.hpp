#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "evofs/fitness.hpp"

namespace evofs {

// Common output of the subset-search algorithms. trace[0] is the best fitness
// right after initialization; each later entry is the best seen after one
// full iteration. Entries never increase.
struct SearchResult {
  FeatureMask best_mask;
  double best_fitness = 0.0;
  std::vector<std::pair<int, double>> trace;  // (iteration, best fitness so far)
  std::uint64_t evaluations_used = 0;
};

// How a continuous candidate position becomes bits.
enum class Binarization { bernoulli, threshold_half };

Binarization binarization_from(const std::string& name);
std::string to_string(Binarization b);

}  // namespace evofs
