#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace evofs {

// Per-feature on/off vector.
struct FeatureMask {
  std::vector<std::uint8_t> bits;

  std::size_t size() const { return bits.size(); }
  int popcount() const;
  std::string to_string() const;  // e.g. "101100"
  static FeatureMask ones(std::size_t n);
  static FeatureMask from_string(const std::string& s);

  friend bool operator==(const FeatureMask&, const FeatureMask&) = default;
};

// Number of differing bits; throws on length mismatch.
int hamming_distance(const FeatureMask& a, const FeatureMask& b);

}  // namespace evofs
