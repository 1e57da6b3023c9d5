#pragma once

#include <cstdint>
#include <string_view>

namespace eagle {

// Counter-based deterministic stream: the value at (seed, counter) is a pure
// function of both, so streams can be checkpointed as two integers and
// derived streams (labeled splits) never depend on draw order elsewhere.
struct RngStream {
  std::uint64_t seed = 0;
  std::uint64_t counter = 0;

  static RngStream from_seed(std::uint64_t s) { return RngStream{s, 0}; }

  RngStream split(std::string_view label) const;
  RngStream split(std::string_view label, std::uint64_t index) const;

  std::uint64_t next_u64();
  // [0, 1)
  double uniform();
  // standard normal via Box-Muller (consumes two counters)
  double normal();
  double normal(double sigma) { return normal() * sigma; }
  // N(0, sigma) clamped to ±clip
  double normal_clamped(double sigma, double clip);
  // uniform integer in [0, n)
  std::uint64_t below(std::uint64_t n);
};

std::uint64_t hash64(std::uint64_t seed, std::string_view label);

}  // namespace eagle
