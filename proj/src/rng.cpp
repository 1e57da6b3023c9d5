#include "eagle/rng.hpp"

#include <algorithm>
#include <cmath>

namespace eagle {

namespace {

inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t hash64(std::uint64_t seed, std::string_view label) {
  // FNV-1a over the label bytes, then mixed with the parent seed
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return mix64(seed ^ mix64(h));
}

RngStream RngStream::split(std::string_view label) const {
  return RngStream{hash64(seed, label), 0};
}

RngStream RngStream::split(std::string_view label, std::uint64_t index) const {
  return RngStream{mix64(hash64(seed, label) ^ mix64(index)), 0};
}

std::uint64_t RngStream::next_u64() { return mix64(seed ^ mix64(counter++)); }

double RngStream::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::normal() {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
}

double RngStream::normal_clamped(double sigma, double clip) {
  return std::clamp(normal() * sigma, -clip, clip);
}

std::uint64_t RngStream::below(std::uint64_t n) {
  return static_cast<std::uint64_t>((static_cast<__uint128_t>(next_u64()) * n) >> 64);
}

}  // namespace eagle
