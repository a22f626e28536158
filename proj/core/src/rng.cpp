#include "topicgrids/rng.hpp"

#include <cmath>
#include <numbers>

namespace topicgrids {

std::uint64_t stream_seed(std::uint64_t master_seed, std::uint64_t stream) {
  // SplitMix64 finalizer (Steele, Lea & Flood 2014) over evenly spaced
  // inputs; stream + 1 keeps stream 0 from collapsing onto the raw master.
  std::uint64_t z = master_seed + (stream + 1) * 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double RandomStream::uniform01() {
  return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform_centered() {
  return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1.0p-53 - 0.5;
}

std::pair<double, double> RandomStream::normal_pair() {
  // u1 in (0, 1]; u2 in [0, 1).
  const double u1 = (static_cast<double>(eng_() >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double t = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(t), r * std::sin(t)};
}

}  // namespace topicgrids
