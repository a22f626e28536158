#pragma once

#include <cstdint>
#include <random>
#include <utility>

namespace topicgrids {

// Benchmark numbers must be bit-reproducible across platforms, so every
// random quantity is pinned down explicitly:
//
//   engine      std::mt19937_64 (algorithm fixed by the C++ standard)
//   stream seed SplitMix64 finalizer of master_seed + (stream+1) * golden
//               gamma, decorrelating consecutive trial streams
//   uniforms    53-bit mantissa scaling of the top engine bits
//   normals     Box-Muller on two fresh uniforms (no rejection, so the
//               draw count per variate pair is exactly two)
//
// Library distributions (std::uniform_real_distribution etc.) are avoided:
// their output is implementation-defined.

std::uint64_t stream_seed(std::uint64_t master_seed, std::uint64_t stream);

class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : eng_(seed) {}

  // Uniform on [0, 1): top 53 bits scaled by 2^-53.
  double uniform01();

  // Uniform on the open interval (-0.5, 0.5): (bits53 + 0.5) * 2^-53 - 0.5.
  // Never returns the endpoints.
  double uniform_centered();

  // One standard-normal pair via Box-Muller; consumes exactly two engine
  // draws.  u1 is shifted into (0, 1] so log(u1) is always finite.
  std::pair<double, double> normal_pair();

  std::uint64_t raw() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace topicgrids
