#pragma once

#include <cstdint>
#include <random>

namespace betafreeze {

// Deterministic random stream: a fixed 64-bit Mersenne Twister plus exact
// scalar samplers. Substreams derived from (seed, index) are statistically
// independent and reproducible, so Monte Carlo loops can be split across
// workers without changing results.
class RngStream {
public:
  explicit RngStream(std::uint64_t seed);

  static RngStream substream(std::uint64_t seed, std::uint64_t index);

  // Uniform draw strictly inside (0, 1).
  double uniform01();

  // Standard normal via Box-Muller; the second value of each pair is cached.
  double normal();

  // Gamma draw with the given shape and unit scale, Marsaglia-Tsang method
  // with the usual power boost for shape < 1. Exact, not a CLT approximation.
  double gamma(double shape);

  // Chi draw with r > 0 degrees of freedom: sqrt of a chi-square draw.
  double chi(double r);

private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace betafreeze
