#include "msp/rng.hpp"

#include <cmath>

namespace msp {

long SplitMix64::uniform_int(long n) {
  // Rejection sampling to avoid modulo bias.
  std::uint64_t un = static_cast<std::uint64_t>(n);
  std::uint64_t limit = max() - max() % un;
  std::uint64_t x;
  do {
    x = (*this)();
  } while (x >= limit);
  return static_cast<long>(x % un);
}

long SplitMix64::poisson(double rate) {
  long total = 0;
  // Poisson(a+b) = Poisson(a) + Poisson(b) for independent summands.
  while (rate > 30.0) {
    double half = rate * 0.5;
    long chunk = poisson(half);
    total += chunk;
    rate -= half;
  }
  double limit = std::exp(-rate);
  long k = 0;
  double prod = 1.0;
  do {
    ++k;
    prod *= uniform01();
  } while (prod > limit);
  return total + k - 1;
}

SplitMix64 child_rng(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 mix(seed ^ (0x632be59bd9b4e019ull * (index + 1)));
  std::uint64_t a = mix();
  std::uint64_t b = mix();
  return SplitMix64(a ^ (b * 0xff51afd7ed558ccdull));
}

}  // namespace msp
