#pragma once

#include <cstdint>
#include <span>

namespace planwb {

// Deterministic RNG used everywhere instead of <random> distributions, whose
// output is implementation-defined. xoshiro256** seeded through splitmix64.

constexpr uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Stream derivation: hash a base seed with up to three lane indices. Every
// independent randomness consumer gets its own derived stream.
constexpr uint64_t derive(uint64_t base, uint64_t a, uint64_t b = 0, uint64_t c = 0) {
  uint64_t h = splitmix64(base ^ 0x243f6a8885a308d3ull);
  h = splitmix64(h ^ a);
  h = splitmix64(h ^ (b * 0x9e3779b97f4a7c15ull));
  h = splitmix64(h ^ (c * 0xc2b2ae3d27d4eb4full));
  return h;
}

class Rng {
 public:
  explicit Rng(uint64_t seed = 0) { reseed(seed); }

  void reseed(uint64_t seed) {
    uint64_t x = seed;
    for (auto& w : s_) {
      x = splitmix64(x);
      w = x;
    }
  }

  uint64_t next() {
    auto rotl = [](uint64_t v, int k) { return (v << k) | (v >> (64 - k)); };
    uint64_t result = rotl(s_[1] * 5, 7) * 9;
    uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Unbiased integer in [0, n) via rejection on the top bits.
  uint32_t uniform_int(uint32_t n) {
    if (n <= 1) return 0;
    uint64_t threshold = (~uint64_t{0} / n) * n;
    uint64_t r;
    do {
      r = next();
    } while (r >= threshold);
    return static_cast<uint32_t>(r % n);
  }

  double uniform_real() {  // [0, 1)
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return uniform_real() < p; }

  // Index sampled proportionally to non-negative weights; all-zero weights
  // fall back to uniform.
  int pick_weighted(std::span<const double> w) {
    double total = 0;
    for (double x : w) total += x;
    if (total <= 0) return static_cast<int>(uniform_int(static_cast<uint32_t>(w.size())));
    double target = uniform_real() * total;
    double acc = 0;
    for (size_t i = 0; i < w.size(); ++i) {
      acc += w[i];
      if (target < acc) return static_cast<int>(i);
    }
    return static_cast<int>(w.size()) - 1;
  }

 private:
  uint64_t s_[4];
};

}  // namespace planwb
