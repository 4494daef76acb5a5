#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ecsea {

// splitmix64-based generator.  Used instead of std:: engines/distributions so
// that seeded runs produce identical streams on every platform and standard
// library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound) without modulo bias.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t threshold = -bound % bound;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  // Uniform in [0, 1) with 53 bits of precision.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform01() < p; }

 private:
  std::uint64_t state_;
};

inline std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t value) {
  Rng rng(seed ^ (value * 0xff51afd7ed558ccdULL));
  return rng.next();
}

inline std::uint64_t hash_str(std::uint64_t seed, const std::string& text) {
  // FNV-1a folded through splitmix64 for avalanche.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) h = (h ^ c) * 0x100000001b3ULL;
  return hash_combine(seed, h);
}

// Deterministic Fisher-Yates; std::shuffle is implementation-defined.
template <typename T>
void shuffle(std::vector<T>& items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i)
    std::swap(items[i - 1], items[rng.below(i)]);
}

} // namespace ecsea
