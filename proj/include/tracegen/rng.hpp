#pragma once

#include <cstdint>
#include <initializer_list>
#include <string_view>

// Deterministic random generation. Everything that samples data goes through
// this header so that corpora are byte-identical across platforms and
// compilers; std::uniform_int_distribution and std::hash are
// implementation-defined and must not appear in any sampling path.

namespace tracegen {

// splitmix64 step: advances the state and returns the next value.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Stateless scramble of a single 64-bit value.
inline std::uint64_t mix64(std::uint64_t x) {
  std::uint64_t s = x;
  return splitmix64(s);
}

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Seed derivation used by the corpus pipeline: a label plus any number of
// 64-bit stream coordinates are folded into the master seed one at a time.
// The exact chain is part of the output format contract.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view label,
                                 std::initializer_list<std::uint64_t> parts = {}) {
  std::uint64_t x = mix64(master ^ fnv1a64(label));
  for (std::uint64_t p : parts) {
    x = mix64(x ^ (p + 0x9e3779b97f4a7c15ULL));
  }
  return x;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() { return splitmix64(state_); }

  // Unbiased value in [0, n) by rejection sampling.
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) return 0;
    const std::uint64_t threshold = (0ULL - n) % n;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % n;
    }
  }

  // Inclusive integer range.
  long long range(long long lo, long long hi) {
    if (hi <= lo) return lo;
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1ULL;
    return lo + static_cast<long long>(below(span));
  }

  bool coin() { return (next() & 1ULL) != 0; }

  // True with probability percent/100.
  bool chance(int percent) { return below(100) < static_cast<std::uint64_t>(percent); }

  char digit(bool allow_zero = true) {
    return static_cast<char>('0' + (allow_zero ? below(10) : 1 + below(9)));
  }

 private:
  std::uint64_t state_;
};

}  // namespace tracegen
