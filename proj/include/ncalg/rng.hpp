#pragma once

#include <cstdint>

namespace ncalg {

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

/* SplitMix64 finalizer. Bijective on u64. */
inline constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/* Derive an independent seed from (seed, tag). Used to give each blow-up
 * size / instance level its own stream; documented so reports are
 * reproducible from (seed) alone. */
inline constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
  return mix64(seed + kGolden) ^ mix64(tag * kGolden + 0x632be59bd9b4e019ULL);
}

/* SplitMix64 generator. Deterministic, cheap to fork: substream(seed, i)
 * yields the stream for the i-th independent consumer (e.g. trial i), so
 * parallel and serial execution draw identical values per consumer. */
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  static Rng substream(std::uint64_t seed, std::uint64_t index) {
    return Rng(derive_seed(seed, index));
  }

  std::uint64_t next() {
    state_ += kGolden;
    return mix64(state_);
  }

  /* Uniform in [0, bound), bound >= 1, by rejection (no modulo bias). */
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t threshold = (-bound) % bound;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

 private:
  std::uint64_t state_;
};

}  // namespace ncalg
