#pragma once

#include <cstdint>
#include <limits>

namespace agree {

struct RngSeed {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
};

// Counter-based generator keyed by (seed, stream_id). Output i is a two-round
// SplitMix64-finalizer hash of the counter, so any stream can be recreated
// directly from its key, and trial t of a run always uses stream_id = t no
// matter which worker executes it.
class Stream {
 public:
  using result_type = std::uint64_t;

  explicit Stream(RngSeed key) noexcept
      : key_lo_(mix(key.seed ^ 0x243f6a8885a308d3ULL)),
        key_hi_(mix(key.stream_id + mix(key.seed + 0x9e3779b97f4a7c15ULL))) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept { return next(); }

  std::uint64_t next() noexcept {
    ++counter_;
    return mix(mix(counter_ ^ key_lo_) + key_hi_);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, bound); bound must be nonzero.
  std::uint64_t below(std::uint64_t bound) noexcept;

  // 64 independent bits, each set with probability exactly p (p is read as
  // the exact dyadic rational a double represents).
  std::uint64_t bernoulli_word(double p) noexcept;

 private:
  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_lo_;
  std::uint64_t key_hi_;
  std::uint64_t counter_ = 0;
};

}  // namespace agree
