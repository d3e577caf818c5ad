#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace smcmix {

// Identifies one reproducible random stream. Identical (master_seed,
// stream_index) pairs yield identical output sequences for a given
// kRngVersion; distinct stream indices give statistically independent
// streams, which is how replicate-level parallelism stays deterministic.
struct RngSeed {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_index = 0;
};

// SplitMix64 step (Steele, Lea & Flood 2014). Used only to expand seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// A self-contained random stream: MT19937-64 (output pinned by the C++
// standard) keyed from (master_seed, stream_index) through a SplitMix64
// expansion, plus inverse-transform variates so every produced number is
// identical across platforms and standard libraries. Not shareable across
// threads; build one stream per replicate instead.
class RngStream {
 public:
  explicit RngStream(RngSeed seed) {
    std::uint64_t state = seed.master_seed;
    (void)splitmix64(state);
    state ^= (seed.stream_index + 1) * 0xD1B54A32D192ED03ULL;
    std::uint32_t words[16];
    for (int i = 0; i < 8; ++i) {
      const std::uint64_t w = splitmix64(state);
      words[2 * i] = static_cast<std::uint32_t>(w);
      words[2 * i + 1] = static_cast<std::uint32_t>(w >> 32);
    }
    std::seed_seq seq(words, words + 16);
    engine_.seed(seq);
  }

  std::uint64_t next_u64() { return engine_(); }

  // 53-bit uniform on the open interval (0,1).
  double uniform01() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1p-53;
  }

  double exponential() { return -std::log(uniform01()); }

  double exponential(double rate) { return exponential() / rate; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace smcmix
