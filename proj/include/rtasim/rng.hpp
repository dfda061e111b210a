#pragma once

#include <cassert>
#include <cmath>
#include <cstdint>
#include <random>

namespace rtasim {

// SplitMix64 finalizer, used to derive well-spread substream seeds.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Named substreams of a run: one master seed fans out into independent
// streams so that e.g. scheduler draws never perturb arrival times.
enum class StreamDomain : std::uint64_t {
  Arrivals = 1,
  StationChoice = 2,
  Channel = 3,
  Scheduler = 4,
};

inline std::uint64_t derive_seed(std::uint64_t master, StreamDomain domain,
                                 std::uint64_t index = 0) {
  std::uint64_t s = mix64(master);
  s = mix64(s ^ (static_cast<std::uint64_t>(domain) * 0xd1342543de82ef95ULL));
  s = mix64(s ^ (index * 0xaf251af3b0f025b5ULL));
  return s;
}

// A seeded random stream. The engine is std::mt19937_64 (bit-exact across
// platforms); the derived draws below are implemented here rather than via
// std::*_distribution so that results do not depend on the standard library
// in use.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform double in [0, 1), 53 random bits.
  double u01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Exact (unbiased) uniform integer in [0, bound). bound must be >= 1.
  std::uint32_t uniform_index(std::uint32_t bound) {
    assert(bound > 0);
    const std::uint64_t b = bound;
    std::uint64_t x = next_u64();
    unsigned __int128 m = static_cast<unsigned __int128>(x) * b;
    auto low = static_cast<std::uint64_t>(m);
    if (low < b) {
      const std::uint64_t threshold = (0 - b) % b;
      while (low < threshold) {
        x = next_u64();
        m = static_cast<unsigned __int128>(x) * b;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint32_t>(m >> 64);
  }

  // True with probability p. p=0 never fires, p=1 always does.
  bool bernoulli(double p) { return u01() < p; }

  // Exponential inter-arrival time with the given rate (mean 1/rate).
  double exponential(double rate) {
    assert(rate > 0.0);
    return -std::log1p(-u01()) / rate;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace rtasim
