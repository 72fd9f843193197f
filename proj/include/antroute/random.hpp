#ifndef ANTROUTE_RANDOM_HPP
#define ANTROUTE_RANDOM_HPP

#include <cstdint>
#include <random>

namespace antroute {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Reproducible uniform stream. std::mt19937_64 output is fixed by the standard and the
/// double conversion below does not depend on the library's distributions.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed = 0) : engine_(seed) {}

  /// Independent stream for one walker of a seeded run.
  static RandomStream derive(std::uint64_t seed, std::uint64_t stream_id) {
    return RandomStream(splitmix64(seed ^ splitmix64(stream_id + 1)));
  }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace antroute

#endif
