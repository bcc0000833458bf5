#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace hindep {

// Substream path tags; distinct leading tags keep the seed derivations of
// different subsystems from ever colliding.
namespace stream_tag {
inline constexpr std::uint64_t directions = 1;
inline constexpr std::uint64_t process = 2;
inline constexpr std::uint64_t bootstrap = 3;
inline constexpr std::uint64_t mc_calibration = 4;
inline constexpr std::uint64_t mc_replicate = 5;
inline constexpr std::uint64_t sup_sampling = 6;
inline constexpr std::uint64_t mix_split = 7;
inline constexpr std::uint64_t permutation = 8;
inline constexpr std::uint64_t pilot = 9;
}  // namespace stream_tag

// splitmix64 finalizer; used both as a generator step and for seed mixing.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Derives a substream seed from a master seed and a path of integer tags.
// Substreams with distinct paths are statistically independent, which keeps
// Monte-Carlo replicates reproducible under any parallel schedule.
inline std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
  std::uint64_t s = master;
  std::uint64_t h = splitmix64_next(s);
  for (std::uint64_t tag : path) {
    s ^= tag + 0x9e3779b97f4a7c15ULL + (s << 6) + (s >> 2);
    h ^= splitmix64_next(s);
  }
  return h;
}

// Deterministic random source. Distribution sampling is implemented here
// rather than through <random> distributions so that the byte stream is
// pinned by this code alone, not by the standard library vendor.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static Rng stream(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
    return Rng(derive_seed(master, path));
  }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on (0, 1]; never returns 0 so log() below is safe.
  double uniform01() {
    return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
  }

  // Uniform on [0, 1).
  double uniform01_halfopen() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01_halfopen(); }

  // Standard normal via Box-Muller; the second value of each pair is cached.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01_halfopen();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  // Chi-squared with integer df, as a sum of squared normals.
  double chi_squared(int df) {
    double s = 0.0;
    for (int i = 0; i < df; ++i) {
      const double z = normal();
      s += z * z;
    }
    return s;
  }

  // Uniform integer in [0, n).
  int uniform_int(int n) {
    // 64-bit multiply-shift; bias is ~n/2^64 and irrelevant at our sizes.
    return static_cast<int>((static_cast<unsigned __int128>(engine_()) *
                             static_cast<unsigned __int128>(n)) >> 64);
  }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace hindep
