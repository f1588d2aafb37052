#pragma once

#include <cstdint>
#include <cmath>

namespace percolab {

// Counter-style splitmix generator. All randomness in the library flows
// through this class so that runs are reproducible bit for bit from a seed,
// independent of platform library versions and of how work is split across
// threads.
//
// Stream derivation: stream i of a master seed starts from
//     mix(seed ^ (i+1) * 0x9E3779B97F4A7C15)
// where mix() is the two-round xor-shift-multiply finalizer below. Batch
// decomposition therefore never changes results: trial i always sees the
// same generator no matter which worker runs it.
class Rng {
 public:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

  explicit Rng(std::uint64_t seed) : state_(seed) {}

  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
  }

  static std::uint64_t stream_seed(std::uint64_t master_seed, std::uint64_t index) {
    return mix(master_seed ^ (index + 1) * kGolden);
  }

  static Rng stream(std::uint64_t master_seed, std::uint64_t index) {
    return Rng(stream_seed(master_seed, index));
  }

  std::uint64_t next_u64() {
    state_ += kGolden;
    return mix(state_);
  }

  /// Uniform on [0,1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform on (0,1]; safe to feed into log() and negative powers.
  double uniform_pos() { return 1.0 - uniform(); }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller, one spare cached.
  double gaussian();

  /// Poisson draw: inversion below mean 30, transformed rejection above.
  std::uint64_t poisson(double mean);

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace percolab
