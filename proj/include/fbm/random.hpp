#ifndef FBM_RANDOM_HPP
#define FBM_RANDOM_HPP

// Counter-based random streams. Every replication owns the stream
// (master_seed, stream_id); the draws it sees depend on nothing else, so
// results do not change with the number of worker threads.

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <span>

namespace fbm {

/// Philox4x32-10 block function (Salmon et al., SC'11).
class Philox4x32 {
public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter block(Counter ctr, Key key) {
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += kWeyl0;
        key[1] += kWeyl1;
      }
      const std::uint64_t p0 = std::uint64_t{kMul0} * ctr[0];
      const std::uint64_t p1 = std::uint64_t{kMul1} * ctr[2];
      const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
      const auto lo0 = static_cast<std::uint32_t>(p0);
      const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
      const auto lo1 = static_cast<std::uint32_t>(p1);
      ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
  }

private:
  static constexpr std::uint32_t kMul0 = 0xD2511F53u;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
};

/// splitmix64 finalizer; used to derive independent master seeds for
/// separate ensembles from one user seed.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (tag + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Identifies one independent random stream.
struct RngSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;
};

/// Sub-streams of one RngSpec, so that e.g. the random horizon of a
/// replication and its path noise never share draws.
enum class Substream : std::uint32_t { kPathNoise = 0, kHorizon = 1, kAuxiliary = 2 };

/// Sequential 32-bit draws from a counter-based stream. Satisfies
/// UniformRandomBitGenerator.
class CounterRng {
public:
  using result_type = std::uint32_t;

  explicit CounterRng(RngSpec spec, Substream sub = Substream::kPathNoise)
      : key_{static_cast<std::uint32_t>(spec.master_seed),
             static_cast<std::uint32_t>(spec.master_seed >> 32)},
        stream_lo_(static_cast<std::uint32_t>(spec.stream_id)),
        stream_hi_(static_cast<std::uint32_t>(spec.stream_id >> 32)),
        substream_(static_cast<std::uint32_t>(sub)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    if (used_ == 4) {
      buffer_ = Philox4x32::block({block_, substream_, stream_lo_, stream_hi_}, key_);
      ++block_;
      used_ = 0;
    }
    return buffer_[used_++];
  }

  /// Uniform double in the open interval (0, 1) with 53 random bits.
  double uniform() {
    const std::uint64_t hi = (*this)() >> 5;  // 27 bits
    const std::uint64_t lo = (*this)() >> 6;  // 26 bits
    const std::uint64_t bits = (hi << 26) | lo;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
  }

  /// Exponential variate with the given rate.
  double exponential(double rate) { return -std::log(uniform()) / rate; }

private:
  Philox4x32::Key key_;
  std::uint32_t stream_lo_;
  std::uint32_t stream_hi_;
  std::uint32_t substream_;
  std::uint32_t block_ = 0;
  Philox4x32::Counter buffer_{};
  int used_ = 4;
};

/// Fills `out` with independent standard normals (Box-Muller, pairs).
inline void fill_standard_normal(CounterRng& rng, std::span<double> out) {
  std::size_t i = 0;
  for (; i + 1 < out.size(); i += 2) {
    const double radius = std::sqrt(-2.0 * std::log(rng.uniform()));
    const double angle = 2.0 * std::numbers::pi * rng.uniform();
    out[i] = radius * std::cos(angle);
    out[i + 1] = radius * std::sin(angle);
  }
  if (i < out.size()) {
    const double radius = std::sqrt(-2.0 * std::log(rng.uniform()));
    out[i] = radius * std::cos(2.0 * std::numbers::pi * rng.uniform());
  }
}

}  // namespace fbm

#endif  // FBM_RANDOM_HPP
