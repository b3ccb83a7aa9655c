#ifndef LHSBA_RANDOM_HPP
#define LHSBA_RANDOM_HPP

#include <cstdint>
#include <initializer_list>

namespace lhsba {

// Counter-based random stream built on the SplitMix64 finalizer.
//
// The n-th draw of a stream is a pure function of (key, n), and
// `substream(i)` derives an independent key from (key, i) without touching
// the parent's counter. Callers address randomness hierarchically, e.g.
// run -> iteration -> attempt -> dimension, so results never depend on the
// order in which sibling substreams are consumed.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : seed_(seed), key_(mix(seed ^ kSeedSalt)) {}

  std::uint64_t seed() const noexcept { return seed_; }

  RandomStream substream(std::uint64_t index) const noexcept {
    RandomStream child(0);
    child.seed_ = seed_;
    child.key_ = mix(key_ ^ mix(index + kGolden));
    return child;
  }

  std::uint64_t next_u64() noexcept {
    ++counter_;
    return mix(key_ + counter_ * kGolden);
  }

  // Uniform in the open interval (0, 1); never returns 0 or 1.
  double uniform_open() noexcept {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) noexcept {
    return lo + (hi - lo) * uniform_open();
  }

  // Uniform integer in [0, n), n > 0. Lemire's multiply-shift with rejection.
  std::uint64_t below(std::uint64_t n) noexcept {
    std::uint64_t x = next_u64();
    __uint128_t m = static_cast<__uint128_t>(x) * n;
    auto low = static_cast<std::uint64_t>(m);
    if (low < n) {
      const std::uint64_t threshold = (0 - n) % n;
      while (low < threshold) {
        x = next_u64();
        m = static_cast<__uint128_t>(x) * n;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
  static constexpr std::uint64_t kSeedSalt = 0x6c68736261ULL;

  std::uint64_t seed_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// Order-sensitive 64-bit hash of an index tuple.
inline std::uint64_t hash_indices(std::initializer_list<std::uint64_t> indices) noexcept {
  std::uint64_t h = RandomStream::mix(0x9e3779b97f4a7c15ULL);
  for (std::uint64_t i : indices) h = RandomStream::mix(h ^ (i + 0x632be59bd9b4e019ULL));
  return h;
}

}  // namespace lhsba

#endif  // LHSBA_RANDOM_HPP
