#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

namespace skorokhod {

/// Identifies one reproducible random stream. Same (seed, stream) always gives
/// the same sequence; different stream ids give independent sequences.
struct RngSeed {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  bool operator==(const RngSeed&) const = default;
};

/// Philox4x32-10 block function (Salmon et al., SC'11).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// SplitMix64 finalizer; used to derive child stream ids.
std::uint64_t splitmix64(std::uint64_t x);

/// Stream id of the i-th child of `parent`, e.g. one stream per Monte Carlo path.
RngSeed child_seed(const RngSeed& parent, std::uint64_t i);

/// Counter-based sequential source. Draw n of lane L is a pure function of
/// (seed, stream, L, n), so a shorter run is always a prefix of a longer one.
class RandomStream {
 public:
  explicit RandomStream(RngSeed seed, std::uint32_t lane = 0);

  /// Uniform on the open interval (0, 1), 53 bits of resolution.
  double uniform();

  /// Standard normal (ziggurat, Boost.Random) driven by next_u64().
  double normal();

  std::uint64_t next_u64() {
    if (used_ == kBufferedWords) refill();
    return buffer_[used_++];
  }

  // UniformRandomBitGenerator interface.
  using result_type = std::uint64_t;
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()() { return next_u64(); }

 private:
  void refill();

  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_;
  std::uint32_t lane_;
  // Several counter blocks are evaluated per refill so their rounds overlap.
  static constexpr std::size_t kBlocksPerRefill = 4;
  static constexpr std::size_t kBufferedWords = 2 * kBlocksPerRefill;

  std::uint64_t counter_ = 0;
  std::array<std::uint64_t, kBufferedWords> buffer_{};
  std::size_t used_ = kBufferedWords;
};

}  // namespace skorokhod
