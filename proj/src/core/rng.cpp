#include "skorokhod/core/rng.hpp"

#include <cmath>
#include <numbers>

#include <boost/random/normal_distribution.hpp>

namespace skorokhod {
namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& lo, std::uint32_t& hi) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  lo = static_cast<std::uint32_t>(p);
  hi = static_cast<std::uint32_t>(p >> 32);
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t lo0, hi0, lo1, hi1;
    mulhilo(kPhiloxM0, ctr[0], lo0, hi0);
    mulhilo(kPhiloxM1, ctr[2], lo1, hi1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kPhiloxW0;
    key[1] += kPhiloxW1;
  }
  return ctr;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

RngSeed child_seed(const RngSeed& parent, std::uint64_t i) {
  return {parent.seed, splitmix64(splitmix64(parent.stream) ^ splitmix64(i + 0x632BE59BD9B4E019ULL))};
}

RandomStream::RandomStream(RngSeed seed, std::uint32_t lane)
    : key_{static_cast<std::uint32_t>(seed.seed), static_cast<std::uint32_t>(seed.seed >> 32)},
      stream_(seed.stream),
      lane_(lane) {}

void RandomStream::refill() {
  // Counter words: [index lo, index hi | lane << 16, stream lo, stream hi].
  // Word n of the stream is half of block n / 2, low half first.
  std::array<std::array<std::uint32_t, 4>, kBlocksPerRefill> ctr;
  for (std::size_t b = 0; b < kBlocksPerRefill; ++b) {
    const std::uint64_t index = counter_ + b;
    ctr[b] = {static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32) ^ (lane_ << 16),
              static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)};
  }
  std::array<std::uint32_t, 2> key = key_;
  for (int round = 0; round < 10; ++round) {
    for (auto& c : ctr) {
      std::uint32_t lo0, hi0, lo1, hi1;
      mulhilo(kPhiloxM0, c[0], lo0, hi0);
      mulhilo(kPhiloxM1, c[2], lo1, hi1);
      c = {hi1 ^ c[1] ^ key[0], lo1, hi0 ^ c[3] ^ key[1], lo0};
    }
    key[0] += kPhiloxW0;
    key[1] += kPhiloxW1;
  }
  for (std::size_t b = 0; b < kBlocksPerRefill; ++b) {
    buffer_[2 * b] = (static_cast<std::uint64_t>(ctr[b][1]) << 32) | ctr[b][0];
    buffer_[2 * b + 1] = (static_cast<std::uint64_t>(ctr[b][3]) << 32) | ctr[b][2];
  }
  counter_ += kBlocksPerRefill;
  used_ = 0;
}

double RandomStream::uniform() {
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RandomStream::normal() {
  // Stateless apart from the engine, so draws stay a pure function of the counter.
  return boost::random::normal_distribution<double>{}(*this);
}

}  // namespace skorokhod
