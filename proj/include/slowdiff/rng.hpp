#pragma once

// Philox4x32-10 counter-based generator (Salmon et al., SC 2011).
// Every (sample index, slot) pair maps to a fixed counter block, so draws are
// reproducible and independent of how samples are distributed over threads.

#include <cstdint>

namespace slowdiff {

namespace detail {
inline constexpr std::uint32_t kPhiloxW32A = 0x9E3779B9u;
inline constexpr std::uint32_t kPhiloxW32B = 0xBB67AE85u;
inline constexpr std::uint32_t kPhiloxM4x32A = 0xD2511F53u;
inline constexpr std::uint32_t kPhiloxM4x32B = 0xCD9E8D57u;

inline void philox_round(std::uint32_t c[4], const std::uint32_t k[2]) {
  const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM4x32A) * c[0];
  const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM4x32B) * c[2];
  const std::uint32_t out0 = static_cast<std::uint32_t>(p1 >> 32) ^ c[1] ^ k[0];
  const std::uint32_t out1 = static_cast<std::uint32_t>(p1);
  const std::uint32_t out2 = static_cast<std::uint32_t>(p0 >> 32) ^ c[3] ^ k[1];
  const std::uint32_t out3 = static_cast<std::uint32_t>(p0);
  c[0] = out0;
  c[1] = out1;
  c[2] = out2;
  c[3] = out3;
}
}  // namespace detail

inline void philox4x32(const std::uint32_t counter[4], const std::uint32_t key[2],
                       std::uint32_t out[4]) {
  std::uint32_t c[4] = {counter[0], counter[1], counter[2], counter[3]};
  std::uint32_t k[2] = {key[0], key[1]};
  for (int round = 0; round < 10; ++round) {
    detail::philox_round(c, k);
    k[0] += detail::kPhiloxW32A;
    k[1] += detail::kPhiloxW32B;
  }
  out[0] = c[0];
  out[1] = c[1];
  out[2] = c[2];
  out[3] = c[3];
}

class PhiloxRng {
 public:
  explicit PhiloxRng(std::uint64_t seed, std::uint32_t stream = 0)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        stream_(stream) {}

  /// 64 random bits for (sample, slot); slot indexes independent draws per sample.
  std::uint64_t bits(std::uint64_t sample, std::uint32_t slot) const {
    const std::uint32_t counter[4] = {slot >> 1, static_cast<std::uint32_t>(sample),
                                      static_cast<std::uint32_t>(sample >> 32), stream_};
    std::uint32_t out[4];
    philox4x32(counter, key_, out);
    const int half = (slot & 1) ? 2 : 0;
    return (static_cast<std::uint64_t>(out[half + 1]) << 32) | out[half];
  }

  /// Uniform in [0,1).
  double uniform01(std::uint64_t sample, std::uint32_t slot) const {
    return static_cast<double>(bits(sample, slot) >> 11) * 0x1.0p-53;
  }

  /// Uniform in the open interval (-1,1).
  double uniform_open_sym(std::uint64_t sample, std::uint32_t slot) const {
    const double k = static_cast<double>(bits(sample, slot) >> 11) + 0.5;
    return k * 0x1.0p-52 - 1.0;
  }

 private:
  std::uint32_t key_[2];
  std::uint32_t stream_;
};

}  // namespace slowdiff
