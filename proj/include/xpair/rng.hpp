#pragma once

#include <cmath>
#include <cstdint>

namespace xpair {

namespace detail {
// 64-bit finalizer (splitmix64 / murmur3 style avalanche).
inline std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}
}  // namespace detail

// Counter-based splittable random stream.  Output k is a hash of
// (seed, stream, k), so a (seed, stream) pair reproduces the same
// sequence bit-for-bit on every platform, and distinct stream ids under
// one master seed give independent sequences that can be advanced on
// different threads with no shared state.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(derive_key(seed, stream)) {}

  std::uint64_t next_u64() {
    counter_ += 0x9E3779B97F4A7C15ULL;
    return detail::mix64(key_ ^ counter_);
  }

  // Uniform on [0,1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform on {0,...,n-1}, unbiased (modulo rejection).
  std::uint64_t next_below(std::uint64_t n) {
    const std::uint64_t min = (-n) % n;  // 2^64 mod n
    std::uint64_t x = next_u64();
    while (x < min) x = next_u64();
    return x % n;
  }

  int next_spin() { return (next_u64() >> 63) ? 1 : -1; }

  bool next_bernoulli(double p) { return next_double() < p; }

  // Standard normal via Marsaglia's polar transform; the pair of
  // variates produced per acceptance is cached.
  double next_gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * next_double() - 1.0;
      v = 2.0 * next_double() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    have_spare_ = true;
    return u * f;
  }

  // Child stream; substreams with distinct ids are independent.
  RngStream substream(std::uint64_t id) const {
    return RngStream(raw_tag{}, detail::mix64(key_ ^ detail::mix64(id ^ 0xA3EC647659359ACDULL)));
  }

 private:
  struct raw_tag {};
  RngStream(raw_tag, std::uint64_t key) : key_(key) {}

  static std::uint64_t derive_key(std::uint64_t seed, std::uint64_t stream) {
    return detail::mix64(seed ^ 0x8E2B6E1E0E1B5B4DULL) ^
           detail::mix64(detail::mix64(stream) + 0x452821E638D01377ULL);
  }

  std::uint64_t key_ = 0;
  std::uint64_t counter_ = 0;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace xpair
