#pragma once

#include <cmath>
#include <cstdint>

namespace maxlra {

namespace detail {

// splitmix64 finalizer; also used to expand seeds and derive substreams.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace detail

// Derive a child seed from (base, a, b). Pure integer mixing, so streams
// keyed this way are identical on every platform.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a,
                                 std::uint64_t b = 0) {
  std::uint64_t z = detail::mix64(base ^ (0xD1B54A32D192ED03ULL * (a + 1)));
  return detail::mix64(z ^ (0x8CB92BA72F3D8DD7ULL * (b + 1)));
}

// xoshiro256++ seeded through splitmix64 (Blackman & Vigna). The integer
// stream is a pure function of the seed; floating-point outputs below use
// only shifts, scaling, sqrt and log, so a given seed reproduces the same
// matrices everywhere we run.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : seed_(seed) {
    std::uint64_t z = seed;
    for (auto& w : s_) {
      z = detail::mix64(z);
      w = z;
    }
  }

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform on [0,1) from the top 53 bits.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform on the open interval (-1,1); both endpoints excluded.
  double uniform_pm1() {
    double u;
    do {
      u = uniform01();
    } while (u == 0.0);
    return 2.0 * u - 1.0;
  }

  // Standard normal via the Marsaglia polar method (pairs cached).
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, q;
    do {
      u = uniform_pm1();
      v = uniform_pm1();
      q = u * u + v * v;
    } while (q >= 1.0 || q == 0.0);
    const double f = std::sqrt(-2.0 * std::log(q) / q);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
  }

  // +1 or -1 with equal probability.
  double rademacher() { return (next_u64() >> 63) ? 1.0 : -1.0; }

  // Stream for trial `index`, derived from the constructor seed only, so a
  // consumer may draw from the parent without disturbing its substreams.
  Rng substream(std::uint64_t index) const {
    return Rng(derive_seed(seed_, index));
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t seed_ = 0;
  std::uint64_t s_[4] = {};
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace maxlra
