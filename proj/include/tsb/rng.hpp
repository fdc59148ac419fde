#pragma once

// Counter-based random streams (Philox4x64-10).  A stream is addressed by
// (master seed, substream key, counter): substreams derive in O(1), replay is
// exact, and chunked Monte Carlo merges deterministically regardless of how
// many workers processed the chunks.

#include <array>
#include <cmath>
#include <cstdint>

namespace tsb {

namespace detail {

inline constexpr std::uint64_t kPhiloxM0 = 0xD2E7470EE14C6C93ULL;
inline constexpr std::uint64_t kPhiloxM1 = 0xCA5A826395121157ULL;
inline constexpr std::uint64_t kPhiloxW0 = 0x9E3779B97F4A7C15ULL;  // golden ratio
inline constexpr std::uint64_t kPhiloxW1 = 0xBB67AE8584CAA73BULL;  // sqrt(3)-1

inline std::uint64_t mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi) {
  const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  hi = static_cast<std::uint64_t>(p >> 64);
  return static_cast<std::uint64_t>(p);
}

// SplitMix64 finalizer; a bijection on 64-bit words used for key derivation.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Wichura's AS 241 rational approximation of the standard normal quantile,
// accurate to ~1e-16 across (0,1).
inline double inverse_normal_cdf(double p) {
  const double q = p - 0.5;
  if (std::fabs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    const double num =
        (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
              6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
            1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
          1.3314166789178437745e2) * r + 3.3871328727963666080e0);
    const double den =
        (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
              3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
            5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
          4.2313330701600911252e1) * r + 1.0);
    return q * num / den;
  }
  double r = q < 0.0 ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double value;
  if (r <= 5.0) {
    r -= 1.6;
    const double num =
        (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
              2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
            3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
          4.63033784615654529590e0) * r + 1.42343711074968357734e0);
    const double den =
        (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
              1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
            6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
          2.05319162663775882187e0) * r + 1.0);
    value = num / den;
  } else {
    r -= 5.0;
    const double num =
        (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
              1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
            2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
          5.46378491116411436990e0) * r + 6.65790464350110377720e0);
    const double den =
        (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
              1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
            1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
          5.99832206555887937690e-1) * r + 1.0);
    value = num / den;
  }
  return q < 0.0 ? -value : value;
}

}  // namespace detail

class PhiloxStream {
 public:
  explicit PhiloxStream(std::uint64_t master_seed, std::uint64_t substream_key = 0)
      : key0_(master_seed), key1_(substream_key) {}

  std::uint64_t master_seed() const { return key0_; }
  std::uint64_t substream_key() const { return key1_; }

  // Independent stream for (master_seed, key); pure, O(1), counter reset.
  PhiloxStream substream(std::uint64_t key) const {
    return PhiloxStream(key0_, detail::mix64(key1_ + detail::kPhiloxW0 * (key + 1)));
  }

  std::uint64_t next_u64() {
    if (index_ == 4) {
      fill_block();
      index_ = 0;
    }
    return block_[index_++];
  }

  // Uniform on [0,1) with 53-bit resolution; never returns 1.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on the open interval (0,1): u -> (u + 2^-53)(1 - 2^-52).
  double open01() { return (uniform01() + 0x1.0p-53) * (1.0 - 0x1.0p-52); }

  // Standard normal by inverse CDF; consumes exactly one uniform.
  double normal() { return detail::inverse_normal_cdf(open01()); }

 private:
  void fill_block() {
    std::uint64_t c0 = counter_++, c1 = 0, c2 = 0, c3 = 0;
    std::uint64_t k0 = key0_, k1 = key1_;
    for (int round = 0; round < 10; ++round) {
      std::uint64_t hi0, hi1;
      const std::uint64_t lo0 = detail::mulhilo(detail::kPhiloxM0, c0, hi0);
      const std::uint64_t lo1 = detail::mulhilo(detail::kPhiloxM1, c2, hi1);
      const std::uint64_t n0 = hi1 ^ c1 ^ k0;
      const std::uint64_t n1 = lo1;
      const std::uint64_t n2 = hi0 ^ c3 ^ k1;
      const std::uint64_t n3 = lo0;
      c0 = n0; c1 = n1; c2 = n2; c3 = n3;
      k0 += detail::kPhiloxW0;
      k1 += detail::kPhiloxW1;
    }
    block_ = {c0, c1, c2, c3};
  }

  std::uint64_t key0_ = 0;
  std::uint64_t key1_ = 0;
  std::uint64_t counter_ = 0;
  std::array<std::uint64_t, 4> block_{};
  int index_ = 4;
};

}  // namespace tsb
