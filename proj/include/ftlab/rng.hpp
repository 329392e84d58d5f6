#pragma once

#include <cstdint>
#include <cmath>
#include <numbers>

namespace ftlab {

/// Counter-based random stream: every draw is a pure function of
/// (root seed, stream tag, counter), so results do not depend on call
/// order, resolution, or threading.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t s) : state(s) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in (0, 1): never returns 0, safe under log().
  double uniform() {
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller (first of the pair only; call twice
  /// for independent draws -- simplicity over spare caching keeps the
  /// stream stateless apart from the counter).
  double gaussian() {
    const double u = uniform();
    const double v = uniform();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
  }
};

/// Mixes a root seed with a purpose tag and a counter into a stream seed.
inline std::uint64_t mix_seed(std::uint64_t root, std::uint64_t tag, std::uint64_t counter) {
  SplitMix64 m(root ^ (tag * 0x9e3779b97f4a7c15ULL) ^ (counter * 0xd1342543de82ef95ULL));
  m.next();
  return m.next();
}

/// Purpose tags for the documented seed fan-out. One root seed in the config
/// reproduces every random draw of a study.
namespace seed_tag {
inline constexpr std::uint64_t regularity_field = 0x01;
inline constexpr std::uint64_t fbm_path = 0x02;
inline constexpr std::uint64_t levy_field = 0x03;
inline constexpr std::uint64_t smooth_test = 0x04;
inline constexpr std::uint64_t test_path = 0x05;
inline constexpr std::uint64_t covariance_study = 0x06;
inline constexpr std::uint64_t product_study = 0x07;
}  // namespace seed_tag

}  // namespace ftlab
