#ifndef PLS_RNG_HPP
#define PLS_RNG_HPP

#include <cmath>
#include <cstdint>

namespace pls::rng {

/// SplitMix64 counter generator with Box-Muller normals. Chosen over
/// std::normal_distribution so that streams are identical across standard
/// library implementations; every synthetic problem is a pure function of
/// its seed.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in (0, 1); the zero offset keeps log() finite in Box-Muller.
  double uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal(double mean = 0.0, double sd = 1.0) {
    if (have_spare_) {
      have_spare_ = false;
      return mean + sd * spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * M_PI * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return mean + sd * radius * std::cos(angle);
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

/// Mixes stream identifiers (scenario, seed, purpose) into one 64-bit seed.
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  SplitMix64 g(a * 0x9e3779b97f4a7c15ULL + b + 1);
  return g.next_u64();
}

}  // namespace pls::rng

#endif  // PLS_RNG_HPP
