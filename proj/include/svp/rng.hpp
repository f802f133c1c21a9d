/* rng.hpp — deterministic, platform-independent pseudo-randomness.
 *
 * Every stochastic component of the toolkit draws from this SplitMix64
 * generator.  We deliberately avoid std::uniform_int_distribution and
 * friends: their outputs are implementation-defined and would break
 * bit-for-bit reproducibility of experiment tables across compilers.
 *
 * Child streams are derived with derive_seed(master, index); the mixing
 * constant differs from the SplitMix64 increment, so a child stream never
 * aliases a shifted copy of its parent.
 */
#pragma once

#include <cstdint>
#include <vector>

namespace svp {

/// SplitMix64 (Steele, Lea, Vigna).  Passes BigCrush; 64-bit state.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  /// Next raw 64-bit word.
  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, n) by rejection sampling (no modulo bias).
  std::uint64_t next_below(std::uint64_t n) {
    if (n == 0)
      return 0;
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t v;
    do {
      v = next_u64();
    } while (v >= limit);
    return v % n;
  }

  /// Uniform integer in [lo, hi] inclusive.
  std::int64_t next_in_range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(
                    next_below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

private:
  std::uint64_t state_;
};

/// Stable child-seed derivation: children of one master seed form
/// independent-looking streams, and the mapping is frozen (experiment
/// row i always sees the same seed for a given master seed).
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x632be59bd9b4e019ULL * (index + 1);
  z = (z ^ (z >> 31)) * 0x7fb5d329728ea185ULL;
  z = (z ^ (z >> 27)) * 0x81dadef4bc2dd44dULL;
  return z ^ (z >> 33);
}

/// Fisher-Yates shuffle driven by our Rng (std::shuffle is
/// implementation-defined in its consumption pattern).
template <class T> void shuffle(std::vector<T> &v, Rng &rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng.next_below(i));
    std::swap(v[i - 1], v[j]);
  }
}

} // namespace svp
