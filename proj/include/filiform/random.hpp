#ifndef FILIFORM_RANDOM_HPP
#define FILIFORM_RANDOM_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "filiform/linalg.hpp"

namespace filiform {

inline constexpr std::uint64_t kDefaultSeed = 0;
inline constexpr std::size_t kDefaultTrials = 32;
inline constexpr long kCoefficientBound = 10;

/*
 * Seeded source of small integer coefficients in {-10, ..., 10}.
 *
 * mt19937_64 is fully specified by the standard, and the reduction below is
 * done by hand (rather than through uniform_int_distribution, whose output
 * is implementation-defined), so a given seed yields the same sequence on
 * every platform. The modulo bias is below 2^-59.
 */
class CoefficientSampler {
 public:
  explicit CoefficientSampler(std::uint64_t seed) : engine_(seed) {}

  Rational next() {
    const auto span = static_cast<std::uint64_t>(2 * kCoefficientBound + 1);
    return Rational(static_cast<long>(engine_() % span) - kCoefficientBound);
  }

  std::vector<Rational> next_vector(std::size_t count) {
    std::vector<Rational> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(next());
    return out;
  }

 private:
  std::mt19937_64 engine_;
};

/// sum_s coeffs[s] * basis[s]
inline Matrix combine(const std::vector<Matrix>& basis, const std::vector<Rational>& coeffs,
                      std::size_t n) {
  Matrix out(n, n);
  for (std::size_t s = 0; s < basis.size(); ++s)
    if (!coeffs[s].is_zero()) out += basis[s] * coeffs[s];
  return out;
}

}  // namespace filiform

#endif  // FILIFORM_RANDOM_HPP
