#pragma once

// Degree-M Bethe and scaled Sinkhorn permanents. Each is available through
// more than one route so the routes can be checked against each other:
//   Bethe:    average over all liftings | coefficient expansion | sampling
//   Sinkhorn: perm(theta (x) U_{M,M})   | coefficient expansion

#include <cstdint>
#include <optional>
#include <vector>

#include "permlab/coefficients.hpp"
#include "permlab/core.hpp"

namespace permlab {

/// n x n grid of permutations of [M]; block (i, j) is P^{(i,j)}.
class LiftingCollection {
 public:
  LiftingCollection(std::size_t n, unsigned order, std::vector<Permutation> blocks);

  /// Every block the identity of [M].
  static LiftingCollection identity(std::size_t n, unsigned order);

  std::size_t size() const noexcept { return n_; }
  unsigned order() const noexcept { return order_; }
  const Permutation& block(std::size_t i, std::size_t j) const { return blocks_[i * n_ + j]; }

 private:
  std::size_t n_;
  unsigned order_;
  std::vector<Permutation> blocks_;
};

/// nM x nM matrix whose block (i, j) is theta(i, j) * P^{(i,j)}.
RationalMatrix lift(const RationalMatrix& theta, const LiftingCollection& lifting);

struct DegreeMValue {
  /// value^M, exact when the route is exact.
  std::optional<Rational> exact_power;
  /// value^M as binary64.
  double power = 0.0;
  /// The M-th root.
  double value = 0.0;
  /// Sampling route only.
  std::size_t samples = 0;
  double standard_error = 0.0;
};

enum class BetheRoute { Coefficients, Enumerate, Sample };
enum class SinkhornRoute { Kronecker, Coefficients };

/// sum over gamma in Gamma_{M,n}(theta) of theta^{M gamma} * C(gamma).
Rational coefficient_sum(const RationalMatrix& theta, unsigned order, CoefficientKind kind);

/// Exact average of perm(theta lifted) over all (M!)^{n^2} liftings, visited in
/// mixed-radix order. Throws SizeGuard if (M!)^{n^2} > 10^6.
DegreeMValue degree_m_bethe_enumerate(const RationalMatrix& theta, unsigned order);
DegreeMValue degree_m_bethe_coefficients(const RationalMatrix& theta, unsigned order);
/// Monte-Carlo mean over `samples` uniform liftings drawn with a seeded
/// mt19937_64 and Fisher-Yates shuffles.
DegreeMValue degree_m_bethe_sample(const RationalMatrix& theta, unsigned order, std::size_t samples,
                                   std::uint64_t seed);

DegreeMValue degree_m_bethe(const RationalMatrix& theta, unsigned order, BetheRoute route,
                            std::size_t samples = 1000, std::uint64_t seed = 0);

/// Kronecker route is exact for nM <= 20 and binary64 beyond.
DegreeMValue degree_m_sinkhorn(const RationalMatrix& theta, unsigned order,
                               SinkhornRoute route = SinkhornRoute::Kronecker);

/// Uniform permutation of [size] by Fisher-Yates; draws are unbiased and
/// independent of the standard library's distribution implementation.
template <typename Rng>
Permutation random_permutation(std::size_t size, Rng& rng) {
  std::vector<std::size_t> images(size);
  for (std::size_t i = 0; i < size; ++i) images[i] = i;
  for (std::size_t i = size; i > 1; --i) {
    const std::uint64_t bound = i;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t draw;
    do {
      draw = rng();
    } while (draw >= limit);
    std::swap(images[i - 1], images[draw % bound]);
  }
  return Permutation(std::move(images));
}

}  // namespace permlab
