#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "permlab/core.hpp"

namespace permlab {

/// Exact permanent by Ryser's inclusion-exclusion over column subsets in
/// Gray-code order. Each row is cleared of denominators first so the subset
/// loop runs over integers.
Rational perm_exact(const RationalMatrix& theta);

/// Literal sum over all n! permutations. Throws SizeGuard for n > 10.
Rational perm_brute(const RationalMatrix& theta);

/// Binary64 Ryser. No exactness guarantee; the subset range is split into
/// fixed blocks reduced in block order, so the result does not depend on the
/// worker count.
double perm_float(std::span<const double> entries, std::size_t n);
double perm_float(const RationalMatrix& theta);

/// Permanent of the sub-matrix rows x cols. Empty index sets give 1.
/// Throws SizeMismatch if |rows| != |cols|.
Rational perm_rect(const RationalMatrix& gamma, std::span<const std::size_t> rows,
                   std::span<const std::size_t> cols);

/// p_theta(sigma) = prod_i theta(i, sigma(i)) / perm(theta) over the valid
/// permutations.
struct PermDistribution {
  std::vector<Permutation> support;
  std::vector<Rational> weights;
};

PermDistribution perm_distribution(const RationalMatrix& theta);

/// prod_i theta(i, sigma(i)).
Rational permutation_weight(const RationalMatrix& theta, const Permutation& sigma);

}  // namespace permlab
