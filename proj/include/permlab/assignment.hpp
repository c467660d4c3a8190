#pragma once

#include <cstddef>
#include <span>

#include "permlab/core.hpp"

namespace permlab {

struct Assignment {
  Permutation permutation;
  double cost = 0.0;
};

/// Minimum-cost perfect matching on an n x n cost matrix (row-major) by the
/// Hungarian method with row/column potentials, O(n^3). Cells outside
/// `allowed` are never used; throws EmptySupport if no allowed matching exists.
Assignment solve_assignment(std::span<const double> cost, std::size_t n, const SupportPattern* allowed = nullptr);

}  // namespace permlab
