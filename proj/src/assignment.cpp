#include "permlab/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace permlab {

Assignment solve_assignment(std::span<const double> cost, std::size_t n, const SupportPattern* allowed) {
  if (cost.size() != n * n) throw Error(ErrorCode::InvalidInput, "cost matrix has wrong size");
  if (allowed != nullptr && allowed->size() != n) throw Error(ErrorCode::DimensionMismatch, "support size differs");
  if (n == 0) return {Permutation{}, 0.0};

  // Forbidden cells get a penalty larger than any allowed matching can cost.
  double span = 0.0;
  for (std::size_t k = 0; k < n * n; ++k) {
    if (allowed == nullptr || (*allowed)(k / n, k % n)) span = std::max(span, std::abs(cost[k]));
  }
  const double forbidden = (span + 1.0) * static_cast<double>(4 * n + 4);
  auto c = [&](std::size_t i, std::size_t j) {
    return (allowed == nullptr || (*allowed)(i, j)) ? cost[i * n + j] : forbidden;
  };

  // 1-based arrays; column 0 is the virtual start.
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    match[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = match[j0];
      double delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = c(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<std::size_t> images(n);
  double total = 0.0;
  for (std::size_t j = 1; j <= n; ++j) {
    const std::size_t i = match[j] - 1;
    images[i] = j - 1;
    if (allowed != nullptr && !(*allowed)(i, j - 1)) {
      throw Error(ErrorCode::EmptySupport, "no perfect matching inside the support");
    }
    total += cost[i * n + (j - 1)];
  }
  return {Permutation(std::move(images)), total};
}

}  // namespace permlab
