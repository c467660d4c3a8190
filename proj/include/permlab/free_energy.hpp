#pragma once

// Free-energy functions over the doubly stochastic polytope restricted to
// supp(theta), the two analytic permanents obtained by minimizing them, and
// the entropy functions that govern the growth of the coefficients.
//
// All logarithms are natural and 0 * log 0 = 0.

#include <cstddef>
#include <vector>

#include "permlab/core.hpp"

namespace permlab {

/// Real doubly stochastic matrix, row-major.
struct DoublyStochasticPoint {
  std::size_t n = 0;
  std::vector<double> entries;

  double operator()(std::size_t i, std::size_t j) const { return entries[i * n + j]; }
  /// max over rows and columns of |line sum - 1|.
  double line_deviation() const;

  static DoublyStochasticPoint from_flow(const FlowMatrix& flow);
  static DoublyStochasticPoint from_rational(const RationalMatrix& gamma);
};

/// -sum gamma log theta. Throws SupportViolation if gamma(i,j) > tol where
/// theta(i,j) = 0, InvalidInput if gamma is not doubly stochastic within 1e-9.
double average_energy(const DoublyStochasticPoint& gamma, const RationalMatrix& theta, double tol = 1e-12);

/// -sum gamma log gamma + sum (1 - gamma) log(1 - gamma).
double bethe_entropy(const DoublyStochasticPoint& gamma);
/// -n - sum gamma log gamma.
double scaled_sinkhorn_entropy(const DoublyStochasticPoint& gamma);

double bethe_free_energy(const DoublyStochasticPoint& gamma, const RationalMatrix& theta);
double scaled_sinkhorn_free_energy(const DoublyStochasticPoint& gamma, const RationalMatrix& theta);

struct MinimizationReport {
  DoublyStochasticPoint minimizer;
  double objective = 0.0;
  /// exp(-objective).
  double value = 0.0;
  std::size_t iterations = 0;
  /// Frank-Wolfe duality gap, or Sinkhorn L-infinity line-sum residual.
  double gap_or_residual = 0.0;
  bool converged = false;
  /// Objective (Frank-Wolfe) or residual (Sinkhorn) after every iteration.
  std::vector<double> trace;
};

/// Bethe permanent exp(-min F_B) by pairwise Frank-Wolfe over the support
/// polytope. The Sinkhorn fixed point, written as a convex combination of
/// permutations, is the start; each step shifts weight from the worst active
/// permutation to the assignment-problem vertex with an exact line search.
/// Stops once the duality gap is <= tol.
/// A non-converged run is reported with converged = false.
MinimizationReport minimize_bethe(const RationalMatrix& theta, double tol = 1e-8, std::size_t max_iter = 100000);

/// Scaled Sinkhorn permanent exp(-min F_scS) by alternate row/column
/// normalization until every line sum is within tol of 1.
MinimizationReport minimize_scaled_sinkhorn(const RationalMatrix& theta, double tol = 1e-12,
                                            std::size_t max_iter = 100000);

/// max H(p) over distributions on the permutations inside supp(gamma) whose
/// mean permutation matrix is gamma = T / M. Solved on the dual (log-partition
/// minus moments) by damped Newton. Throws SizeGuard for n > 6.
double gibbs_entropy_modified(const FlowMatrix& flow);

struct EntropyValues {
  double h_gibbs_mod = 0.0;
  double h_bethe = 0.0;
  double h_sinkhorn = 0.0;
};

EntropyValues entropy_values(const FlowMatrix& flow);

}  // namespace permlab
