#pragma once

// End-to-end verification of the coefficient and permanent inequalities,
// the ratio identities behind them and the M = 2 cycle-count formula.
//
// Every inequality is checked exactly: sides that would involve irrational
// constants (2^{n/2}, M-th roots) are raised to a common power first, and
// each check is stored in the form lhs <= rhs.

#include <string>
#include <vector>

#include "permlab/coefficients.hpp"
#include "permlab/degree_m.hpp"

namespace permlab {

struct CheckRecord {
  std::string name;
  /// Human-readable statement of the compared quantities.
  std::string form;
  Rational lhs;
  Rational rhs;
  bool holds = false;
};

CheckRecord make_check(std::string name, std::string form, Rational lhs, Rational rhs);

struct BoundsOptions {
  /// Also run the Frank-Wolfe and Sinkhorn solvers for the analytic values.
  bool analytic = true;
  double tol = 1e-8;
  std::size_t max_iter = 100000;
};

struct BoundsReport {
  std::string theta_digest;
  std::size_t n = 0;
  unsigned order = 0;
  Rational perm;
  DegreeMValue degree_m_bethe;
  DegreeMValue degree_m_sinkhorn;
  /// (perm / perm_B,M)^M and (perm / perm_scS,M)^M.
  Rational bethe_ratio_power;
  Rational sinkhorn_ratio_power;
  bool has_analytic = false;
  double perm_bethe = 0.0;
  double perm_scs = 0.0;
  bool bethe_converged = false;
  bool sinkhorn_converged = false;
  std::vector<CheckRecord> checks;

  bool all_hold() const;
};

/// FNV-1a of the canonical "n;e00,e01,..." rendering, as 16 hex digits.
std::string theta_digest(const RationalMatrix& theta);

/// The four permanent-ratio inequalities for degree M. The Bethe value uses
/// the coefficient route, the Sinkhorn value the Kronecker permanent (exact up
/// to nM = 20, coefficient route beyond).
BoundsReport check_permanent_bounds(const RationalMatrix& theta, unsigned order, const BoundsOptions& options = {});

struct CoefficientBoundsRecord {
  FlowMatrix gamma;
  std::vector<CheckRecord> checks;
  bool holds = false;
};

/// The four coefficient-ratio inequalities for every gamma in Gamma_{M,n}.
std::vector<CoefficientBoundsRecord> check_coefficient_bounds(std::size_t n, unsigned order);

enum class RatioKind { Bethe, Sinkhorn };

struct RatioIdentity {
  /// (perm_X,M / perm)^M from a direct route.
  Rational direct;
  /// sum over M-tuples of prod p_theta(sigma_m) * C_X / C_M at their mean.
  Rational sum_expression;
  bool holds = false;
};

/// Throws SizeGuard if |S(theta)|^M > 10^7.
RatioIdentity ratio_identity(const RationalMatrix& theta, unsigned order, RatioKind kind);

struct M2Ratio {
  double ratio = 0.0;
  double via_cycles = 0.0;
  /// perm^2 / perm_B,2^2 == 1 / sum p p 2^{-c}, compared as rationals.
  bool exact_agreement = false;
  bool bounds_ok = false;
};

/// perm / perm_B,2 directly and through cycle counts. Throws SizeGuard for n > 6.
M2Ratio m2_ratio(const RationalMatrix& theta);

struct TrendRow {
  unsigned order = 0;
  unsigned k = 0;
  /// (1/M) log C_M(gamma^{(k, M-k)}).
  double log_coefficient_rate = 0.0;
  /// Modified Gibbs entropy of the same gamma.
  double entropy = 0.0;
  bool sandwich_holds = false;
};

TrendRow trend_row(unsigned order, unsigned k);

/// Rows for gamma^{(k, M-k)} with k = fraction * M. Throws NonIntegral when
/// fraction * M is not an integer and InvalidInput unless 0 <= fraction <= 1.
std::vector<TrendRow> asymptotic_trend(const Rational& fraction, const std::vector<unsigned>& orders);

}  // namespace permlab
