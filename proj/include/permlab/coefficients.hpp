#pragma once

// The three coefficient families that make perm^M, (degree-M Bethe)^M and
// (degree-M scaled Sinkhorn)^M linear in the monomials theta^{M gamma}, the
// peeling map behind their recursions, and the n = 2 Pascal-triangle tables.

#include <cstddef>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "permlab/core.hpp"

namespace permlab {

enum class CoefficientKind { Gibbs, Bethe, Sinkhorn };

std::string_view kind_name(CoefficientKind kind);
/// "gibbs" | "bethe" | "sinkhorn"; throws InvalidInput otherwise.
CoefficientKind parse_kind(std::string_view name);

/// Permutations sigma with T(i, sigma(i)) >= 1 for every i, i.e. the
/// possible first members of a decomposition of gamma = T / M.
std::vector<Permutation> decomposition_starts(const FlowMatrix& flow);

/// T - P_sigma as an element of Gamma_{M-1,n}. Requires M >= 2; throws
/// InvalidPeel when some T(i, sigma(i)) is zero.
FlowMatrix peel(const FlowMatrix& flow, const Permutation& sigma);

/// Rows/columns of gamma holding a fractional entry, the restricted matrix
/// gamma_{R,C} and perm(hat gamma_{R,C}) evaluated as
///   sum_sigma prod gamma (1 - gamma)  /  prod_{R x C} (1 - gamma).
struct FractionalCore {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
  RationalMatrix core;
  Rational perm_core{1};

  std::size_t r() const noexcept { return rows.size(); }
};

FractionalCore fractional_core(const FlowMatrix& flow);

/// Entries of hat gamma_{R,C} in the r-th-root form (binary64, row-major).
std::vector<double> normalized_core(const FractionalCore& fc);

/// Memoized count of M-tuples of permutations whose average is gamma.
/// Safe to share between threads: lookups take a shared lock, inserts a
/// unique lock, and racing inserts of the same key keep the first value.
class GibbsCounter {
 public:
  Integer operator()(const FlowMatrix& flow);
  std::size_t cache_size() const;

 private:
  mutable std::shared_mutex mutex_;
  std::unordered_map<std::string, Integer> memo_;
};

/// C_M(gamma) via the peeling recursion, memoized in a process-wide cache.
Integer c_gibbs(const FlowMatrix& flow);

/// Literal count over S_n^M. Throws SizeGuard if (n!)^M > 10^7.
Integer c_gibbs_brute(const FlowMatrix& flow);

/// (M!)^{2n - n^2} prod (M - T)! / T!
Rational c_bethe(const FlowMatrix& flow);

/// M^{-nM} (M!)^{2n} / prod T!
Rational c_sinkhorn(const FlowMatrix& flow);

struct CoefficientTriple {
  FlowMatrix gamma;
  Integer c_gibbs;
  Rational c_bethe;
  Rational c_sinkhorn;
};

CoefficientTriple coefficients(const FlowMatrix& flow);

/// (M / (M-1))^{M-1}.
Rational chi(unsigned order);

struct RecursionCheck {
  Rational lhs;
  Rational rhs;
  bool holds = false;
};

/// Both sides of the one-step peeling recursion for the given family,
/// evaluated exactly. The Gibbs left side is the brute-force count when that
/// is within its guard. Requires M >= 2.
RecursionCheck verify_recursion(CoefficientKind kind, const FlowMatrix& flow);

/// Number of cycles of length > 1 in sigma1 o sigma2^{-1}.
std::size_t cycle_count(const Permutation& sigma1, const Permutation& sigma2);

/// T = ((k1, k2), (k2, k1)) with M = k1 + k2.
FlowMatrix pascal_flow(unsigned k1, unsigned k2);

struct PascalEntry {
  unsigned order;
  unsigned k1;
  Rational value;
};

/// Coefficient of every gamma^{(k1,k2)}, k1 + k2 = M, for M = 1..max_order,
/// ordered by M then k1.
std::vector<PascalEntry> pascal_table(CoefficientKind kind, unsigned max_order);

/// CSV with header "M,k1,value" and exact fraction values.
std::string pascal_csv(const std::vector<PascalEntry>& table);

}  // namespace permlab
