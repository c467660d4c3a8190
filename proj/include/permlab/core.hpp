#pragma once

// Exact matrix and permutation types, support handling and enumeration of
// the scaled doubly stochastic lattice points.
//
// Indices are 0-based throughout the API.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "permlab/error.hpp"
#include "permlab/rational.hpp"

namespace permlab {

inline constexpr std::size_t kDefaultEnumerationLimit = 5'000'000;

/// Square matrix of non-negative exact rationals, stored row-major.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  /// n x n zero matrix.
  explicit RationalMatrix(std::size_t n);
  /// Row-major entries; throws InvalidInput if not n*n or any entry < 0.
  RationalMatrix(std::size_t n, std::vector<Rational> entries);

  static RationalMatrix identity(std::size_t n);
  static RationalMatrix ones(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  std::span<const Rational> row(std::size_t i) const { return {entries_.data() + i * n_, n_}; }
  std::span<const Rational> entries() const noexcept { return entries_; }

  std::vector<double> to_doubles() const;

  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Rational> entries_;
};

/// Bijection of {0..n-1}; images[i] = sigma(i).
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<std::size_t> images);

  static Permutation identity(std::size_t n);

  std::size_t size() const noexcept { return images_.size(); }
  std::size_t operator()(std::size_t i) const { return images_[i]; }
  std::span<const std::size_t> images() const noexcept { return images_; }

  /// Entry (i, j) of the permutation matrix P_sigma.
  bool matrix_entry(std::size_t i, std::size_t j) const { return images_[i] == j; }

  Permutation inverse() const;
  /// (*this o other)(i) = (*this)(other(i)).
  Permutation compose(const Permutation& other) const;

  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::size_t> images_;
};

/// All n! permutations in lexicographic order of their image sequences.
std::vector<Permutation> all_permutations(std::size_t n);

class SupportPattern {
 public:
  SupportPattern() = default;
  SupportPattern(std::size_t n, std::vector<bool> mask);

  static SupportPattern full(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  bool operator()(std::size_t i, std::size_t j) const { return mask_[i * n_ + j]; }

  friend bool operator==(const SupportPattern&, const SupportPattern&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<bool> mask_;
};

/// Integer matrix T = M * gamma with every row and column summing to M.
class FlowMatrix {
 public:
  FlowMatrix() = default;
  /// Throws InvalidInput unless counts are non-negative with all line sums M.
  FlowMatrix(std::size_t n, unsigned order, std::vector<unsigned> counts);

  /// M * P_sigma.
  static FlowMatrix scaled_permutation(const Permutation& sigma, unsigned order);
  /// T = M * gamma; throws NonIntegral if M * gamma has a non-integer entry.
  static FlowMatrix from_gamma(const RationalMatrix& gamma, unsigned order);

  std::size_t size() const noexcept { return n_; }
  /// The M in Gamma_{M,n}.
  unsigned order() const noexcept { return order_; }
  unsigned operator()(std::size_t i, std::size_t j) const { return counts_[i * n_ + j]; }
  std::span<const unsigned> counts() const noexcept { return counts_; }

  /// gamma = T / M.
  Rational gamma(std::size_t i, std::size_t j) const { return Rational(counts_[i * n_ + j], order_); }
  RationalMatrix gamma_matrix() const;

  /// Canonical byte encoding: order, n, then row-major counts.
  std::string key() const;

  friend auto operator<=>(const FlowMatrix&, const FlowMatrix&) = default;

 private:
  std::size_t n_ = 0;
  unsigned order_ = 0;
  std::vector<unsigned> counts_;
};

/// mask(i, j) <=> theta(i, j) > 0.
SupportPattern support(const RationalMatrix& theta);
SupportPattern support(const FlowMatrix& flow);

/// Permutations whose matrix lies inside the pattern, lexicographic order.
/// May be empty.
std::vector<Permutation> permutations_within(const SupportPattern& pattern);

/// {sigma : prod_i theta(i, sigma(i)) > 0} in lexicographic order.
/// Throws EmptySupport when no such sigma exists.
std::vector<Permutation> valid_permutations(const RationalMatrix& theta);

/// Every element of Gamma_{M,n} (optionally restricted to a support),
/// produced by row-major backtracking with values tried in descending order.
/// Throws SizeGuard once more than `limit` matrices would be produced.
std::vector<FlowMatrix> enumerate_flow_matrices(std::size_t n, unsigned order,
                                                const std::optional<SupportPattern>& pattern = std::nullopt,
                                                std::size_t limit = kDefaultEnumerationLimit);

/// theta (x) U_{M,M}: block (i, j) is filled with theta(i, j) / M.
RationalMatrix kron_uniform(const RationalMatrix& theta, unsigned order);

/// prod_{i,j} theta(i,j)^{T(i,j)}, with 0^0 = 1.
Rational monomial(const RationalMatrix& theta, const FlowMatrix& flow);

/// Worker count from PERMLAB_THREADS (0 or unset = hardware concurrency).
std::size_t thread_count();

}  // namespace permlab
