#pragma once

#include <algorithm>
#include <initializer_list>
#include <random>
#include <string>
#include <vector>

#include "permlab/core.hpp"

namespace permlab::testing {

inline RationalMatrix matrix(std::initializer_list<std::initializer_list<const char*>> rows) {
  std::vector<Rational> entries;
  for (const auto& row : rows) {
    for (const char* e : row) entries.push_back(parse_rational(e));
  }
  return RationalMatrix(rows.size(), std::move(entries));
}

inline FlowMatrix flow(unsigned order, std::initializer_list<std::initializer_list<unsigned>> rows) {
  std::vector<unsigned> counts;
  for (const auto& row : rows) counts.insert(counts.end(), row.begin(), row.end());
  return FlowMatrix(rows.size(), order, std::move(counts));
}

/// Entries p/q with p in [lo, 9] and q in [1, 5].
inline RationalMatrix random_matrix(std::size_t n, std::mt19937_64& rng, unsigned lo = 1) {
  std::uniform_int_distribution<unsigned> num(lo, 9);
  std::uniform_int_distribution<unsigned> den(1, 5);
  std::vector<Rational> entries;
  for (std::size_t k = 0; k < n * n; ++k) {
    Rational e(num(rng), den(rng));
    e.canonicalize();
    entries.push_back(e);
  }
  return RationalMatrix(n, std::move(entries));
}

inline Permutation random_perm(std::size_t n, std::mt19937_64& rng) {
  std::vector<std::size_t> images(n);
  for (std::size_t i = 0; i < n; ++i) images[i] = i;
  std::shuffle(images.begin(), images.end(), rng);
  return Permutation(std::move(images));
}

/// Permutation from 1-based images.
inline Permutation perm1(std::initializer_list<std::size_t> images) {
  std::vector<std::size_t> v;
  for (auto x : images) v.push_back(x - 1);
  return Permutation(std::move(v));
}

}  // namespace permlab::testing
