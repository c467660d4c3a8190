#include "permlab/permanent.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <thread>

namespace permlab {

namespace {

constexpr std::size_t kRyserBlocks = 64;

// Ryser over subsets [begin, end) of the Gray-code sequence. Works for any
// ring-like scalar with +=, -=, * and a zero.
template <typename Scalar>
Scalar ryser_range(std::span<const Scalar> a, std::size_t n, std::uint64_t begin, std::uint64_t end) {
  std::vector<Scalar> row_sums(n, Scalar(0));
  Scalar total(0);
  if (begin >= end) return total;
  // Materialize the Gray code of index `begin` directly.
  std::uint64_t gray = begin ^ (begin >> 1);
  for (std::size_t j = 0; j < n; ++j) {
    if ((gray >> j) & 1u) {
      for (std::size_t i = 0; i < n; ++i) row_sums[i] += a[i * n + j];
    }
  }
  for (std::uint64_t k = begin;;) {
    if (gray != 0) {
      Scalar product = row_sums[0];
      for (std::size_t i = 1; i < n; ++i) product *= row_sums[i];
      if (std::popcount(gray) % 2 == static_cast<int>(n % 2)) {
        total += product;
      } else {
        total -= product;
      }
    }
    if (++k == end) break;
    const std::size_t flip = static_cast<std::size_t>(std::countr_zero(k));
    const std::uint64_t bit = std::uint64_t{1} << flip;
    gray ^= bit;
    if (gray & bit) {
      for (std::size_t i = 0; i < n; ++i) row_sums[i] += a[i * n + flip];
    } else {
      for (std::size_t i = 0; i < n; ++i) row_sums[i] -= a[i * n + flip];
    }
  }
  return total;
}

template <typename Scalar>
Scalar ryser_blocked(std::span<const Scalar> a, std::size_t n) {
  const std::uint64_t subsets = std::uint64_t{1} << n;
  const std::size_t blocks = subsets < (1u << 12) ? 1 : kRyserBlocks;
  const std::uint64_t step = (subsets + blocks - 1) / blocks;
  std::vector<Scalar> partial(blocks, Scalar(0));
  const std::size_t workers = std::min(thread_count(), blocks);
  auto work = [&](std::size_t first) {
    for (std::size_t b = first; b < blocks; b += workers) {
      partial[b] = ryser_range<Scalar>(a, n, std::min(subsets, b * step), std::min(subsets, (b + 1) * step));
    }
  };
  if (workers <= 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }
  Scalar total(0);
  for (const auto& p : partial) total += p;
  return total;
}

}  // namespace

Rational perm_exact(const RationalMatrix& theta) {
  const std::size_t n = theta.size();
  if (n == 0) return Rational(1);
  if (n > 40) throw Error(ErrorCode::SizeGuard, "exact permanent limited to n <= 40");
  std::vector<Integer> scaled(n * n);
  Integer common_den(1);
  for (std::size_t i = 0; i < n; ++i) {
    Integer row_den(1);
    for (const auto& e : theta.row(i)) mpz_lcm(row_den.get_mpz_t(), row_den.get_mpz_t(), e.get_den_mpz_t());
    for (std::size_t j = 0; j < n; ++j) {
      scaled[i * n + j] = theta(i, j).get_num() * (row_den / theta(i, j).get_den());
    }
    common_den *= row_den;
  }
  Integer value = ryser_blocked<Integer>(scaled, n);
  if (value < 0) throw Error(ErrorCode::InvalidInput, "Ryser produced a negative permanent");
  Rational out(value, common_den);
  out.canonicalize();
  return out;
}

Rational perm_brute(const RationalMatrix& theta) {
  const std::size_t n = theta.size();
  if (n > 10) throw Error(ErrorCode::SizeGuard, "brute-force permanent limited to n <= 10");
  std::vector<std::size_t> images(n);
  for (std::size_t i = 0; i < n; ++i) images[i] = i;
  Rational total(0);
  do {
    Rational term(1);
    for (std::size_t i = 0; i < n && term != 0; ++i) term *= theta(i, images[i]);
    total += term;
  } while (std::next_permutation(images.begin(), images.end()));
  total.canonicalize();
  return total;
}

double perm_float(std::span<const double> entries, std::size_t n) {
  if (entries.size() != n * n) throw Error(ErrorCode::InvalidInput, "entry count differs from n * n");
  if (n == 0) return 1.0;
  if (n > 40) throw Error(ErrorCode::SizeGuard, "float permanent limited to n <= 40");
  return ryser_blocked<double>(entries, n);
}

double perm_float(const RationalMatrix& theta) {
  const auto d = theta.to_doubles();
  return perm_float(d, theta.size());
}

Rational perm_rect(const RationalMatrix& gamma, std::span<const std::size_t> rows,
                   std::span<const std::size_t> cols) {
  if (rows.size() != cols.size()) throw Error(ErrorCode::SizeMismatch, "row and column index sets differ in size");
  const std::size_t r = rows.size();
  if (r == 0) return Rational(1);
  std::vector<Rational> sub;
  sub.reserve(r * r);
  for (auto i : rows) {
    for (auto j : cols) {
      if (i >= gamma.size() || j >= gamma.size()) throw Error(ErrorCode::InvalidInput, "index out of range");
      sub.push_back(gamma(i, j));
    }
  }
  return perm_exact(RationalMatrix(r, std::move(sub)));
}

Rational permutation_weight(const RationalMatrix& theta, const Permutation& sigma) {
  Rational w(1);
  for (std::size_t i = 0; i < theta.size(); ++i) w *= theta(i, sigma(i));
  return w;
}

PermDistribution perm_distribution(const RationalMatrix& theta) {
  PermDistribution dist;
  dist.support = valid_permutations(theta);
  Rational total(0);
  for (const auto& sigma : dist.support) {
    dist.weights.push_back(permutation_weight(theta, sigma));
    total += dist.weights.back();
  }
  for (auto& w : dist.weights) {
    w /= total;
    w.canonicalize();
  }
  return dist;
}

}  // namespace permlab
