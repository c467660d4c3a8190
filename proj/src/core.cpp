#include "permlab/core.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <string>
#include <thread>

namespace permlab {

RationalMatrix::RationalMatrix(std::size_t n) : n_(n), entries_(n * n, Rational(0)) {}

RationalMatrix::RationalMatrix(std::size_t n, std::vector<Rational> entries)
    : n_(n), entries_(std::move(entries)) {
  if (entries_.size() != n_ * n_) {
    throw Error(ErrorCode::InvalidInput, "expected " + std::to_string(n_ * n_) + " entries, got " +
                                             std::to_string(entries_.size()));
  }
  for (auto& e : entries_) {
    e.canonicalize();
    if (e < 0) throw Error(ErrorCode::InvalidInput, "negative matrix entry " + to_string(e));
  }
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  std::vector<Rational> e(n * n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1;
  return RationalMatrix(n, std::move(e));
}

RationalMatrix RationalMatrix::ones(std::size_t n) {
  return RationalMatrix(n, std::vector<Rational>(n * n, Rational(1)));
}

std::vector<double> RationalMatrix::to_doubles() const {
  std::vector<double> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(to_double(e));
  return out;
}

Permutation::Permutation(std::vector<std::size_t> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (auto v : images_) {
    if (v >= images_.size() || seen[v]) {
      throw Error(ErrorCode::InvalidInput, "image sequence is not a permutation");
    }
    seen[v] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::size_t> images(n);
  std::iota(images.begin(), images.end(), std::size_t{0});
  return Permutation(std::move(images));
}

Permutation Permutation::inverse() const {
  std::vector<std::size_t> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i]] = i;
  return Permutation(std::move(inv));
}

Permutation Permutation::compose(const Permutation& other) const {
  if (other.size() != size()) throw Error(ErrorCode::SizeMismatch, "composing permutations of different size");
  std::vector<std::size_t> out(size());
  for (std::size_t i = 0; i < size(); ++i) out[i] = images_[other.images_[i]];
  return Permutation(std::move(out));
}

std::vector<Permutation> all_permutations(std::size_t n) {
  return permutations_within(SupportPattern::full(n));
}

SupportPattern::SupportPattern(std::size_t n, std::vector<bool> mask) : n_(n), mask_(std::move(mask)) {
  if (mask_.size() != n_ * n_) throw Error(ErrorCode::InvalidInput, "support mask has wrong size");
}

SupportPattern SupportPattern::full(std::size_t n) { return SupportPattern(n, std::vector<bool>(n * n, true)); }

FlowMatrix::FlowMatrix(std::size_t n, unsigned order, std::vector<unsigned> counts)
    : n_(n), order_(order), counts_(std::move(counts)) {
  if (order_ == 0) throw Error(ErrorCode::InvalidInput, "flow matrix order M must be >= 1");
  if (counts_.size() != n_ * n_) throw Error(ErrorCode::InvalidInput, "flow matrix has wrong entry count");
  for (std::size_t i = 0; i < n_; ++i) {
    unsigned long row = 0;
    unsigned long col = 0;
    for (std::size_t j = 0; j < n_; ++j) {
      row += counts_[i * n_ + j];
      col += counts_[j * n_ + i];
    }
    if (row != order_ || col != order_) {
      throw Error(ErrorCode::InvalidInput, "flow matrix line sums must all equal M = " + std::to_string(order_));
    }
  }
}

FlowMatrix FlowMatrix::scaled_permutation(const Permutation& sigma, unsigned order) {
  const std::size_t n = sigma.size();
  std::vector<unsigned> counts(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) counts[i * n + sigma(i)] = order;
  return FlowMatrix(n, order, std::move(counts));
}

FlowMatrix FlowMatrix::from_gamma(const RationalMatrix& gamma, unsigned order) {
  const std::size_t n = gamma.size();
  std::vector<unsigned> counts(n * n);
  for (std::size_t k = 0; k < n * n; ++k) {
    Rational scaled = gamma.entries()[k] * order;
    scaled.canonicalize();
    if (scaled.get_den() != 1) {
      throw Error(ErrorCode::NonIntegral, "M * gamma has non-integer entry " + to_string(scaled));
    }
    counts[k] = static_cast<unsigned>(scaled.get_num().get_ui());
  }
  return FlowMatrix(n, order, std::move(counts));
}

RationalMatrix FlowMatrix::gamma_matrix() const {
  std::vector<Rational> e;
  e.reserve(counts_.size());
  for (auto c : counts_) {
    Rational v(c, order_);
    v.canonicalize();
    e.push_back(v);
  }
  return RationalMatrix(n_, std::move(e));
}

std::string FlowMatrix::key() const {
  std::string out;
  out.reserve(sizeof(unsigned) * (counts_.size() + 2));
  auto put = [&out](unsigned v) { out.append(reinterpret_cast<const char*>(&v), sizeof v); };
  put(order_);
  put(static_cast<unsigned>(n_));
  for (auto c : counts_) put(c);
  return out;
}

SupportPattern support(const RationalMatrix& theta) {
  const std::size_t n = theta.size();
  std::vector<bool> mask(n * n);
  for (std::size_t k = 0; k < n * n; ++k) mask[k] = theta.entries()[k] > 0;
  return SupportPattern(n, std::move(mask));
}

SupportPattern support(const FlowMatrix& flow) {
  const std::size_t n = flow.size();
  std::vector<bool> mask(n * n);
  for (std::size_t k = 0; k < n * n; ++k) mask[k] = flow.counts()[k] > 0;
  return SupportPattern(n, std::move(mask));
}

namespace {

void extend_permutation(const SupportPattern& pattern, std::size_t row, std::vector<std::size_t>& images,
                        std::vector<bool>& used, std::vector<Permutation>& out) {
  const std::size_t n = pattern.size();
  if (row == n) {
    out.emplace_back(images);
    return;
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (used[j] || !pattern(row, j)) continue;
    used[j] = true;
    images[row] = j;
    extend_permutation(pattern, row + 1, images, used, out);
    used[j] = false;
  }
}

}  // namespace

std::vector<Permutation> permutations_within(const SupportPattern& pattern) {
  std::vector<Permutation> out;
  std::vector<std::size_t> images(pattern.size());
  std::vector<bool> used(pattern.size(), false);
  extend_permutation(pattern, 0, images, used, out);
  return out;
}

std::vector<Permutation> valid_permutations(const RationalMatrix& theta) {
  auto out = permutations_within(support(theta));
  if (out.empty()) {
    throw Error(ErrorCode::EmptySupport, "no permutation has a positive product of entries");
  }
  return out;
}

namespace {

struct FlowEnumerator {
  std::size_t n;
  unsigned order;
  const SupportPattern* pattern;
  std::size_t limit;
  std::vector<unsigned> counts;
  std::vector<unsigned> col_left;
  std::vector<FlowMatrix> out;

  bool allowed(std::size_t i, std::size_t j) const { return pattern == nullptr || (*pattern)(i, j); }

  void cell(std::size_t i, std::size_t j, unsigned row_left) {
    if (j == n) {
      if (row_left != 0) return;
      if (i + 1 == n) {
        if (out.size() == limit) {
          throw Error(ErrorCode::SizeGuard, "more than " + std::to_string(limit) + " flow matrices");
        }
        out.emplace_back(n, order, counts);
        return;
      }
      cell(i + 1, 0, order);
      return;
    }
    // Remaining capacity of the allowed cells to the right bounds the value from below.
    unsigned long right = 0;
    for (std::size_t k = j + 1; k < n; ++k) {
      if (allowed(i, k)) right += col_left[k];
    }
    const unsigned hi = allowed(i, j) ? std::min(row_left, col_left[j]) : 0;
    const unsigned lo = right >= row_left ? 0 : static_cast<unsigned>(row_left - right);
    const bool last_row = i + 1 == n;
    for (unsigned v = hi + 1; v-- > lo;) {
      if (last_row && v != col_left[j]) continue;
      counts[i * n + j] = v;
      col_left[j] -= v;
      cell(i, j + 1, row_left - v);
      col_left[j] += v;
    }
    counts[i * n + j] = 0;
  }
};

}  // namespace

std::vector<FlowMatrix> enumerate_flow_matrices(std::size_t n, unsigned order,
                                                const std::optional<SupportPattern>& pattern,
                                                std::size_t limit) {
  if (n == 0 || order == 0) throw Error(ErrorCode::InvalidInput, "n and M must be positive");
  if (pattern && pattern->size() != n) throw Error(ErrorCode::DimensionMismatch, "support pattern size differs from n");
  FlowEnumerator e{n, order, pattern ? &*pattern : nullptr, limit, std::vector<unsigned>(n * n, 0),
                   std::vector<unsigned>(n, order), {}};
  e.cell(0, 0, order);
  return std::move(e.out);
}

RationalMatrix kron_uniform(const RationalMatrix& theta, unsigned order) {
  if (order == 0) throw Error(ErrorCode::InvalidInput, "M must be positive");
  const std::size_t n = theta.size();
  const std::size_t big = n * order;
  std::vector<Rational> e(big * big);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Rational block = theta(i, j) / order;
      block.canonicalize();
      for (std::size_t a = 0; a < order; ++a) {
        for (std::size_t b = 0; b < order; ++b) e[(i * order + a) * big + j * order + b] = block;
      }
    }
  }
  return RationalMatrix(big, std::move(e));
}

Rational monomial(const RationalMatrix& theta, const FlowMatrix& flow) {
  if (theta.size() != flow.size()) throw Error(ErrorCode::DimensionMismatch, "theta and flow matrix sizes differ");
  Rational out(1);
  for (std::size_t k = 0; k < flow.counts().size(); ++k) {
    const unsigned c = flow.counts()[k];
    if (c == 0) continue;
    if (theta.entries()[k] == 0) return Rational(0);
    out *= pow(theta.entries()[k], static_cast<long>(c));
  }
  out.canonicalize();
  return out;
}

std::size_t thread_count() {
  std::size_t requested = 0;
  if (const char* env = std::getenv("PERMLAB_THREADS")) {
    requested = static_cast<std::size_t>(std::strtoul(env, nullptr, 10));
  }
  if (requested == 0) requested = std::max(1u, std::thread::hardware_concurrency());
  return requested;
}

}  // namespace permlab
