#include "permlab/degree_m.hpp"

#include <cmath>
#include <random>

#include "permlab/permanent.hpp"

namespace permlab {

LiftingCollection::LiftingCollection(std::size_t n, unsigned order, std::vector<Permutation> blocks)
    : n_(n), order_(order), blocks_(std::move(blocks)) {
  if (order_ == 0) throw Error(ErrorCode::InvalidInput, "lifting degree must be >= 1");
  if (blocks_.size() != n_ * n_) throw Error(ErrorCode::DimensionMismatch, "lifting needs n * n blocks");
  for (const auto& b : blocks_) {
    if (b.size() != order_) throw Error(ErrorCode::DimensionMismatch, "lifting block is not a permutation of [M]");
  }
}

LiftingCollection LiftingCollection::identity(std::size_t n, unsigned order) {
  return LiftingCollection(n, order, std::vector<Permutation>(n * n, Permutation::identity(order)));
}

RationalMatrix lift(const RationalMatrix& theta, const LiftingCollection& lifting) {
  if (lifting.size() != theta.size()) throw Error(ErrorCode::DimensionMismatch, "lifting size differs from theta");
  const std::size_t n = theta.size();
  const unsigned m = lifting.order();
  const std::size_t big = n * m;
  std::vector<Rational> e(big * big, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Permutation& p = lifting.block(i, j);
      for (std::size_t a = 0; a < m; ++a) e[(i * m + a) * big + j * m + p(a)] = theta(i, j);
    }
  }
  return RationalMatrix(big, std::move(e));
}

namespace {

DegreeMValue from_exact(Rational power, unsigned order) {
  power.canonicalize();
  DegreeMValue out;
  out.power = to_double(power);
  out.value = power > 0 ? std::exp(log_of(power) / order) : 0.0;
  out.exact_power = std::move(power);
  return out;
}

}  // namespace

Rational coefficient_sum(const RationalMatrix& theta, unsigned order, CoefficientKind kind) {
  Rational total(0);
  for (const auto& flow : enumerate_flow_matrices(theta.size(), order, support(theta))) {
    const Rational mono = monomial(theta, flow);
    switch (kind) {
      case CoefficientKind::Gibbs: total += mono * c_gibbs(flow); break;
      case CoefficientKind::Bethe: total += mono * c_bethe(flow); break;
      case CoefficientKind::Sinkhorn: total += mono * c_sinkhorn(flow); break;
    }
  }
  total.canonicalize();
  return total;
}

DegreeMValue degree_m_bethe_enumerate(const RationalMatrix& theta, unsigned order) {
  const std::size_t n = theta.size();
  const auto block_perms = all_permutations(order);
  const std::size_t cells = n * n;
  double liftings = 1.0;
  for (std::size_t c = 0; c < cells; ++c) liftings *= static_cast<double>(block_perms.size());
  if (liftings > 1e6) throw Error(ErrorCode::SizeGuard, "(M!)^{n^2} exceeds 10^6 liftings");

  std::vector<std::size_t> index(cells, 0);
  Integer count(0);
  Rational total(0);
  while (true) {
    std::vector<Permutation> blocks;
    blocks.reserve(cells);
    // Most significant digit first.
    for (std::size_t c = 0; c < cells; ++c) blocks.push_back(block_perms[index[c]]);
    total += perm_exact(lift(theta, LiftingCollection(n, order, std::move(blocks))));
    ++count;
    std::size_t pos = cells;
    while (pos > 0 && ++index[pos - 1] == block_perms.size()) index[--pos] = 0;
    if (pos == 0) break;
  }
  return from_exact(total / count, order);
}

DegreeMValue degree_m_bethe_coefficients(const RationalMatrix& theta, unsigned order) {
  return from_exact(coefficient_sum(theta, order, CoefficientKind::Bethe), order);
}

DegreeMValue degree_m_bethe_sample(const RationalMatrix& theta, unsigned order, std::size_t samples,
                                   std::uint64_t seed) {
  if (samples == 0) throw Error(ErrorCode::InvalidInput, "sample count must be positive");
  const std::size_t n = theta.size();
  const std::size_t big = n * order;
  const auto weights = theta.to_doubles();
  std::mt19937_64 rng(seed);
  double mean = 0.0;
  double m2 = 0.0;
  std::vector<double> lifted(big * big);
  for (std::size_t s = 0; s < samples; ++s) {
    std::fill(lifted.begin(), lifted.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const Permutation p = random_permutation(order, rng);
        for (std::size_t a = 0; a < order; ++a) lifted[(i * order + a) * big + j * order + p(a)] = weights[i * n + j];
      }
    }
    const double x = perm_float(lifted, big);
    // Welford update.
    const double delta = x - mean;
    mean += delta / static_cast<double>(s + 1);
    m2 += delta * (x - mean);
  }
  DegreeMValue out;
  out.power = mean;
  out.value = mean > 0 ? std::pow(mean, 1.0 / order) : 0.0;
  out.samples = samples;
  out.standard_error = samples > 1 ? std::sqrt(m2 / static_cast<double>(samples - 1) / static_cast<double>(samples)) : 0.0;
  return out;
}

DegreeMValue degree_m_bethe(const RationalMatrix& theta, unsigned order, BetheRoute route, std::size_t samples,
                            std::uint64_t seed) {
  if (order == 0) throw Error(ErrorCode::InvalidInput, "M must be >= 1");
  switch (route) {
    case BetheRoute::Coefficients: return degree_m_bethe_coefficients(theta, order);
    case BetheRoute::Enumerate: return degree_m_bethe_enumerate(theta, order);
    case BetheRoute::Sample: return degree_m_bethe_sample(theta, order, samples, seed);
  }
  throw Error(ErrorCode::InvalidInput, "unknown route");
}

DegreeMValue degree_m_sinkhorn(const RationalMatrix& theta, unsigned order, SinkhornRoute route) {
  if (order == 0) throw Error(ErrorCode::InvalidInput, "M must be >= 1");
  if (route == SinkhornRoute::Coefficients) {
    return from_exact(coefficient_sum(theta, order, CoefficientKind::Sinkhorn), order);
  }
  const std::size_t big = theta.size() * order;
  if (big <= 20) return from_exact(perm_exact(kron_uniform(theta, order)), order);
  // Beyond the exact range: binary64 Ryser on the Kronecker matrix.
  const auto weights = theta.to_doubles();
  const std::size_t n = theta.size();
  std::vector<double> k(big * big);
  for (std::size_t r = 0; r < big; ++r) {
    for (std::size_t c = 0; c < big; ++c) k[r * big + c] = weights[(r / order) * n + c / order] / order;
  }
  DegreeMValue out;
  out.power = perm_float(k, big);
  out.value = out.power > 0 ? std::pow(out.power, 1.0 / order) : 0.0;
  return out;
}

}  // namespace permlab
