#include "permlab/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "permlab/permanent.hpp"

namespace permlab {

std::string_view kind_name(CoefficientKind kind) {
  switch (kind) {
    case CoefficientKind::Gibbs: return "gibbs";
    case CoefficientKind::Bethe: return "bethe";
    case CoefficientKind::Sinkhorn: return "sinkhorn";
  }
  return "unknown";
}

CoefficientKind parse_kind(std::string_view name) {
  if (name == "gibbs") return CoefficientKind::Gibbs;
  if (name == "bethe") return CoefficientKind::Bethe;
  if (name == "sinkhorn") return CoefficientKind::Sinkhorn;
  throw Error(ErrorCode::InvalidInput, "unknown coefficient kind '" + std::string(name) + "'");
}

std::vector<Permutation> decomposition_starts(const FlowMatrix& flow) {
  return permutations_within(support(flow));
}

FlowMatrix peel(const FlowMatrix& flow, const Permutation& sigma) {
  if (flow.order() < 2) throw Error(ErrorCode::InvalidInput, "peeling requires M >= 2");
  if (sigma.size() != flow.size()) throw Error(ErrorCode::DimensionMismatch, "permutation size differs from n");
  const std::size_t n = flow.size();
  std::vector<unsigned> counts(flow.counts().begin(), flow.counts().end());
  for (std::size_t i = 0; i < n; ++i) {
    unsigned& c = counts[i * n + sigma(i)];
    if (c == 0) {
      throw Error(ErrorCode::InvalidPeel, "T(" + std::to_string(i) + "," + std::to_string(sigma(i)) + ") is zero");
    }
    --c;
  }
  return FlowMatrix(n, flow.order() - 1, std::move(counts));
}

FractionalCore fractional_core(const FlowMatrix& flow) {
  const std::size_t n = flow.size();
  const unsigned m = flow.order();
  FractionalCore fc;
  for (std::size_t i = 0; i < n; ++i) {
    bool row_fractional = false;
    bool col_fractional = false;
    for (std::size_t j = 0; j < n; ++j) {
      row_fractional |= flow(i, j) > 0 && flow(i, j) < m;
      col_fractional |= flow(j, i) > 0 && flow(j, i) < m;
    }
    if (row_fractional) fc.rows.push_back(i);
    if (col_fractional) fc.cols.push_back(i);
  }
  const std::size_t r = fc.rows.size();
  if (r != fc.cols.size()) throw Error(ErrorCode::InvalidInput, "fractional rows and columns differ in number");
  std::vector<Rational> core;
  std::vector<Rational> weighted;
  Rational denominator(1);
  for (auto i : fc.rows) {
    for (auto j : fc.cols) {
      const Rational g = flow.gamma(i, j);
      core.push_back(g);
      weighted.push_back(g * (1 - g));
      denominator *= 1 - g;
    }
  }
  fc.core = RationalMatrix(r, std::move(core));
  if (r > 0) {
    fc.perm_core = perm_exact(RationalMatrix(r, std::move(weighted))) / denominator;
    fc.perm_core.canonicalize();
  }
  return fc;
}

std::vector<double> normalized_core(const FractionalCore& fc) {
  const std::size_t r = fc.r();
  if (r == 0) return {};
  double log_denominator = 0.0;
  for (const auto& g : fc.core.entries()) log_denominator += std::log1p(-to_double(g));
  const double scale = std::exp(-log_denominator / static_cast<double>(r));
  std::vector<double> out;
  out.reserve(r * r);
  for (const auto& g : fc.core.entries()) {
    const double v = to_double(g);
    out.push_back(v * (1.0 - v) * scale);
  }
  return out;
}

Integer GibbsCounter::operator()(const FlowMatrix& flow) {
  if (flow.order() == 1) return Integer(1);
  const std::string key = flow.key();
  {
    std::shared_lock lock(mutex_);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  }
  Integer total(0);
  for (const auto& sigma : decomposition_starts(flow)) total += (*this)(peel(flow, sigma));
  std::unique_lock lock(mutex_);
  return memo_.try_emplace(key, std::move(total)).first->second;
}

std::size_t GibbsCounter::cache_size() const {
  std::shared_lock lock(mutex_);
  return memo_.size();
}

Integer c_gibbs(const FlowMatrix& flow) {
  static GibbsCounter shared;
  return shared(flow);
}

Integer c_gibbs_brute(const FlowMatrix& flow) {
  const std::size_t n = flow.size();
  const unsigned m = flow.order();
  const auto perms = all_permutations(n);
  double tuples = 1.0;
  for (unsigned k = 0; k < m; ++k) tuples *= static_cast<double>(perms.size());
  if (tuples > 1e7) throw Error(ErrorCode::SizeGuard, "(n!)^M exceeds 10^7 for brute-force counting");

  std::vector<std::size_t> index(m, 0);
  std::vector<unsigned> sum(n * n);
  Integer count(0);
  while (true) {
    std::fill(sum.begin(), sum.end(), 0u);
    for (auto k : index) {
      for (std::size_t i = 0; i < n; ++i) ++sum[i * n + perms[k](i)];
    }
    if (std::equal(sum.begin(), sum.end(), flow.counts().begin())) ++count;
    std::size_t pos = 0;
    while (pos < m && ++index[pos] == perms.size()) index[pos++] = 0;
    if (pos == m) break;
  }
  return count;
}

Rational c_bethe(const FlowMatrix& flow) {
  const long n = static_cast<long>(flow.size());
  const unsigned m = flow.order();
  Rational out = pow(Rational(factorial(m)), 2 * n - n * n);
  Integer num(1);
  Integer den(1);
  for (auto t : flow.counts()) {
    num *= factorial(m - t);
    den *= factorial(t);
  }
  out *= Rational(num, den);
  out.canonicalize();
  return out;
}

Rational c_sinkhorn(const FlowMatrix& flow) {
  const unsigned long n = flow.size();
  const unsigned m = flow.order();
  Integer den = pow(Integer(m), n * m);
  for (auto t : flow.counts()) den *= factorial(t);
  Rational out(pow(factorial(m), 2 * n), den);
  out.canonicalize();
  return out;
}

CoefficientTriple coefficients(const FlowMatrix& flow) {
  return {flow, c_gibbs(flow), c_bethe(flow), c_sinkhorn(flow)};
}

Rational chi(unsigned order) {
  if (order < 2) throw Error(ErrorCode::InvalidInput, "chi(M) requires M >= 2");
  return pow(Rational(order, order - 1), static_cast<long>(order) - 1);
}

RecursionCheck verify_recursion(CoefficientKind kind, const FlowMatrix& flow) {
  if (flow.order() < 2) throw Error(ErrorCode::InvalidInput, "recursion check requires M >= 2");
  RecursionCheck check;
  const auto starts = decomposition_starts(flow);
  switch (kind) {
    case CoefficientKind::Gibbs: {
      try {
        check.lhs = c_gibbs_brute(flow);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::SizeGuard) throw;
        check.lhs = c_gibbs(flow);
      }
      Integer sum(0);
      for (const auto& s : starts) sum += c_gibbs(peel(flow, s));
      check.rhs = sum;
      break;
    }
    case CoefficientKind::Bethe: {
      check.lhs = c_bethe(flow);
      Rational sum(0);
      for (const auto& s : starts) sum += c_bethe(peel(flow, s));
      check.rhs = sum / fractional_core(flow).perm_core;
      break;
    }
    case CoefficientKind::Sinkhorn: {
      check.lhs = c_sinkhorn(flow);
      Rational sum(0);
      for (const auto& s : starts) sum += c_sinkhorn(peel(flow, s));
      const Rational scale = pow(chi(flow.order()), static_cast<long>(flow.size())) * perm_exact(flow.gamma_matrix());
      check.rhs = sum / scale;
      break;
    }
  }
  check.rhs.canonicalize();
  check.holds = check.lhs == check.rhs;
  return check;
}

std::size_t cycle_count(const Permutation& sigma1, const Permutation& sigma2) {
  if (sigma1.size() != sigma2.size()) throw Error(ErrorCode::SizeMismatch, "permutations differ in size");
  const Permutation rho = sigma1.compose(sigma2.inverse());
  std::vector<bool> seen(rho.size(), false);
  std::size_t cycles = 0;
  for (std::size_t start = 0; start < rho.size(); ++start) {
    if (seen[start]) continue;
    std::size_t length = 0;
    for (std::size_t i = start; !seen[i]; i = rho(i)) {
      seen[i] = true;
      ++length;
    }
    if (length > 1) ++cycles;
  }
  return cycles;
}

FlowMatrix pascal_flow(unsigned k1, unsigned k2) {
  return FlowMatrix(2, k1 + k2, {k1, k2, k2, k1});
}

std::vector<PascalEntry> pascal_table(CoefficientKind kind, unsigned max_order) {
  if (max_order == 0) throw Error(ErrorCode::InvalidInput, "max M must be >= 1");
  std::vector<PascalEntry> table;
  for (unsigned m = 1; m <= max_order; ++m) {
    for (unsigned k1 = 0; k1 <= m; ++k1) {
      const FlowMatrix flow = pascal_flow(k1, m - k1);
      Rational value;
      switch (kind) {
        case CoefficientKind::Gibbs: value = c_gibbs(flow); break;
        case CoefficientKind::Bethe: value = c_bethe(flow); break;
        case CoefficientKind::Sinkhorn: value = c_sinkhorn(flow); break;
      }
      table.push_back({m, k1, value});
    }
  }
  return table;
}

std::string pascal_csv(const std::vector<PascalEntry>& table) {
  std::ostringstream out;
  out << "M,k1,value\n";
  for (const auto& e : table) out << e.order << ',' << e.k1 << ',' << to_string(e.value) << '\n';
  return out.str();
}

}  // namespace permlab
