#include "permlab/bounds.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>

#include "permlab/free_energy.hpp"
#include "permlab/permanent.hpp"

namespace permlab {

CheckRecord make_check(std::string name, std::string form, Rational lhs, Rational rhs) {
  lhs.canonicalize();
  rhs.canonicalize();
  const bool holds = lhs <= rhs;
  return {std::move(name), std::move(form), std::move(lhs), std::move(rhs), holds};
}

bool BoundsReport::all_hold() const {
  for (const auto& c : checks) {
    if (!c.holds) return false;
  }
  return true;
}

std::string theta_digest(const RationalMatrix& theta) {
  std::string canonical = std::to_string(theta.size()) + ";";
  for (std::size_t k = 0; k < theta.entries().size(); ++k) {
    if (k > 0) canonical += ',';
    canonical += to_string(theta.entries()[k]);
  }
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

// M^{nM} / (M!)^n, the M-th power of the Sinkhorn upper constant.
Rational sinkhorn_upper_power(std::size_t n, unsigned order) {
  return Rational(pow(Integer(order), static_cast<unsigned long>(n) * order), pow(factorial(order), n));
}

// (n! / n^n)^{M-1}.
Rational van_der_waerden_power(std::size_t n, unsigned order) {
  return pow(Rational(factorial(n), pow(Integer(static_cast<unsigned long>(n)), n)), static_cast<long>(order) - 1);
}

Rational two_to(unsigned long e) { return Rational(pow(Integer(2), e)); }

}  // namespace

BoundsReport check_permanent_bounds(const RationalMatrix& theta, unsigned order, const BoundsOptions& options) {
  if (order == 0) throw Error(ErrorCode::InvalidInput, "M must be >= 1");
  valid_permutations(theta);
  const std::size_t n = theta.size();
  BoundsReport report;
  report.theta_digest = theta_digest(theta);
  report.n = n;
  report.order = order;
  report.perm = perm_exact(theta);
  report.degree_m_bethe = degree_m_bethe(theta, order, BetheRoute::Coefficients);
  report.degree_m_sinkhorn = degree_m_sinkhorn(
      theta, order, n * order <= 20 ? SinkhornRoute::Kronecker : SinkhornRoute::Coefficients);

  const Rational perm_power = pow(report.perm, order);
  report.bethe_ratio_power = perm_power / *report.degree_m_bethe.exact_power;
  report.sinkhorn_ratio_power = perm_power / *report.degree_m_sinkhorn.exact_power;
  report.bethe_ratio_power.canonicalize();
  report.sinkhorn_ratio_power.canonicalize();

  const Rational upper = sinkhorn_upper_power(n, order);
  report.checks.push_back(make_check("bethe_lower", "1 <= (perm/perm_B,M)^M", Rational(1), report.bethe_ratio_power));
  report.checks.push_back(make_check("bethe_upper", "((perm/perm_B,M)^M)^2 <= 2^(n(M-1))",
                                     report.bethe_ratio_power * report.bethe_ratio_power,
                                     two_to(static_cast<unsigned long>(n) * (order - 1))));
  report.checks.push_back(make_check("sinkhorn_lower", "M^(nM)/(M!)^n * (n!/n^n)^(M-1) <= (perm/perm_scS,M)^M",
                                     upper * van_der_waerden_power(n, order), report.sinkhorn_ratio_power));
  report.checks.push_back(
      make_check("sinkhorn_upper", "(perm/perm_scS,M)^M <= M^(nM)/(M!)^n", report.sinkhorn_ratio_power, upper));

  if (options.analytic) {
    const auto bethe = minimize_bethe(theta, options.tol, options.max_iter);
    const auto sinkhorn = minimize_scaled_sinkhorn(theta, 1e-12, options.max_iter);
    report.has_analytic = true;
    report.perm_bethe = bethe.value;
    report.perm_scs = sinkhorn.value;
    report.bethe_converged = bethe.converged;
    report.sinkhorn_converged = sinkhorn.converged;
  }
  return report;
}

std::vector<CoefficientBoundsRecord> check_coefficient_bounds(std::size_t n, unsigned order) {
  const Rational sinkhorn_upper = sinkhorn_upper_power(n, order);
  const Rational sinkhorn_lower = sinkhorn_upper * van_der_waerden_power(n, order);
  const Rational bethe_upper_squared = two_to(static_cast<unsigned long>(n) * (order - 1));
  std::vector<CoefficientBoundsRecord> out;
  for (const auto& flow : enumerate_flow_matrices(n, order)) {
    const Rational gibbs(c_gibbs(flow));
    Rational to_bethe = gibbs / c_bethe(flow);
    Rational to_sinkhorn = gibbs / c_sinkhorn(flow);
    to_bethe.canonicalize();
    to_sinkhorn.canonicalize();
    CoefficientBoundsRecord rec{flow, {}, true};
    rec.checks.push_back(make_check("gibbs_bethe_lower", "1 <= C_M/C_B,M", Rational(1), to_bethe));
    rec.checks.push_back(make_check("gibbs_bethe_upper", "(C_M/C_B,M)^2 <= 2^(n(M-1))", to_bethe * to_bethe,
                                    bethe_upper_squared));
    rec.checks.push_back(make_check("gibbs_sinkhorn_lower", "(M^M/M!)^n (n!/n^n)^(M-1) <= C_M/C_scS,M",
                                    sinkhorn_lower, to_sinkhorn));
    rec.checks.push_back(
        make_check("gibbs_sinkhorn_upper", "C_M/C_scS,M <= (M^M/M!)^n", to_sinkhorn, sinkhorn_upper));
    for (const auto& c : rec.checks) rec.holds = rec.holds && c.holds;
    out.push_back(std::move(rec));
  }
  return out;
}

RatioIdentity ratio_identity(const RationalMatrix& theta, unsigned order, RatioKind kind) {
  if (order == 0) throw Error(ErrorCode::InvalidInput, "M must be >= 1");
  const std::size_t n = theta.size();
  const PermDistribution dist = perm_distribution(theta);
  const std::size_t atoms = dist.support.size();
  double tuples = 1.0;
  for (unsigned m = 0; m < order; ++m) tuples *= static_cast<double>(atoms);
  if (tuples > 1e7) throw Error(ErrorCode::SizeGuard, "|S(theta)|^M exceeds 10^7");

  RatioIdentity out;
  const Rational perm_power = pow(perm_exact(theta), order);
  if (kind == RatioKind::Bethe) {
    double liftings = 1.0;
    for (std::size_t c = 0; c < n * n; ++c) liftings *= std::tgamma(order + 1.0);
    const auto value = liftings <= 1e4 ? degree_m_bethe_enumerate(theta, order)
                                       : degree_m_bethe_coefficients(theta, order);
    out.direct = *value.exact_power / perm_power;
  } else {
    const auto value = degree_m_sinkhorn(theta, order, n * order <= 20 ? SinkhornRoute::Kronecker
                                                                        : SinkhornRoute::Coefficients);
    out.direct = *value.exact_power / perm_power;
  }
  out.direct.canonicalize();

  std::map<std::string, Rational> ratio_cache;
  std::vector<std::size_t> index(order, 0);
  std::vector<unsigned> counts(n * n);
  Rational sum(0);
  while (true) {
    std::fill(counts.begin(), counts.end(), 0u);
    Rational weight(1);
    for (auto a : index) {
      weight *= dist.weights[a];
      for (std::size_t i = 0; i < n; ++i) ++counts[i * n + dist.support[a](i)];
    }
    const FlowMatrix flow(n, order, counts);
    auto [it, fresh] = ratio_cache.try_emplace(flow.key());
    if (fresh) {
      it->second = (kind == RatioKind::Bethe ? c_bethe(flow) : c_sinkhorn(flow)) / Rational(c_gibbs(flow));
    }
    sum += weight * it->second;
    std::size_t pos = 0;
    while (pos < order && ++index[pos] == atoms) index[pos++] = 0;
    if (pos == order) break;
  }
  sum.canonicalize();
  out.sum_expression = sum;
  out.holds = out.direct == out.sum_expression;
  return out;
}

M2Ratio m2_ratio(const RationalMatrix& theta) {
  const std::size_t n = theta.size();
  if (n > 6) throw Error(ErrorCode::SizeGuard, "M = 2 ratio limited to n <= 6");
  const PermDistribution dist = perm_distribution(theta);
  const Rational perm = perm_exact(theta);
  Rational direct_squared = perm * perm / coefficient_sum(theta, 2, CoefficientKind::Bethe);
  direct_squared.canonicalize();

  Rational cycle_sum(0);
  for (std::size_t a = 0; a < dist.support.size(); ++a) {
    for (std::size_t b = 0; b < dist.support.size(); ++b) {
      const auto c = cycle_count(dist.support[a], dist.support[b]);
      cycle_sum += dist.weights[a] * dist.weights[b] / two_to(c);
    }
  }
  cycle_sum.canonicalize();

  M2Ratio out;
  out.ratio = std::exp(0.5 * log_of(direct_squared));
  out.via_cycles = std::exp(-0.5 * log_of(cycle_sum));
  out.exact_agreement = direct_squared * cycle_sum == 1;
  // 1 <= ratio <= 2^{n/4}  <=>  1 <= ratio^2 and ratio^4 <= 2^n.
  out.bounds_ok = direct_squared >= 1 && direct_squared * direct_squared <= two_to(n);
  return out;
}

TrendRow trend_row(unsigned order, unsigned k) {
  if (order == 0 || k > order) throw Error(ErrorCode::InvalidInput, "need 0 <= k <= M and M >= 1");
  TrendRow row;
  row.order = order;
  row.k = k;
  const FlowMatrix flow = pascal_flow(k, order - k);
  row.log_coefficient_rate = log_of(c_gibbs(flow)) / order;
  row.entropy = gibbs_entropy_modified(flow);
  const double gap = row.entropy - row.log_coefficient_rate;
  row.sandwich_holds = gap >= -1e-12 && gap <= std::log(order + 1.0) / order;
  return row;
}

std::vector<TrendRow> asymptotic_trend(const Rational& fraction, const std::vector<unsigned>& orders) {
  if (fraction < 0 || fraction > 1) throw Error(ErrorCode::InvalidInput, "fraction must lie in [0, 1]");
  std::vector<TrendRow> rows;
  for (unsigned m : orders) {
    Rational k = fraction * m;
    k.canonicalize();
    if (k.get_den() != 1) {
      throw Error(ErrorCode::NonIntegral, "fraction * M = " + to_string(k) + " is not an integer");
    }
    rows.push_back(trend_row(m, static_cast<unsigned>(k.get_num().get_ui())));
  }
  return rows;
}

}  // namespace permlab
