#include "permlab/io.hpp"

namespace permlab {

namespace {

Rational entry_from_json(const json& e) {
  if (e.is_number_integer()) {
    return e.is_number_unsigned() ? Rational(Integer(std::to_string(e.get<std::uint64_t>())))
                                  : Rational(Integer(std::to_string(e.get<std::int64_t>())));
  }
  if (e.is_number_float()) return parse_rational(e.dump());
  if (e.is_string()) return parse_rational(e.get<std::string>());
  throw Error(ErrorCode::InvalidInput, "matrix entry must be a number or a string, got " + e.dump());
}

}  // namespace

RationalMatrix matrix_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("entries") || !doc["entries"].is_array()) {
    throw Error(ErrorCode::InvalidInput, "matrix JSON needs an \"entries\" array");
  }
  const auto& rows = doc["entries"];
  const std::size_t n = rows.size();
  if (doc.contains("n")) {
    if (!doc["n"].is_number_integer() || doc["n"].get<long long>() != static_cast<long long>(n)) {
      throw Error(ErrorCode::InvalidInput, "\"n\" does not match the number of rows");
    }
  }
  if (n == 0) throw Error(ErrorCode::InvalidInput, "matrix must have n >= 1");
  std::vector<Rational> entries;
  entries.reserve(n * n);
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != n) throw Error(ErrorCode::InvalidInput, "matrix must be square");
    for (const auto& e : row) entries.push_back(entry_from_json(e));
  }
  return RationalMatrix(n, std::move(entries));
}

json matrix_to_json(const RationalMatrix& theta) {
  json rows = json::array();
  for (std::size_t i = 0; i < theta.size(); ++i) {
    json row = json::array();
    for (const auto& e : theta.row(i)) row.push_back(to_string(e));
    rows.push_back(std::move(row));
  }
  return {{"n", theta.size()}, {"entries", std::move(rows)}};
}

FlowMatrix flow_from_gamma(const RationalMatrix& gamma, std::optional<unsigned> order) {
  if (!order) {
    Integer lcm(1);
    for (const auto& e : gamma.entries()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), e.get_den_mpz_t());
    if (!lcm.fits_uint_p()) throw Error(ErrorCode::SizeGuard, "denominator too large for M");
    order = static_cast<unsigned>(lcm.get_ui());
  }
  if (*order == 0) throw Error(ErrorCode::InvalidInput, "M must be >= 1");
  return FlowMatrix::from_gamma(gamma, *order);
}

json flow_to_json(const FlowMatrix& flow) {
  json rows = json::array();
  for (std::size_t i = 0; i < flow.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < flow.size(); ++j) row.push_back(flow(i, j));
    rows.push_back(std::move(row));
  }
  return {{"M", flow.order()}, {"T", std::move(rows)}};
}

json point_to_json(const DoublyStochasticPoint& point) {
  json rows = json::array();
  for (std::size_t i = 0; i < point.n; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < point.n; ++j) row.push_back(point(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json degree_m_to_json(const DegreeMValue& value) {
  json out;
  if (value.exact_power) {
    out["value_to_the_M"] = to_string(*value.exact_power);
  } else {
    out["value_to_the_M"] = value.power;
  }
  out["value"] = value.value;
  if (value.samples > 0) {
    out["samples"] = value.samples;
    out["standard_error"] = value.standard_error;
  }
  return out;
}

json check_to_json(const CheckRecord& check) {
  return {{"name", check.name},
          {"form", check.form},
          {"lhs", to_string(check.lhs)},
          {"rhs", to_string(check.rhs)},
          {"holds", check.holds}};
}

json bounds_report_to_json(const BoundsReport& report) {
  json out;
  out["theta_digest"] = report.theta_digest;
  out["n"] = report.n;
  out["M"] = report.order;
  out["perm"] = to_string(report.perm);
  out["degree_m_bethe"] = degree_m_to_json(report.degree_m_bethe);
  out["degree_m_sinkhorn"] = degree_m_to_json(report.degree_m_sinkhorn);
  out["bethe_ratio_to_the_M"] = to_string(report.bethe_ratio_power);
  out["sinkhorn_ratio_to_the_M"] = to_string(report.sinkhorn_ratio_power);
  if (report.has_analytic) {
    out["perm_bethe"] = report.perm_bethe;
    out["perm_scs"] = report.perm_scs;
    out["bethe_converged"] = report.bethe_converged;
    out["sinkhorn_converged"] = report.sinkhorn_converged;
  }
  json checks = json::array();
  for (const auto& c : report.checks) checks.push_back(check_to_json(c));
  out["checks"] = std::move(checks);
  out["all_hold"] = report.all_hold();
  return out;
}

json minimization_to_json(const MinimizationReport& report) {
  return {{"value", report.value},
          {"objective", report.objective},
          {"iterations", report.iterations},
          {"gap_or_residual", report.gap_or_residual},
          {"converged", report.converged},
          {"minimizer", point_to_json(report.minimizer)}};
}

}  // namespace permlab
