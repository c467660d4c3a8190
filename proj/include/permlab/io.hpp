#pragma once

// JSON forms shared by the CLI:
//   matrix:  {"n": 3, "entries": [[1, "1/2", "0.25"], ...]}
//   report:  {"n":..., "M":..., "perm":"p/q", "checks":[{"name", "lhs", "rhs", "holds"}], ...}
// Exact values are fraction strings; floats are shortest round-trip decimals.

#include <json.hpp>

#include <optional>

#include "permlab/bounds.hpp"
#include "permlab/free_energy.hpp"

namespace permlab {

using json = nlohmann::json;

/// Entries may be JSON integers, decimal strings, "p/q" strings, or JSON
/// floats (read through their shortest decimal rendering).
RationalMatrix matrix_from_json(const json& doc);
json matrix_to_json(const RationalMatrix& theta);

/// Interprets a doubly stochastic rational matrix as T = M * gamma. Without an
/// explicit M the least common denominator of the entries is used.
FlowMatrix flow_from_gamma(const RationalMatrix& gamma, std::optional<unsigned> order);

json flow_to_json(const FlowMatrix& flow);
json point_to_json(const DoublyStochasticPoint& point);
json degree_m_to_json(const DegreeMValue& value);
json check_to_json(const CheckRecord& check);
json bounds_report_to_json(const BoundsReport& report);
json minimization_to_json(const MinimizationReport& report);

}  // namespace permlab
