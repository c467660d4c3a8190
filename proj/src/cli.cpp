#include "permlab/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include "permlab/io.hpp"
#include "permlab/permanent.hpp"

namespace permlab::cli {

namespace {

struct Options {
  std::string input;
  std::string output;
  std::string format = "json";
  std::optional<unsigned> order;
  std::optional<std::size_t> n;
  std::string route;
  std::string kind;
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
  double tol = 1e-12;
  std::size_t max_iter = 100000;
  unsigned max_order = 0;
};

// Raised for a failed minimization; carries the partial report.
struct NotConverged {
  json report;
};

std::string read_input(const Options& o, std::istream& in) {
  if (o.input.empty() || o.input == "-") {
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  }
  std::ifstream file(o.input);
  if (!file) throw Error(ErrorCode::InvalidInput, "cannot open input file " + o.input);
  return {std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>()};
}

RationalMatrix read_matrix(const Options& o, std::istream& in) {
  const std::string text = read_input(o, in);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::InvalidInput, std::string("malformed JSON: ") + e.what());
  }
  return matrix_from_json(doc);
}

unsigned require_order(const Options& o) {
  if (!o.order) throw Error(ErrorCode::InvalidInput, "--M is required");
  if (*o.order == 0) throw Error(ErrorCode::InvalidInput, "--M must be >= 1");
  return *o.order;
}

std::string rows_to_csv(const FlowMatrix& flow) {
  std::string s;
  for (std::size_t i = 0; i < flow.size(); ++i) {
    if (i > 0) s += ';';
    for (std::size_t j = 0; j < flow.size(); ++j) {
      if (j > 0) s += ' ';
      s += std::to_string(flow(i, j));
    }
  }
  return s;
}

std::vector<FlowMatrix> gamma_inputs(const Options& o, std::istream& in) {
  if (o.n) {
    if (o.input.size() > 0) throw Error(ErrorCode::InvalidInput, "use either --input or --n, not both");
    if (*o.n == 0) throw Error(ErrorCode::InvalidInput, "--n must be >= 1");
    return enumerate_flow_matrices(*o.n, require_order(o));
  }
  return {flow_from_gamma(read_matrix(o, in), o.order)};
}

std::string do_perm(const Options& o, std::istream& in) {
  const auto value = to_string(perm_exact(read_matrix(o, in)));
  if (o.format == "csv") return "perm\n" + value + "\n";
  return json{{"perm", value}}.dump() + "\n";
}

std::string do_minimize(const Options& o, std::istream& in, bool bethe) {
  const RationalMatrix theta = read_matrix(o, in);
  const auto report = bethe ? minimize_bethe(theta, o.tol, o.max_iter)
                            : minimize_scaled_sinkhorn(theta, o.tol, o.max_iter);
  json out = minimization_to_json(report);
  if (bethe) {
    out["perm_bethe"] = report.value;
  } else {
    out["perm_scs"] = report.value;
    out["perm_sinkhorn"] = std::exp(static_cast<double>(theta.size())) * report.value;
  }
  if (!report.converged) throw NotConverged{out};
  if (o.format == "csv") {
    return std::string("value,objective,iterations,gap_or_residual\n") + json(report.value).dump() + "," +
           json(report.objective).dump() + "," + std::to_string(report.iterations) + "," +
           json(report.gap_or_residual).dump() + "\n";
  }
  return out.dump() + "\n";
}

std::string do_degree_m(const Options& o, std::istream& in) {
  const unsigned order = require_order(o);
  const std::string kind = o.kind.empty() ? "bethe" : o.kind;
  const RationalMatrix theta = read_matrix(o, in);
  DegreeMValue value;
  std::string route = o.route;
  if (kind == "bethe") {
    if (route.empty()) route = "coefficients";
    if (route == "coefficients") {
      value = degree_m_bethe(theta, order, BetheRoute::Coefficients);
    } else if (route == "enumerate") {
      value = degree_m_bethe(theta, order, BetheRoute::Enumerate);
    } else if (route == "sample") {
      value = degree_m_bethe(theta, order, BetheRoute::Sample, o.samples, o.seed);
    } else {
      throw Error(ErrorCode::InvalidInput, "route " + route + " does not apply to the Bethe permanent");
    }
  } else if (kind == "sinkhorn") {
    if (route.empty()) route = "kronecker";
    if (route == "kronecker") {
      value = degree_m_sinkhorn(theta, order, SinkhornRoute::Kronecker);
    } else if (route == "coefficients") {
      value = degree_m_sinkhorn(theta, order, SinkhornRoute::Coefficients);
    } else {
      throw Error(ErrorCode::InvalidInput, "route " + route + " does not apply to the Sinkhorn permanent");
    }
  } else {
    throw Error(ErrorCode::InvalidInput, "--kind must be bethe or sinkhorn for degree-m");
  }
  json out = {{"kind", kind}, {"M", order}, {"route", route}};
  out.update(degree_m_to_json(value));
  if (o.format == "csv") {
    return "kind,M,route,value\n" + kind + "," + std::to_string(order) + "," + route + "," +
           json(value.value).dump() + "\n";
  }
  return out.dump() + "\n";
}

std::string do_coeffs(const Options& o, std::istream& in) {
  const auto flows = gamma_inputs(o, in);
  if (o.format == "csv") {
    std::string s = "T,c_gibbs,c_bethe,c_sinkhorn\n";
    for (const auto& flow : flows) {
      const auto c = coefficients(flow);
      s += rows_to_csv(flow) + "," + to_string(c.c_gibbs) + "," + to_string(c.c_bethe) + "," +
           to_string(c.c_sinkhorn) + "\n";
    }
    return s;
  }
  json rows = json::array();
  for (const auto& flow : flows) {
    const auto c = coefficients(flow);
    json row = flow_to_json(flow);
    row["c_gibbs"] = to_string(c.c_gibbs);
    row["c_bethe"] = to_string(c.c_bethe);
    row["c_sinkhorn"] = to_string(c.c_sinkhorn);
    rows.push_back(std::move(row));
  }
  return json{{"coefficients", std::move(rows)}}.dump() + "\n";
}

std::string do_recursion_check(const Options& o, std::istream& in) {
  std::vector<CoefficientKind> kinds;
  if (o.kind.empty() || o.kind == "all") {
    kinds = {CoefficientKind::Gibbs, CoefficientKind::Bethe, CoefficientKind::Sinkhorn};
  } else {
    kinds = {parse_kind(o.kind)};
  }
  const auto flows = gamma_inputs(o, in);
  json checks = json::array();
  std::string csv = "kind,T,lhs,rhs,holds\n";
  bool all_hold = true;
  for (const auto& flow : flows) {
    for (auto kind : kinds) {
      const auto check = verify_recursion(kind, flow);
      all_hold = all_hold && check.holds;
      json row = flow_to_json(flow);
      row["kind"] = kind_name(kind);
      row["lhs"] = to_string(check.lhs);
      row["rhs"] = to_string(check.rhs);
      row["holds"] = check.holds;
      checks.push_back(std::move(row));
      csv += std::string(kind_name(kind)) + "," + rows_to_csv(flow) + "," + to_string(check.lhs) + "," +
             to_string(check.rhs) + "," + (check.holds ? "true" : "false") + "\n";
    }
  }
  if (o.format == "csv") return csv;
  return json{{"checks", std::move(checks)}, {"all_hold", all_hold}}.dump() + "\n";
}

std::string do_bounds(const Options& o, std::istream& in) {
  const unsigned order = require_order(o);
  const RationalMatrix theta = read_matrix(o, in);
  BoundsOptions options;
  options.tol = o.tol;
  options.max_iter = o.max_iter;
  const auto report = check_permanent_bounds(theta, order, options);
  if (o.format == "csv") {
    std::string s = "name,lhs,rhs,holds\n";
    for (const auto& c : report.checks) {
      s += c.name + "," + to_string(c.lhs) + "," + to_string(c.rhs) + "," + (c.holds ? "true" : "false") + "\n";
    }
    return s;
  }
  json out = bounds_report_to_json(report);
  out["seed"] = o.seed;
  return out.dump() + "\n";
}

std::string do_m2(const Options& o, std::istream& in) {
  const auto r = m2_ratio(read_matrix(o, in));
  if (o.format == "csv") {
    return "ratio,via_cycles,exact_agreement,bounds_ok\n" + json(r.ratio).dump() + "," + json(r.via_cycles).dump() +
           "," + (r.exact_agreement ? "true" : "false") + "," + (r.bounds_ok ? "true" : "false") + "\n";
  }
  return json{{"ratio", r.ratio},
              {"via_cycles", r.via_cycles},
              {"exact_agreement", r.exact_agreement},
              {"bounds_ok", r.bounds_ok}}
             .dump() +
         "\n";
}

std::string do_pascal(const Options& o) {
  if (o.max_order == 0) throw Error(ErrorCode::InvalidInput, "--max-m must be >= 1");
  const CoefficientKind kind = parse_kind(o.kind.empty() ? "gibbs" : o.kind);
  const auto table = pascal_table(kind, o.max_order);
  if (o.format == "csv") return pascal_csv(table);
  json rows = json::array();
  for (const auto& e : table) rows.push_back({{"M", e.order}, {"k1", e.k1}, {"value", to_string(e.value)}});
  return json{{"kind", kind_name(kind)}, {"rows", std::move(rows)}}.dump() + "\n";
}

std::string do_entropy(const Options& o, std::istream& in) {
  const FlowMatrix flow = flow_from_gamma(read_matrix(o, in), o.order);
  const auto h = entropy_values(flow);
  if (o.format == "csv") {
    return "h_gibbs_mod,h_bethe,h_sinkhorn\n" + json(h.h_gibbs_mod).dump() + "," + json(h.h_bethe).dump() + "," +
           json(h.h_sinkhorn).dump() + "\n";
  }
  return json{{"M", flow.order()}, {"h_gibbs_mod", h.h_gibbs_mod}, {"h_bethe", h.h_bethe}, {"h_sinkhorn", h.h_sinkhorn}}
             .dump() +
         "\n";
}

json envelope(std::string_view code, std::string_view message) {
  return {{"error", {{"code", code}, {"message", message}}}};
}

void add_io(CLI::App* sub, Options& o) {
  sub->add_option("--input", o.input, "Matrix JSON file (default: stdin)");
  sub->add_option("--output", o.output, "Write the result here instead of stdout");
  sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
}

void add_solver(CLI::App* sub, Options& o) {
  sub->add_option("--tol", o.tol, "Stopping tolerance")->check(CLI::PositiveNumber);
  sub->add_option("--max-iter", o.max_iter, "Iteration cap");
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact permanents, Bethe and scaled Sinkhorn approximations, and their degree-M versions"};
  app.name("permlab");
  app.require_subcommand(1);

  auto* perm = app.add_subcommand("perm", "Exact permanent of a matrix");
  add_io(perm, o);

  auto* bethe = app.add_subcommand("bethe", "Bethe permanent by Frank-Wolfe");
  add_io(bethe, o);
  add_solver(bethe, o);

  auto* sinkhorn = app.add_subcommand("sinkhorn", "Scaled Sinkhorn permanent by matrix scaling");
  add_io(sinkhorn, o);
  add_solver(sinkhorn, o);

  auto* degree = app.add_subcommand("degree-m", "Degree-M Bethe or scaled Sinkhorn permanent");
  add_io(degree, o);
  degree->add_option("--M", o.order, "Degree M")->required();
  degree->add_option("--kind", o.kind, "bethe or sinkhorn")->check(CLI::IsMember({"bethe", "sinkhorn"}));
  degree->add_option("--route", o.route, "Evaluation route")
      ->check(CLI::IsMember({"coefficients", "enumerate", "sample", "kronecker"}));
  degree->add_option("--samples", o.samples, "Liftings drawn by the sample route");
  degree->add_option("--seed", o.seed, "Seed of the sample route");

  auto* coeffs = app.add_subcommand("coeffs", "C_M, C_B,M and C_scS,M for one gamma or all of Gamma_{M,n}");
  add_io(coeffs, o);
  coeffs->add_option("--M", o.order, "Degree M (default: least common denominator of gamma)");
  coeffs->add_option("--n", o.n, "Enumerate every gamma of this size instead of reading one");

  auto* recursion = app.add_subcommand("recursion-check", "Verify the peeling recursions exactly");
  add_io(recursion, o);
  recursion->add_option("--M", o.order, "Degree M (default: least common denominator of gamma)");
  recursion->add_option("--n", o.n, "Check every gamma of this size instead of reading one");
  recursion->add_option("--kind", o.kind, "gibbs, bethe, sinkhorn or all")
      ->check(CLI::IsMember({"gibbs", "bethe", "sinkhorn", "all"}));

  auto* bounds = app.add_subcommand("bounds", "Check the degree-M permanent bounds exactly");
  add_io(bounds, o);
  add_solver(bounds, o);
  bounds->add_option("--M", o.order, "Degree M")->required();
  bounds->add_option("--seed", o.seed, "Recorded in the report");

  auto* m2 = app.add_subcommand("m2", "perm / perm_B,2 directly and through cycle counts");
  add_io(m2, o);

  auto* pascal = app.add_subcommand("pascal", "Coefficient tables over the 2 x 2 matrices");
  add_io(pascal, o);
  pascal->add_option("--kind", o.kind, "gibbs, bethe or sinkhorn")
      ->check(CLI::IsMember({"gibbs", "bethe", "sinkhorn"}));
  pascal->add_option("--max-m", o.max_order, "Largest M")->required();

  auto* entropy = app.add_subcommand("entropy", "Modified Gibbs, Bethe and Sinkhorn entropies of gamma");
  add_io(entropy, o);
  entropy->add_option("--M", o.order, "Degree M (default: least common denominator of gamma)");

  std::vector<std::string> argv_storage{"permlab"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    const auto subs = app.get_subcommands();
    out << (subs.empty() ? app.help() : subs.front()->help());
    return 0;
  } catch (const CLI::ParseError& e) {
    const auto subs = app.get_subcommands();
    out << envelope("UsageError", e.what()).dump() << "\n";
    err << (subs.empty() ? app.help() : subs.front()->help());
    return 1;
  }

  try {
    std::string payload;
    if (*perm) payload = do_perm(o, in);
    if (*bethe) payload = do_minimize(o, in, true);
    if (*sinkhorn) payload = do_minimize(o, in, false);
    if (*degree) payload = do_degree_m(o, in);
    if (*coeffs) payload = do_coeffs(o, in);
    if (*recursion) payload = do_recursion_check(o, in);
    if (*bounds) payload = do_bounds(o, in);
    if (*m2) payload = do_m2(o, in);
    if (*pascal) payload = do_pascal(o);
    if (*entropy) payload = do_entropy(o, in);

    if (o.output.empty()) {
      out << payload;
    } else {
      std::ofstream file(o.output);
      if (!file) throw Error(ErrorCode::InvalidInput, "cannot open output file " + o.output);
      file << payload;
    }
    return 0;
  } catch (const NotConverged& nc) {
    json doc = envelope(error_code_name(ErrorCode::NoConvergence), "iteration cap reached before tolerance");
    doc["report"] = nc.report;
    out << doc.dump() << "\n";
    return 3;
  } catch (const Error& e) {
    out << envelope(error_code_name(e.code()), e.what()).dump() << "\n";
    return e.code() == ErrorCode::NoConvergence ? 3 : 2;
  }
}

}  // namespace permlab::cli
