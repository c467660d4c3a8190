#include "permlab/free_energy.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

#include "permlab/assignment.hpp"

namespace permlab {

namespace {

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

// Interior shift used only for gradients inside Frank-Wolfe.
constexpr double kGradientClamp = 1e-12;

void check_point(const DoublyStochasticPoint& gamma, const RationalMatrix& theta, double tol) {
  if (gamma.n != theta.size() || gamma.entries.size() != gamma.n * gamma.n) {
    throw Error(ErrorCode::DimensionMismatch, "gamma and theta differ in size");
  }
  for (std::size_t k = 0; k < gamma.entries.size(); ++k) {
    const double g = gamma.entries[k];
    if (g < -tol || g > 1.0 + tol) throw Error(ErrorCode::InvalidInput, "gamma entry outside [0, 1]");
    if (theta.entries()[k] == 0 && g > tol) {
      throw Error(ErrorCode::SupportViolation, "gamma is positive where theta is zero");
    }
  }
  if (gamma.line_deviation() > 1e-9) throw Error(ErrorCode::InvalidInput, "gamma is not doubly stochastic");
}

}  // namespace

double DoublyStochasticPoint::line_deviation() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    double col = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      row += entries[i * n + j];
      col += entries[j * n + i];
    }
    worst = std::max({worst, std::abs(row - 1.0), std::abs(col - 1.0)});
  }
  return worst;
}

DoublyStochasticPoint DoublyStochasticPoint::from_flow(const FlowMatrix& flow) {
  DoublyStochasticPoint p{flow.size(), {}};
  p.entries.reserve(flow.counts().size());
  for (auto c : flow.counts()) p.entries.push_back(static_cast<double>(c) / flow.order());
  return p;
}

DoublyStochasticPoint DoublyStochasticPoint::from_rational(const RationalMatrix& gamma) {
  return {gamma.size(), gamma.to_doubles()};
}

double average_energy(const DoublyStochasticPoint& gamma, const RationalMatrix& theta, double tol) {
  check_point(gamma, theta, tol);
  double u = 0.0;
  for (std::size_t k = 0; k < gamma.entries.size(); ++k) {
    if (theta.entries()[k] == 0 || gamma.entries[k] <= 0.0) continue;
    u -= gamma.entries[k] * log_of(theta.entries()[k]);
  }
  return u;
}

double bethe_entropy(const DoublyStochasticPoint& gamma) {
  double h = 0.0;
  for (double g : gamma.entries) h += -xlogx(g) + xlogx(1.0 - g);
  return h;
}

double scaled_sinkhorn_entropy(const DoublyStochasticPoint& gamma) {
  double h = -static_cast<double>(gamma.n);
  for (double g : gamma.entries) h -= xlogx(g);
  return h;
}

double bethe_free_energy(const DoublyStochasticPoint& gamma, const RationalMatrix& theta) {
  return average_energy(gamma, theta) - bethe_entropy(gamma);
}

double scaled_sinkhorn_free_energy(const DoublyStochasticPoint& gamma, const RationalMatrix& theta) {
  return average_energy(gamma, theta) - scaled_sinkhorn_entropy(gamma);
}

MinimizationReport minimize_scaled_sinkhorn(const RationalMatrix& theta, double tol, std::size_t max_iter) {
  const std::size_t n = theta.size();
  MinimizationReport report;
  std::vector<double> a = theta.to_doubles();
  std::vector<double> row(n), col(n);
  auto residual = [&] {
    std::fill(row.begin(), row.end(), 0.0);
    std::fill(col.begin(), col.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        row[i] += a[i * n + j];
        col[j] += a[i * n + j];
      }
    }
    double r = 0.0;
    for (std::size_t i = 0; i < n; ++i) r = std::max({r, std::abs(row[i] - 1.0), std::abs(col[i] - 1.0)});
    return r;
  };
  double r = residual();
  while (r > tol && report.iterations < max_iter) {
    for (std::size_t i = 0; i < n; ++i) {
      if (row[i] <= 0.0) throw Error(ErrorCode::EmptySupport, "theta has an all-zero row");
      for (std::size_t j = 0; j < n; ++j) a[i * n + j] /= row[i];
    }
    std::fill(col.begin(), col.end(), 0.0);
    for (std::size_t k = 0; k < n * n; ++k) col[k % n] += a[k];
    for (std::size_t k = 0; k < n * n; ++k) {
      if (col[k % n] <= 0.0) throw Error(ErrorCode::EmptySupport, "theta has an all-zero column");
      a[k] /= col[k % n];
    }
    r = residual();
    report.trace.push_back(r);
    ++report.iterations;
  }
  report.converged = r <= tol;
  report.gap_or_residual = r;
  report.minimizer = {n, std::move(a)};
  double objective = static_cast<double>(n);
  for (std::size_t k = 0; k < n * n; ++k) {
    const double g = report.minimizer.entries[k];
    if (g > 0.0) objective += g * std::log(g) - g * log_of(theta.entries()[k]);
  }
  report.objective = objective;
  report.value = std::exp(-objective);
  return report;
}

namespace {

struct BetheObjective {
  std::size_t n;
  SupportPattern pattern;
  std::vector<double> log_theta;

  explicit BetheObjective(const RationalMatrix& theta) : n(theta.size()), pattern(support(theta)) {
    log_theta.resize(n * n, 0.0);
    for (std::size_t k = 0; k < n * n; ++k) {
      if (theta.entries()[k] > 0) log_theta[k] = log_of(theta.entries()[k]);
    }
  }

  bool in_support(std::size_t k) const { return pattern(k / n, k % n); }

  // Accumulated in extended precision.
  long double value(const std::vector<double>& g) const {
    auto xlx = [](long double x) { return x > 0.0L ? x * std::log(x) : 0.0L; };
    long double f = 0.0L;
    for (std::size_t k = 0; k < n * n; ++k) {
      if (!in_support(k)) continue;
      const long double x = g[k];
      f += xlx(x) - x * log_theta[k] - xlx(1.0L - x);
    }
    return f;
  }

  double partial(double g, std::size_t k) const {
    const double c = std::clamp(g, kGradientClamp, 1.0 - kGradientClamp);
    return std::log(c) + std::log1p(-c) - log_theta[k] + 2.0;
  }

  // Derivative of s -> F(g + s d).
  double slope(const std::vector<double>& g, const std::vector<double>& d, double s) const {
    double out = 0.0;
    for (std::size_t k = 0; k < n * n; ++k) {
      if (in_support(k) && d[k] != 0.0) out += partial(g[k] + s * d[k], k) * d[k];
    }
    return out;
  }
};

}  // namespace

namespace {

struct Vertex {
  Permutation sigma;
  double weight;
};

// Writes a doubly stochastic point as a convex combination of permutation
// matrices inside `pattern`, peeling the max-product permutation each round.
std::vector<Vertex> birkhoff_decomposition(std::vector<double> rest, std::size_t n, const SupportPattern& pattern) {
  std::vector<Vertex> out;
  double total = 0.0;
  std::vector<double> cost(n * n);
  for (std::size_t round = 0; round < n * n + 1 && total < 1.0 - 1e-13; ++round) {
    std::vector<bool> mask(n * n);
    for (std::size_t k = 0; k < n * n; ++k) {
      mask[k] = pattern(k / n, k % n) && rest[k] > 1e-15;
      cost[k] = mask[k] ? -std::log(rest[k]) : 0.0;
    }
    const SupportPattern positive(n, mask);
    Assignment a;
    try {
      a = solve_assignment(cost, n, &positive);
    } catch (const Error&) {
      break;
    }
    double w = 1.0;
    for (std::size_t i = 0; i < n; ++i) w = std::min(w, rest[i * n + a.permutation(i)]);
    for (std::size_t i = 0; i < n; ++i) rest[i * n + a.permutation(i)] -= w;
    total += w;
    out.push_back({a.permutation, w});
  }
  if (out.empty()) out.push_back({solve_assignment(cost, n, &pattern).permutation, 1.0});
  double sum = 0.0;
  for (const auto& v : out) sum += v.weight;
  for (auto& v : out) v.weight /= sum;
  return out;
}

}  // namespace

MinimizationReport minimize_bethe(const RationalMatrix& theta, double tol, std::size_t max_iter) {
  const std::size_t n = theta.size();
  valid_permutations(theta);
  const BetheObjective objective(theta);

  MinimizationReport report;
  std::vector<Vertex> active =
      birkhoff_decomposition(minimize_scaled_sinkhorn(theta).minimizer.entries, n, objective.pattern);
  std::vector<double> g(n * n, 0.0);
  for (const auto& v : active) {
    for (std::size_t i = 0; i < n; ++i) g[i * n + v.sigma(i)] += v.weight;
  }
  long double f = objective.value(g);
  std::vector<double> grad(n * n), d(n * n), trial(n * n);
  double gap = std::numeric_limits<double>::infinity();
  auto score = [&](const Permutation& sigma) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += grad[i * n + sigma(i)];
    return s;
  };

  while (true) {
    for (std::size_t k = 0; k < n * n; ++k) grad[k] = objective.in_support(k) ? objective.partial(g[k], k) : 0.0;
    const Assignment toward = solve_assignment(grad, n, &objective.pattern);
    double along = 0.0;
    for (std::size_t k = 0; k < n * n; ++k) along += grad[k] * g[k];
    gap = along - score(toward.permutation);
    if (gap <= tol || report.iterations >= max_iter) break;

    // Pairwise step: move mass from the worst active vertex to the oracle vertex.
    std::size_t away = 0;
    for (std::size_t a = 1; a < active.size(); ++a) {
      if (score(active[a].sigma) > score(active[away].sigma)) away = a;
    }
    std::fill(d.begin(), d.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      d[i * n + toward.permutation(i)] += 1.0;
      d[i * n + active[away].sigma(i)] -= 1.0;
    }
    const double max_step = active[away].weight;
    double step = max_step;
    if (objective.slope(g, d, max_step) > 0.0) {
      double lo = 0.0;
      double hi = max_step;
      for (int it = 0; it < 200 && hi - lo > 1e-17 * max_step; ++it) {
        const double mid = 0.5 * (lo + hi);
        (objective.slope(g, d, mid) > 0.0 ? hi : lo) = mid;
      }
      step = 0.5 * (lo + hi);
    }
    long double f_new = f;
    bool descended = false;
    for (int shrink = 0; shrink < 60; ++shrink, step *= 0.5) {
      for (std::size_t k = 0; k < n * n; ++k) trial[k] = std::clamp(g[k] + step * d[k], 0.0, 1.0);
      f_new = objective.value(trial);
      if (f_new <= f) {
        descended = true;
        break;
      }
    }
    if (!descended) break;

    g.swap(trial);
    f = f_new;
    auto it = std::find_if(active.begin(), active.end(), [&](const Vertex& v) { return v.sigma == toward.permutation; });
    if (it == active.end()) {
      active.push_back({toward.permutation, step});
    } else {
      it->weight += step;
    }
    if (step >= max_step) {
      active.erase(active.begin() + static_cast<std::ptrdiff_t>(away));
    } else {
      active[away].weight -= step;
    }
    report.trace.push_back(static_cast<double>(f));
    ++report.iterations;
  }

  report.converged = gap <= tol;
  report.gap_or_residual = gap;
  report.objective = static_cast<double>(f);
  report.value = std::exp(-f);
  report.minimizer = {n, std::move(g)};
  return report;
}

double gibbs_entropy_modified(const FlowMatrix& flow) {
  const std::size_t n = flow.size();
  if (n > 6) throw Error(ErrorCode::SizeGuard, "modified Gibbs entropy limited to n <= 6");
  const auto perms = permutations_within(support(flow));
  if (perms.size() <= 1) return 0.0;

  // Multipliers on the fractional cells only.
  std::vector<std::size_t> cell_of(n * n, SIZE_MAX);
  std::vector<double> target;
  for (std::size_t k = 0; k < n * n; ++k) {
    const unsigned c = flow.counts()[k];
    if (c > 0 && c < flow.order()) {
      cell_of[k] = target.size();
      target.push_back(static_cast<double>(c) / flow.order());
    }
  }
  const Eigen::Index dim = static_cast<Eigen::Index>(target.size());
  std::vector<std::vector<Eigen::Index>> uses(perms.size());
  for (std::size_t p = 0; p < perms.size(); ++p) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t c = cell_of[i * n + perms[p](i)];
      if (c != SIZE_MAX) uses[p].push_back(static_cast<Eigen::Index>(c));
    }
  }
  const Eigen::VectorXd gamma = Eigen::Map<const Eigen::VectorXd>(target.data(), dim);

  struct Dual {
    double value;
    double log_z;
    Eigen::VectorXd mean;
    Eigen::MatrixXd cov;
    std::vector<double> prob;
  };
  auto evaluate = [&](const Eigen::VectorXd& lambda, bool second_order) {
    std::vector<double> score(perms.size());
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t p = 0; p < perms.size(); ++p) {
      double s = 0.0;
      for (auto c : uses[p]) s += lambda[c];
      score[p] = s;
      top = std::max(top, s);
    }
    double z = 0.0;
    for (double s : score) z += std::exp(s - top);
    Dual out{0.0, top + std::log(z), Eigen::VectorXd::Zero(dim), Eigen::MatrixXd(), {}};
    out.prob.resize(perms.size());
    for (std::size_t p = 0; p < perms.size(); ++p) {
      out.prob[p] = std::exp(score[p] - out.log_z);
      for (auto c : uses[p]) out.mean[c] += out.prob[p];
    }
    out.value = out.log_z - lambda.dot(gamma);
    if (second_order) {
      out.cov = Eigen::MatrixXd::Zero(dim, dim);
      for (std::size_t p = 0; p < perms.size(); ++p) {
        for (auto a : uses[p]) {
          for (auto b : uses[p]) out.cov(a, b) += out.prob[p];
        }
      }
      out.cov -= out.mean * out.mean.transpose();
    }
    return out;
  };

  Eigen::VectorXd lambda = Eigen::VectorXd::Zero(dim);
  Dual state = evaluate(lambda, true);
  double damping = 1e-6;
  for (int iter = 0; iter < 500; ++iter) {
    const Eigen::VectorXd grad = state.mean - gamma;
    if (grad.lpNorm<Eigen::Infinity>() <= 1e-11) break;
    bool improved = false;
    for (int attempt = 0; attempt < 60 && !improved; ++attempt) {
      Eigen::MatrixXd h = state.cov;
      h.diagonal().array() += damping;
      const Eigen::VectorXd delta = h.ldlt().solve(-grad);
      Dual next = evaluate(lambda + delta, true);
      if (next.value < state.value - 1e-16 * std::abs(state.value) || (next.mean - gamma).lpNorm<Eigen::Infinity>() < grad.lpNorm<Eigen::Infinity>()) {
        lambda += delta;
        state = std::move(next);
        damping = std::max(damping * 0.1, 1e-12);
        improved = true;
      } else {
        damping *= 10.0;
      }
    }
    if (!improved) break;
  }
  if ((state.mean - gamma).lpNorm<Eigen::Infinity>() > 1e-9) {
    throw Error(ErrorCode::NoConvergence, "max-entropy dual did not reach 1e-9 moment residual");
  }
  double h = 0.0;
  for (double p : state.prob) h -= xlogx(p);
  return h;
}

EntropyValues entropy_values(const FlowMatrix& flow) {
  const auto point = DoublyStochasticPoint::from_flow(flow);
  return {gibbs_entropy_modified(flow), bethe_entropy(point), scaled_sinkhorn_entropy(point)};
}

}  // namespace permlab
