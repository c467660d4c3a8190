#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "permlab/bounds.hpp"
#include "permlab/permanent.hpp"
#include "support.hpp"

using namespace permlab;
using namespace permlab::testing;

namespace {

const CheckRecord& find(const std::vector<CheckRecord>& checks, const std::string& name) {
  for (const auto& c : checks) {
    if (c.name == name) return c;
  }
  throw std::runtime_error("missing check " + name);
}

}  // namespace

TEST_CASE("permanent bounds on the all-ones matrix") {
  const auto r = check_permanent_bounds(RationalMatrix::ones(2), 2);
  CHECK(r.perm == 2);
  CHECK(r.bethe_ratio_power == Rational(4, 3));
  CHECK(r.checks.size() == 4);
  CHECK(r.all_hold());
  CHECK(r.has_analytic);
  CHECK(r.perm_bethe == doctest::Approx(1.0));
}

TEST_CASE("tightness on diagonal matrices") {
  const auto diag = matrix({{"3", "0", "0"}, {"0", "1/2", "0"}, {"0", "0", "7"}});
  for (unsigned m = 1; m <= 4; ++m) {
    const auto r = check_permanent_bounds(diag, m, {.analytic = false});
    CHECK(r.bethe_ratio_power == 1);
    CHECK(find(r.checks, "sinkhorn_upper").lhs == find(r.checks, "sinkhorn_upper").rhs);
    CHECK(r.all_hold());
  }
}

TEST_CASE("permanent bounds on random matrices") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 5; ++trial) {
    const auto t = random_matrix(3, rng);
    for (unsigned m = 2; m <= 3; ++m) CHECK(check_permanent_bounds(t, m, {.analytic = false}).all_hold());
  }
}

TEST_CASE("digest is stable") {
  CHECK(theta_digest(RationalMatrix::ones(2)) == theta_digest(matrix({{"1", "2/2"}, {"3/3", "1"}})));
  CHECK(theta_digest(RationalMatrix::ones(2)) != theta_digest(RationalMatrix::identity(2)));
  CHECK(theta_digest(RationalMatrix::ones(2)).size() == 16);
}

TEST_CASE("coefficient bounds") {
  for (unsigned m = 1; m <= 4; ++m) {
    for (const auto& rec : check_coefficient_bounds(2, m)) CHECK(rec.holds);
  }
  for (const auto& rec : check_coefficient_bounds(3, 3)) CHECK(rec.holds);

  for (const auto& rec : check_coefficient_bounds(2, 3)) {
    if (rec.gamma == pascal_flow(2, 1)) {
      CHECK(find(rec.checks, "gibbs_bethe_upper").lhs == 9);
      CHECK(find(rec.checks, "gibbs_bethe_upper").rhs == 16);
    }
  }
  for (const auto& rec : check_coefficient_bounds(2, 2)) {
    if (rec.gamma == pascal_flow(2, 0)) {
      const auto& c = find(rec.checks, "gibbs_sinkhorn_upper");
      CHECK(c.lhs == 4);
      CHECK(c.rhs == 4);
    }
  }
  for (const auto& rec : check_coefficient_bounds(3, 1)) {
    CHECK(find(rec.checks, "gibbs_bethe_lower").rhs == 1);
    CHECK(find(rec.checks, "gibbs_sinkhorn_upper").lhs == 1);
  }
}

TEST_CASE("ratio identities") {
  const auto ones = ratio_identity(RationalMatrix::ones(2), 2, RatioKind::Bethe);
  CHECK(ones.direct == Rational(3, 4));
  CHECK(ones.sum_expression == Rational(3, 4));
  CHECK(ones.holds);

  const auto diag = ratio_identity(matrix({{"2", "0"}, {"0", "5"}}), 3, RatioKind::Bethe);
  CHECK(diag.direct == 1);
  CHECK(diag.holds);

  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 3; ++trial) {
    const auto t = random_matrix(3, rng);
    CHECK(ratio_identity(t, 2, RatioKind::Bethe).holds);
    CHECK(ratio_identity(t, 2, RatioKind::Sinkhorn).holds);
  }
  CHECK(ratio_identity(random_matrix(2, rng), 3, RatioKind::Sinkhorn).holds);
}

TEST_CASE("M = 2 ratio") {
  const auto ones = m2_ratio(RationalMatrix::ones(2));
  CHECK(ones.ratio == doctest::Approx(2 / std::sqrt(3.0)));
  CHECK(ones.via_cycles == doctest::Approx(ones.ratio));
  CHECK(ones.exact_agreement);
  CHECK(ones.bounds_ok);

  CHECK(m2_ratio(matrix({{"2", "0"}, {"0", "5"}})).ratio == doctest::Approx(1.0));

  const auto blocks = m2_ratio(matrix({{"1", "1", "0", "0"}, {"1", "1", "0", "0"}, {"0", "0", "1", "1"},
                                       {"0", "0", "1", "1"}}));
  CHECK(blocks.exact_agreement);
  CHECK(blocks.ratio == doctest::Approx(4.0 / 3.0));
  CHECK(blocks.via_cycles == doctest::Approx(blocks.ratio).epsilon(1e-12));
  CHECK_THROWS_AS(m2_ratio(RationalMatrix::ones(7)), Error);
}

TEST_CASE("method-of-types trend") {
  const auto half = asymptotic_trend(Rational(1, 2), {2, 4, 200});
  CHECK(half[0].log_coefficient_rate == doctest::Approx(0.5 * std::log(2.0)));
  CHECK(half[0].entropy == doctest::Approx(std::log(2.0)));
  for (const auto& row : half) CHECK(row.sandwich_holds);
  CHECK(half[2].entropy - half[2].log_coefficient_rate <= std::log(201.0) / 200);

  for (const auto& row : asymptotic_trend(Rational(0), {1, 5, 50})) {
    CHECK(row.log_coefficient_rate == 0.0);
    CHECK(row.entropy == 0.0);
    CHECK(row.sandwich_holds);
  }
  CHECK_THROWS_AS(asymptotic_trend(Rational(1, 3), {4}), Error);
  CHECK_THROWS_AS(asymptotic_trend(Rational(3, 2), {2}), Error);
}
