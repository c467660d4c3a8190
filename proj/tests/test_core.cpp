#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "permlab/core.hpp"
#include "support.hpp"

using namespace permlab;
using namespace permlab::testing;

TEST_CASE("rational parsing and printing") {
  CHECK(parse_rational("7") == 7);
  CHECK(parse_rational("-3/6") == Rational(-1, 2));
  CHECK(parse_rational("0.125") == Rational(1, 8));
  CHECK(parse_rational("1e-3") == Rational(1, 1000));
  CHECK(parse_rational("2.5E2") == 250);
  CHECK(to_string(Rational(6, 4)) == "3/2");
  CHECK(to_string(Rational(4, 2)) == "2");
  CHECK_THROWS_AS(parse_rational("abc"), Error);
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK(factorial(5) == 120);
  CHECK(pow(Rational(2, 3), -2) == Rational(9, 4));
  CHECK(log_of(pow(Integer(10), 400)) == doctest::Approx(400 * std::log(10.0)));
}

TEST_CASE("matrix validation") {
  CHECK_THROWS_AS(matrix({{"1", "-1"}, {"0", "1"}}), Error);
  CHECK(RationalMatrix::identity(3)(1, 1) == 1);
  CHECK(RationalMatrix::identity(3)(1, 2) == 0);
}

TEST_CASE("support") {
  const auto id = support(RationalMatrix::identity(3));
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) CHECK(id(i, j) == (i == j));
  }
  CHECK(support(RationalMatrix::ones(2)) == SupportPattern::full(2));
  const auto s = support(matrix({{"1", "0"}, {"2", "3"}}));
  CHECK(s(0, 0));
  CHECK_FALSE(s(0, 1));
  CHECK(s(1, 0));
  CHECK(s(1, 1));
}

TEST_CASE("valid permutations") {
  CHECK(valid_permutations(RationalMatrix::identity(3)) == std::vector{Permutation::identity(3)});
  CHECK(valid_permutations(RationalMatrix::ones(2)).size() == 2);
  CHECK_THROWS_AS(valid_permutations(matrix({{"1", "1"}, {"0", "0"}})), Error);

  // Brute-force filter over S_4 for the thirds example: sigma(1) = 1,
  // sigma(2) = 3 and {sigma(3), sigma(4)} = {2, 4}.
  const auto gamma = matrix({{"1", "0", "0", "0"}, {"0", "0", "1", "0"}, {"0", "1/3", "0", "2/3"},
                             {"0", "2/3", "0", "1/3"}});
  const auto valid = valid_permutations(gamma);
  std::set<Permutation> expected{perm1({1, 3, 2, 4}), perm1({1, 3, 4, 2})};
  CHECK(std::set<Permutation>(valid.begin(), valid.end()) == expected);
  std::size_t brute = 0;
  for (const auto& sigma : all_permutations(4)) {
    bool ok = true;
    for (std::size_t i = 0; i < 4; ++i) ok = ok && gamma(i, sigma(i)) > 0;
    brute += ok;
  }
  CHECK(valid.size() == brute);
}

TEST_CASE("permutation algebra") {
  const auto s = perm1({2, 3, 1});
  CHECK(s.compose(s.inverse()) == Permutation::identity(3));
  CHECK(s.compose(s)(0) == 2);
  CHECK(all_permutations(4).size() == 24);
  CHECK_THROWS_AS(Permutation({0, 0, 1}), Error);
}

TEST_CASE("flow matrices") {
  CHECK_THROWS_AS(flow(2, {{2, 0}, {1, 1}}), Error);
  const auto f = FlowMatrix::from_gamma(matrix({{"1/3", "2/3"}, {"2/3", "1/3"}}), 3);
  CHECK(f(0, 1) == 2);
  CHECK(f.gamma(0, 1) == Rational(2, 3));
  CHECK_THROWS_AS(FlowMatrix::from_gamma(matrix({{"1/3", "2/3"}, {"2/3", "1/3"}}), 2), Error);
  CHECK(FlowMatrix::scaled_permutation(perm1({2, 1}), 3)(0, 1) == 3);
}

// Oracle: every non-negative integer n x n matrix with entries <= M, filtered
// by line sums.
static std::size_t brute_count(std::size_t n, unsigned order) {
  std::size_t count = 0;
  std::vector<unsigned> cells(n * n, 0);
  while (true) {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      unsigned r = 0, c = 0;
      for (std::size_t j = 0; j < n; ++j) {
        r += cells[i * n + j];
        c += cells[j * n + i];
      }
      ok = r == order && c == order;
    }
    count += ok;
    std::size_t pos = 0;
    while (pos < cells.size() && ++cells[pos] > order) cells[pos++] = 0;
    if (pos == cells.size()) break;
  }
  return count;
}

TEST_CASE("enumeration of Gamma_{M,n}") {
  CHECK(enumerate_flow_matrices(3, 1).size() == 6);
  CHECK(enumerate_flow_matrices(3, 2).size() == 21);
  CHECK(brute_count(3, 2) == 21);
  CHECK(enumerate_flow_matrices(3, 3).size() == brute_count(3, 3));
  for (unsigned m = 1; m <= 8; ++m) CHECK(enumerate_flow_matrices(2, m).size() == m + 1);

  const auto all = enumerate_flow_matrices(3, 3);
  CHECK(std::set<FlowMatrix>(all.begin(), all.end()).size() == all.size());

  const auto diag = enumerate_flow_matrices(3, 4, support(RationalMatrix::identity(3)));
  REQUIRE(diag.size() == 1);
  CHECK(diag[0] == FlowMatrix::scaled_permutation(Permutation::identity(3), 4));

  const auto banded = support(matrix({{"1", "1", "0"}, {"0", "1", "1"}, {"1", "0", "1"}}));
  for (const auto& f : enumerate_flow_matrices(3, 3, banded)) {
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) CHECK((f(i, j) == 0 || banded(i, j)));
    }
  }
  CHECK_THROWS_AS(enumerate_flow_matrices(5, 6, std::nullopt, 1000), Error);
}

TEST_CASE("Kronecker with the uniform matrix") {
  const auto t = matrix({{"1", "2"}, {"3", "4"}});
  CHECK(kron_uniform(t, 1) == t);
  const auto k = kron_uniform(RationalMatrix::ones(2), 2);
  CHECK(k.size() == 4);
  for (const auto& e : k.entries()) CHECK(e == Rational(1, 2));
  const auto k2 = kron_uniform(t, 2);
  CHECK(k2(0, 1) == Rational(1, 2));
  CHECK(k2(1, 2) == 1);
  CHECK(k2(3, 3) == 2);
  CHECK(k2(2, 0) == Rational(3, 2));
}

TEST_CASE("monomial") {
  const auto t = matrix({{"1/2", "0"}, {"0", "3"}});
  CHECK(monomial(t, flow(2, {{2, 0}, {0, 2}})) == Rational(9, 4));
}
