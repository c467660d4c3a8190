#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <thread>

#include "permlab/coefficients.hpp"
#include "permlab/permanent.hpp"
#include "support.hpp"

using namespace permlab;
using namespace permlab::testing;

namespace {

FlowMatrix thirds() { return flow(3, {{3, 0, 0, 0}, {0, 0, 3, 0}, {0, 1, 0, 2}, {0, 2, 0, 1}}); }

FlowMatrix average_of(const Permutation& a, const Permutation& b) {
  const std::size_t n = a.size();
  std::vector<unsigned> counts(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    ++counts[i * n + a(i)];
    ++counts[i * n + b(i)];
  }
  return FlowMatrix(n, 2, counts);
}

}  // namespace

TEST_CASE("peeling") {
  CHECK(peel(thirds(), perm1({1, 3, 2, 4})) == flow(2, {{2, 0, 0, 0}, {0, 0, 2, 0}, {0, 0, 0, 2}, {0, 2, 0, 0}}));
  CHECK(peel(thirds(), perm1({1, 3, 4, 2})) == flow(2, {{2, 0, 0, 0}, {0, 0, 2, 0}, {0, 1, 0, 1}, {0, 1, 0, 1}}));
  CHECK(peel(flow(2, {{2, 0, 0}, {0, 2, 0}, {0, 0, 2}}), Permutation::identity(3)) ==
        FlowMatrix::scaled_permutation(Permutation::identity(3), 1));
  CHECK_THROWS_AS(peel(thirds(), Permutation::identity(4)), Error);
  CHECK_THROWS_AS(peel(FlowMatrix::scaled_permutation(Permutation::identity(2), 1), Permutation::identity(2)),
                  Error);
  CHECK(decomposition_starts(thirds()).size() == 2);
}

TEST_CASE("fractional core") {
  const auto fc = fractional_core(thirds());
  CHECK(fc.rows == std::vector<std::size_t>{2, 3});
  CHECK(fc.cols == std::vector<std::size_t>{1, 3});
  CHECK(fc.r() == 2);
  CHECK(fc.core == matrix({{"1/3", "2/3"}, {"2/3", "1/3"}}));
  CHECK(fc.perm_core == 2);
  for (double x : normalized_core(fc)) CHECK(x == doctest::Approx(1.0));

  const auto pure = fractional_core(FlowMatrix::scaled_permutation(perm1({2, 3, 1}), 4));
  CHECK(pure.r() == 0);
  CHECK(pure.perm_core == 1);

  const auto half = fractional_core(flow(2, {{1, 1}, {1, 1}}));
  CHECK(half.r() == 2);
  CHECK(half.perm_core == 2);
}

TEST_CASE("fractional core bounds over Gamma_{M,3} and Gamma_{2,4}") {
  auto check_all = [](std::size_t n, unsigned order) {
    for (const auto& f : enumerate_flow_matrices(n, order)) {
      const auto fc = fractional_core(f);
      CHECK(fc.r() != 1);
      CHECK(fc.perm_core >= 1);
      CHECK(to_double(fc.perm_core) <= std::pow(2.0, n / 2.0) + 1e-12);
    }
  };
  for (unsigned m = 2; m <= 4; ++m) check_all(3, m);
  check_all(4, 2);
}

TEST_CASE("C_M examples") {
  CHECK(c_gibbs(pascal_flow(1, 2)) == 3);
  CHECK(c_gibbs(pascal_flow(2, 1)) == 3);
  CHECK(c_gibbs(pascal_flow(2, 2)) == 6);
  CHECK(c_gibbs(FlowMatrix::scaled_permutation(perm1({3, 1, 2}), 4)) == 1);
  const auto shift = perm1({2, 3, 1});
  CHECK(c_gibbs(average_of(Permutation::identity(3), shift)) == 2);
  CHECK(c_gibbs_brute(average_of(Permutation::identity(3), shift)) == 2);
}

TEST_CASE("C_M matches the brute-force count") {
  auto compare = [](std::size_t n, unsigned order) {
    for (const auto& f : enumerate_flow_matrices(n, order)) CHECK(c_gibbs(f) == c_gibbs_brute(f));
  };
  for (unsigned m = 1; m <= 5; ++m) compare(2, m);
  for (unsigned m = 1; m <= 3; ++m) compare(3, m);
  compare(4, 2);
  CHECK_THROWS_AS(c_gibbs_brute(FlowMatrix::scaled_permutation(Permutation::identity(5), 4)), Error);
}

TEST_CASE("C_M cache is safe under concurrent use") {
  const auto flows = enumerate_flow_matrices(3, 4);
  GibbsCounter shared;
  std::vector<std::vector<Integer>> results(4);
  {
    std::vector<std::jthread> workers;
    for (std::size_t w = 0; w < results.size(); ++w) {
      workers.emplace_back([&, w] {
        for (std::size_t k = 0; k < flows.size(); ++k) {
          results[w].push_back(shared(flows[(k + w * 7) % flows.size()]));
        }
      });
    }
  }
  GibbsCounter fresh;
  for (std::size_t w = 0; w < results.size(); ++w) {
    for (std::size_t k = 0; k < flows.size(); ++k) CHECK(results[w][k] == fresh(flows[(k + w * 7) % flows.size()]));
  }
  CHECK(shared.cache_size() == fresh.cache_size());
}

TEST_CASE("C_B,M") {
  for (unsigned m = 1; m <= 6; ++m) {
    for (unsigned k = 0; k <= m; ++k) CHECK(c_bethe(pascal_flow(k, m - k)) == 1);
  }
  std::mt19937_64 rng(2);
  for (std::size_t n = 1; n <= 4; ++n) {
    for (unsigned m = 1; m <= 4; ++m) CHECK(c_bethe(FlowMatrix::scaled_permutation(random_perm(n, rng), m)) == 1);
  }
  for (const auto& sigma : all_permutations(3)) CHECK(c_bethe(FlowMatrix::scaled_permutation(sigma, 1)) == 1);
}

TEST_CASE("C_scS,M") {
  CHECK(c_sinkhorn(pascal_flow(2, 0)) == Rational(1, 4));
  CHECK(c_sinkhorn(pascal_flow(1, 1)) == 1);
  CHECK(c_sinkhorn(pascal_flow(3, 0)) == Rational(4, 81));
  CHECK(c_sinkhorn(pascal_flow(2, 1)) == Rational(4, 9));
  for (std::size_t n = 1; n <= 4; ++n) {
    for (unsigned m = 1; m <= 4; ++m) {
      const Rational expected = pow(Rational(factorial(m), pow(Integer(m), m)), static_cast<long>(n));
      CHECK(c_sinkhorn(FlowMatrix::scaled_permutation(Permutation::identity(n), m)) == expected);
    }
  }
  for (const auto& sigma : all_permutations(3)) CHECK(c_sinkhorn(FlowMatrix::scaled_permutation(sigma, 1)) == 1);
}

TEST_CASE("recursion examples") {
  const auto g = verify_recursion(CoefficientKind::Gibbs, pascal_flow(1, 2));
  CHECK(g.lhs == 3);
  CHECK(g.rhs == 3);
  CHECK(g.holds);

  const auto b = verify_recursion(CoefficientKind::Bethe, pascal_flow(1, 1));
  CHECK(b.lhs == 1);
  CHECK(b.rhs == 1);
  CHECK(b.holds);

  const auto s = verify_recursion(CoefficientKind::Sinkhorn, pascal_flow(1, 1));
  CHECK(s.lhs == 1);
  CHECK(s.rhs == 1);
  CHECK(s.holds);
  CHECK(chi(2) == 2);
  CHECK(chi(3) == Rational(9, 4));

  CHECK_THROWS_AS(verify_recursion(CoefficientKind::Bethe, pascal_flow(1, 0)), Error);
}

TEST_CASE("recursions over Gamma_{M,3}") {
  for (unsigned m = 2; m <= 3; ++m) {
    for (const auto& f : enumerate_flow_matrices(3, m)) {
      for (auto kind : {CoefficientKind::Gibbs, CoefficientKind::Bethe, CoefficientKind::Sinkhorn}) {
        CHECK(verify_recursion(kind, f).holds);
      }
    }
  }
}

TEST_CASE("cycle counts") {
  CHECK(cycle_count(perm1({1, 2, 4, 3, 6, 7, 5}), Permutation::identity(7)) == 2);
  CHECK(cycle_count(perm1({3, 1, 2}), perm1({3, 1, 2})) == 0);
  CHECK(cycle_count(perm1({2, 1}), Permutation::identity(2)) == 1);
}

TEST_CASE("M = 2 coefficients through cycle counts") {
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto perms = all_permutations(n);
    for (const auto& a : perms) {
      for (const auto& b : perms) {
        const auto f = average_of(a, b);
        CHECK(c_gibbs(f) == pow(Integer(2), cycle_count(a, b)));
        CHECK(c_bethe(f) == 1);
      }
    }
  }
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_perm(5, rng);
    const auto b = random_perm(5, rng);
    CHECK(c_gibbs(average_of(a, b)) == pow(Integer(2), cycle_count(a, b)));
  }
}

TEST_CASE("coefficient expansion of perm^M") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 5; ++trial) {
    for (std::size_t n = 2; n <= 3; ++n) {
      const auto theta = random_matrix(n, rng);
      for (unsigned m = 1; m <= 3; ++m) {
        Rational sum(0);
        for (const auto& f : enumerate_flow_matrices(n, m)) sum += monomial(theta, f) * Rational(c_gibbs(f));
        CHECK(sum == pow(perm_exact(theta), m));
      }
    }
  }
}

TEST_CASE("Pascal tables") {
  const auto gibbs = pascal_table(CoefficientKind::Gibbs, 3);
  std::vector<Rational> row3;
  for (const auto& e : gibbs) {
    if (e.order == 3) row3.push_back(e.value);
  }
  CHECK(row3 == std::vector<Rational>{1, 3, 3, 1});
  for (const auto& e : pascal_table(CoefficientKind::Bethe, 3)) CHECK(e.value == 1);
  const auto csv = pascal_csv(pascal_table(CoefficientKind::Sinkhorn, 3));
  CHECK(csv.rfind("M,k1,value\n", 0) == 0);
  CHECK(csv.find("\n3,0,4/81\n") != std::string::npos);
  CHECK(csv.find("\n3,1,4/9\n") != std::string::npos);
  CHECK(parse_kind("bethe") == CoefficientKind::Bethe);
  CHECK_THROWS_AS(parse_kind("other"), Error);
}
