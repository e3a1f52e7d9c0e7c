#include <random>

#include "doctest.h"
#include "spinlm/lift.hpp"

using namespace spinlm;

namespace {

SqrtPiScalar random_scalar(std::mt19937& rng) {
  std::uniform_int_distribution<int> coeff(-4, 4);
  std::uniform_int_distribution<int> denom(1, 3);
  std::uniform_int_distribution<int> deg(0, 3);
  SqrtPiScalar x;
  const int d = deg(rng);
  for (int k = 0; k <= d; ++k) x += SqrtPiScalar(Rational(coeff(rng), denom(rng))) * SqrtPiScalar::s_power(k);
  return x;
}

SqrtPiModule coordinate(int n, int lo, int hi) {
  SqrtPiModule m(2 * n, 0);
  for (int a = lo; a <= hi; ++a) {
    std::vector<SqrtPiScalar> col(static_cast<std::size_t>(2 * n));
    col[static_cast<std::size_t>(a - 1)] = 1;
    m.append_column(col);
  }
  return m;
}

// Negates the first entry carrying a pure s term.
bool flip_first_sqrt_entry(SqrtPiModule& m) {
  for (int c = 0; c < m.cols(); ++c) {
    for (int r = 0; r < m.rows(); ++r) {
      if (m.at(r, c).degree() == 1 && m.at(r, c).coeff(0) == 0) {
        m.at(r, c) = -m.at(r, c);
        return true;
      }
    }
  }
  return false;
}

}  // namespace

TEST_CASE("scalar ring axioms and reduction mod s") {
  std::mt19937 rng(41);
  for (int trial = 0; trial < 300; ++trial) {
    const SqrtPiScalar a = random_scalar(rng);
    const SqrtPiScalar b = random_scalar(rng);
    const SqrtPiScalar c = random_scalar(rng);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK(a - a == SqrtPiScalar());
    CHECK((a * b).reduce() == a.reduce() * b.reduce());
    CHECK((a + b).reduce() == a.reduce() + b.reduce());
    CHECK(a.even_part() + a.odd_part() == a);
  }
  CHECK(SqrtPiScalar::s_power(1) * SqrtPiScalar::s_power(1) == SqrtPiScalar::pi());
  CHECK(SqrtPiScalar::linear(0, 3).valuation() == 1);
  CHECK_FALSE(SqrtPiScalar().valuation().has_value());
  CHECK((SqrtPiScalar::s_power(3) * 2).shift_down(2) == SqrtPiScalar::linear(0, 2));
}

TEST_CASE("Smith valuations and determinants") {
  SqrtPiMatrix m(2, 2);
  m.at(0, 0) = SqrtPiScalar::s_power(1);
  m.at(1, 1) = SqrtPiScalar::linear(1, 1) * SqrtPiScalar::pi();
  CHECK(smith_valuations(m) == std::vector<int>{1, 2});
  CHECK(determinant(m) == SqrtPiScalar::s_power(3) + SqrtPiScalar::s_power(4));
  SqrtPiMatrix singular(2, 2);
  singular.at(0, 0) = 1;
  singular.at(0, 1) = 2;
  singular.at(1, 0) = 3;
  singular.at(1, 1) = 6;
  CHECK(smith_valuations(singular).size() == 1);
  CHECK(determinant(singular).is_zero());
}

TEST_CASE("gram form is the symmetric anti-diagonal") {
  const SqrtPiMatrix h = gram_form(4);
  CHECK(h == h.transpose());
  for (int a = 0; a < 8; ++a) {
    for (int b = 0; b < 8; ++b) CHECK(h.at(a, b) == SqrtPiScalar(b == 7 - a ? 1 : 0));
  }
}

TEST_CASE("coordinate lattice of the rank-i cell") {
  for (int n : {4, 5}) {
    for (int i = 1; i < n; ++i) {
      const LiftPair pair = build_lift(i, 1, i, n);
      CHECK(same_module(pair.plus_side, coordinate(n, 1, n)));
      const LmReport rep = check_lm_conditions(pair, i, n, orbit_representative(i, 1, i, n));
      CHECK(rep.all_pass());
      CHECK(rep.failures().empty());
    }
  }
}

TEST_CASE("every listed lift satisfies the conditions at n=4") {
  const int n = 4;
  for (int i = 1; i < n; ++i) {
    for (int l = std::max(0, 2 * i - n); l <= i; ++l) {
      for (int d = 1; d <= (l == i ? 4 : 1); ++d) {
        const LiftPair pair = build_lift(l, d, i, n);
        const IsoSubset target = orbit_representative(l, d, i, n);
        const LmReport rep = check_lm_conditions(pair, i, n, target);
        INFO("i=" << i << " l=" << l << " d=" << d << " " << rep.failures());
        CHECK(rep.all_pass());
        CHECK(stratum_rank(IsoSubset::of_positions(n, i, reduced_support(pair.plus_side))) == l);
      }
    }
  }
}

TEST_CASE("flipping a sign in a sqrt(pi) generator is caught") {
  const int n = 4;
  const int i = 2;
  LiftPair pair = build_lift(0, 1, i, n);
  REQUIRE(flip_first_sqrt_entry(pair.plus_side));
  const LmReport rep = check_lm_conditions(pair, i, n, orbit_representative(0, 1, i, n));
  CHECK_FALSE(rep.all_pass());
  bool caught = false;
  for (const LmClause& c : rep.clauses) {
    if (!c.pass && (c.name == "orthogonal" || c.name == "lambda1" || c.name == "lambda2")) {
      caught = true;
      CHECK_FALSE(c.witness.empty());
    }
  }
  CHECK(caught);
}

TEST_CASE("a wrong expected reduction is reported") {
  const int n = 4;
  const LiftPair pair = build_lift(2, 1, 2, n);
  const LmReport rep = check_lm_conditions(pair, 2, n, orbit_representative(2, 2, 2, n));
  CHECK_FALSE(rep.all_pass());
  CHECK(rep.failures().find("reduction") != std::string::npos);
}

TEST_CASE("non-saturated lattices are not direct summands") {
  SqrtPiModule m = coordinate(4, 1, 4);
  m.at(0, 0) = SqrtPiScalar::s_power(1);
  CHECK_FALSE(is_direct_summand(m));
  LiftPair pair{m, m};
  CHECK_FALSE(check_lm_conditions(pair, 2, 4, orbit_representative(2, 1, 2, 4)).all_pass());
}

TEST_CASE("duals") {
  const SqrtPiModule e = coordinate(4, 1, 4);
  CHECK(same_module(dual_module(e), e));
  for (int n : {4, 5, 6}) {
    for (int i = 1; i < n; ++i) {
      for (int l = std::max(0, 2 * i - n); l < i; ++l) {
        const LiftPair pair = build_lift(l, 1, i, n);
        CHECK(same_module(dual_module(pair.plus_side), listed_dual_lift(l, i, n)));
        CHECK(same_module(dual_module(dual_module(pair.plus_side)), pair.plus_side));
      }
    }
  }
}

TEST_CASE("module membership") {
  const SqrtPiModule e = coordinate(4, 1, 4);
  std::vector<SqrtPiScalar> x(8);
  x[0] = SqrtPiScalar::linear(2, 5);
  x[3] = -1;
  CHECK(module_contains(e, x));
  x[0] = Rational(1, 2);
  CHECK(module_contains(e, x));
  x[5] = SqrtPiScalar::s_power(1);
  CHECK_FALSE(module_contains(e, x));
}

TEST_CASE("perp subset and lift argument checks") {
  const IsoSubset e = IsoSubset::of_positions(4, 2, {1, 2, 3, 4});
  CHECK(perp_subset(e) == e);
  CHECK_THROWS_AS(build_lift(1, 2, 2, 4), Error);
  CHECK_THROWS_AS(build_lift(0, 1, 0, 4), Error);
  CHECK_THROWS_AS(build_lift(0, 1, 3, 4), Error);
}
