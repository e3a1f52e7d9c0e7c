#include <random>

#include "doctest.h"
#include "spinlm/bruhat.hpp"
#include "spinlm/weyl.hpp"
#include "test_support.hpp"

using namespace spinlm;

namespace {

AffineElement mu_plus(int n) { return AffineElement::translation(cochar(Sign::plus, n)); }

}  // namespace

TEST_CASE("multiply and invert on basic elements") {
  for (int n : {4, 5, 6}) {
    const AffineElement e = AffineElement::identity(n);
    const SpecialElements sp = special_elements(n);
    CHECK(multiply(e, sp.tau2) == sp.tau2);
    CHECK(multiply(sp.tau1, invert(sp.tau1)) == e);
    CHECK(multiply(invert(sp.tau2), sp.tau2) == e);
    CHECK(invert(e) == e);
    CHECK(multiply(mu_plus(n), mu_plus(n)) == AffineElement::translation(cochar(Sign::plus, n).scaled(2)));
    const ZVec v = cochar(Sign::minus, n);
    CHECK(invert(AffineElement::translation(v)) == AffineElement::translation(-v));
  }
}

TEST_CASE("act on vectors") {
  const int n = 4;
  const ZVec v{8, {3, -1, 4, 1, -5, 9, 2, -6}};
  CHECK(act(AffineElement::identity(n), v) == v);
  CHECK(act(mu_plus(n), v) == v + cochar(Sign::plus, n));
  // The entry in slot 1 moves to slot 2 under (1 2)(7 8).
  const SignedPerm p = SignedPerm::from_transpositions(n, {{1, 2}, {7, 8}});
  const ZVec w = p.apply(v);
  CHECK(w[1] == v[0]);
  CHECK(w[0] == v[1]);
}

TEST_CASE("Kottwitz values and epsilon of special elements") {
  for (int n : {4, 5, 6, 7}) {
    const SpecialElements sp = special_elements(n);
    CHECK(kottwitz(AffineElement::identity(n)) == KottwitzValue{0, 0});
    CHECK(kottwitz(sp.tau2) == KottwitzValue{1, 0});
    CHECK(kottwitz(sp.tau1) == KottwitzValue{0, 1});
    CHECK(epsilon(AffineElement::identity(n)) == 0);
    CHECK(epsilon(sp.tau1) == 1);
    CHECK(epsilon(mu_plus(n)) == n % 2);
  }
  const SpecialElements sp4 = special_elements(4);
  CHECK(sp4.tau1.t() == ZVec{8, {-1, 0, 0, 0, 0, 0, 0, 1}});
}

TEST_CASE("kottwitz rejects the odd component") {
  const int n = 4;
  const AffineElement odd = AffineElement::permutation(special_elements(n).tau);
  CHECK_FALSE(odd.in_identity_component());
  CHECK_THROWS_AS(kottwitz(odd), Error);
}

TEST_CASE("group laws on random triples") {
  std::mt19937 rng(20261019);
  for (int n : {4, 5}) {
    for (int trial = 0; trial < 300; ++trial) {
      const AffineElement x = testing::random_element(rng, n);
      const AffineElement y = testing::random_element(rng, n);
      const AffineElement z = testing::random_element(rng, n);
      CHECK(multiply(multiply(x, y), z) == multiply(x, multiply(y, z)));
      CHECK(multiply(x, invert(x)).is_identity());
      CHECK(multiply(invert(x), x).is_identity());

      const AffineElement xy = multiply(x, y);
      CHECK(xy.trans().similitude() == x.trans().similitude() + y.trans().similitude());

      const KottwitzValue kx = kottwitz(x);
      const KottwitzValue ky = kottwitz(y);
      const KottwitzValue kxy = kottwitz(xy);
      CHECK(kxy.z == kx.z + ky.z);
      CHECK(kxy.parity == (kx.parity + ky.parity) % 2);

      const ZVec v = testing::random_vector(rng, n);
      CHECK(act(xy, v) == act(x, act(y, v)));
    }
  }
}

TEST_CASE("W' is closed under products and inverses") {
  std::mt19937 rng(7);
  int seen = 0;
  for (int trial = 0; trial < 2000 && seen < 200; ++trial) {
    const AffineElement x = testing::random_element(rng, 5);
    const AffineElement y = testing::random_element(rng, 5);
    if (!x.in_w_prime() || !y.in_w_prime()) continue;
    ++seen;
    CHECK(multiply(x, y).in_w_prime());
    CHECK(invert(x).in_w_prime());
  }
  CHECK(seen >= 100);
}

TEST_CASE("signed permutations: parity is multiplicative and S* is closed") {
  const int n = 4;
  const SignedPerm a = SignedPerm::from_transpositions(n, {{1, 2}, {7, 8}});
  const SignedPerm b = SignedPerm::from_transpositions(n, {{4, 5}});
  CHECK(a.is_even());
  CHECK_FALSE(b.is_even());
  CHECK_FALSE(a.compose(b).is_even());
  CHECK(b.compose(b).is_identity());
  CHECK(a.compose(a.inverse()).is_identity());
  CHECK(even_signed_perms(4).size() == 192);
  CHECK(even_signed_perms(5).size() == 1920);
  for (const SignedPerm& p : even_signed_perms(4)) {
    for (int k = 0; k < 2 * n; ++k) CHECK(p(star(k, n)) == star(p(k), n));
  }
  // (1 2) alone does not commute with k -> k*.
  const int bad[] = {2, 1, 3, 4, 5, 6, 7, 8};
  CHECK_THROWS_AS(SignedPerm::from_images(n, bad), Error);
}

TEST_CASE("composition order is right to left") {
  const int n = 4;
  // (1 2)(2 3): 3 -> 2 -> 1.
  const SignedPerm p = SignedPerm::from_transpositions(n, {{1, 2}, {7, 8}, {2, 3}, {6, 7}});
  CHECK(p.image(3) == 1);
  CHECK(p.image(1) == 2);
}

TEST_CASE("translation vectors must be similitudes") {
  CHECK_THROWS_AS(TransVec(ZVec{8, {1, 0, 0, 0, 0, 0, 0, 0}}), Error);
  CHECK(TransVec(ZVec{8, {1, 0, 0, 0, 1, 1, 1, 0}}).similitude() == 1);
}

TEST_CASE("checked arithmetic raises on overflow") {
  const int64_t big = INT64_MAX;
  CHECK_THROWS_AS(checked::add(big, 1), OverflowError);
  CHECK_THROWS_AS(checked::mul(big, 2), OverflowError);
  CHECK(checked::sub(5, 7) == -2);
}

TEST_CASE("rank bounds") {
  CHECK_THROWS_AS(require_rank(3), Error);
  CHECK_THROWS_AS(require_rank(9), Error);
  CHECK_NOTHROW(require_rank(8));
}

TEST_CASE("Dynkin labels and alcove vertices") {
  for (int n : {4, 5, 6}) {
    const auto labels = dynkin_labels(n);
    CHECK(labels.size() == static_cast<std::size_t>(n + 1));
    CHECK(labels.front() == VertexLabel::std_vertex(0));
    CHECK(labels.back() == VertexLabel::n_prime());
  }
  CHECK(alcove_vertex(VertexLabel::std_vertex(0), 4).doubled == ZVec(8));
  CHECK(alcove_vertex(VertexLabel::std_vertex(2), 4).doubled == ZVec{8, {-1, -1, 0, 0, 0, 0, 1, 1}});
}
