#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "spinlm/bruhat.hpp"
#include "test_support.hpp"

using namespace spinlm;

namespace {

bool fixes_vertex(const AffineElement& w, VertexLabel label, int n) {
  const ZVec p = alcove_vertex(label, n).doubled;
  return act_scaled(w, p, 2) == p;
}

Sign other(Sign s) { return s == Sign::plus ? Sign::minus : Sign::plus; }

}  // namespace

TEST_CASE("simple reflections are involutions of length one fixing a wall") {
  for (int n : {4, 5, 6}) {
    const auto& refl = simple_reflections(n);
    REQUIRE(refl.size() == static_cast<std::size_t>(n + 1));
    for (int k = 0; k <= n; ++k) {
      const AffineElement& s = refl[static_cast<std::size_t>(k)];
      CHECK(multiply(s, s).is_identity());
      CHECK(length(s) == 1);
      CHECK(s.in_affine_weyl());
      CHECK(is_affine_reflection(s));
      const VertexLabel moved = moved_vertex(k, n);
      CHECK_FALSE(fixes_vertex(s, moved, n));
      for (const VertexLabel& v : dynkin_labels(n)) {
        if (!(v == moved)) CHECK(fixes_vertex(s, v, n));
      }
    }
  }
}

TEST_CASE("length of basic elements") {
  CHECK(length(AffineElement::identity(4)) == 0);
  for (int n : {4, 5, 6}) {
    CHECK(length(AffineElement::translation(cochar(Sign::plus, n))) == n * (n - 1) / 2);
    CHECK(length(AffineElement::translation(cochar(Sign::minus, n))) == n * (n - 1) / 2);
    const SpecialElements sp = special_elements(n);
    CHECK(length(sp.tau1) == 0);
    CHECK(length(sp.tau2) == 0);
    CHECK(length(sp.central) == 0);
  }
}

TEST_CASE("closed-form length agrees with breadth-first search at n=4") {
  const int n = 4;
  const auto dist = oracle::bfs_lengths(n, 8);
  CHECK(dist.size() == 1076);
  const SpecialElements sp = special_elements(n);
  for (const auto& [w, len] : dist) {
    CHECK(length(w) == len);
    CHECK(static_cast<int>(reduced_word(w).size()) == len);
    CHECK(length(multiply(w, sp.tau2)) == len);
    CHECK(length(multiply(sp.tau1, w)) == len);
  }
}

TEST_CASE("Omega split") {
  std::mt19937 rng(11);
  for (int n : {4, 5}) {
    for (int trial = 0; trial < 200; ++trial) {
      const AffineElement w = testing::random_element(rng, n);
      const OmegaSplit sp = split_omega(w);
      CHECK(sp.affine.in_affine_weyl());
      CHECK(length(sp.omega) == 0);
      CHECK(multiply(sp.affine, sp.omega) == w);
      CHECK(kottwitz(sp.omega) == kottwitz(w));
    }
  }
}

TEST_CASE("reduced words multiply back to the affine part") {
  std::mt19937 rng(5);
  const int n = 4;
  for (int trial = 0; trial < 100; ++trial) {
    const AffineElement w = testing::random_element(rng, n, 2);
    AffineElement prod = AffineElement::identity(n);
    for (int k : reduced_word(w)) prod = multiply(prod, simple_reflections(n)[static_cast<std::size_t>(k)]);
    CHECK(prod == split_omega(w).affine);
  }
}

TEST_CASE("Bruhat order basics") {
  std::mt19937 rng(3);
  const int n = 4;
  for (int trial = 0; trial < 100; ++trial) {
    const AffineElement w = split_omega(testing::random_element(rng, n, 2)).affine;
    CHECK(bruhat_leq(AffineElement::identity(n), w));
    CHECK(bruhat_leq(w, w));
  }
  const AffineElement t = AffineElement::translation(cochar(Sign::plus, n));
  CHECK_FALSE(bruhat_leq(AffineElement::translation(cochar(Sign::minus, n)), t));
}

TEST_CASE("subword Bruhat order equals reflection-closure Bruhat order on Adm at n=4") {
  const int n = 4;
  oracle::ReflectionClosure closure(n, 3);
  for (Sign s : {Sign::plus, Sign::minus}) {
    const auto& adm = admissible_set(s, n);
    for (const AffineElement& y : adm) {
      for (const AffineElement& x : adm) CHECK(bruhat_leq(x, y) == closure.leq(x, y));
    }
  }
}

TEST_CASE("admissible sets: sizes, translations, downward closure") {
  CHECK(admissible_set(Sign::plus, 4).size() == 115);
  CHECK(admissible_set(Sign::minus, 4).size() == 115);
  CHECK(admissible_set(Sign::plus, 5).size() == 1175);
  for (int n : {4, 5}) {
    for (Sign s : {Sign::plus, Sign::minus}) {
      const auto& adm = admissible_set(s, n);
      const std::set<AffineElement> set(adm.begin(), adm.end());
      CHECK(cochar_orbit(s, n).size() == static_cast<std::size_t>(1 << (n - 1)));
      for (const ZVec& lam : cochar_orbit(s, n)) CHECK(set.count(AffineElement::translation(lam)) == 1);
      const KottwitzValue kv = kottwitz(AffineElement::translation(cochar(s, n)));
      for (const AffineElement& w : adm) {
        CHECK(kottwitz(w) == kv);
        for (const AffineElement& r : simple_reflections(n)) {
          const AffineElement rw = multiply(r, w);
          if (length(rw) < length(w)) CHECK(set.count(rw) == 1);
        }
      }
    }
  }
}

TEST_CASE("admissible sets of opposite signs are disjoint") {
  for (int n : {4, 5}) {
    const auto& a = admissible_set(Sign::plus, n);
    const auto& b = admissible_set(Sign::minus, n);
    std::vector<AffineElement> both;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(both));
    CHECK(both.empty());
  }
}

TEST_CASE("inversion maps Adm(mu) onto Adm of the dual cocharacter") {
  // t^{-mu} times the central translation is t^{1-mu}; 1-mu lies in the orbit of
  // mu_plus or mu_minus according to the parity of its first half.
  for (int n : {4, 5}) {
    const AffineElement c = special_elements(n).central;
    for (Sign s : {Sign::plus, Sign::minus}) {
      const Sign dual = n % 2 == 0 ? s : other(s);
      const auto& target = admissible_set(dual, n);
      for (const AffineElement& w : admissible_set(s, n)) {
        CHECK(std::binary_search(target.begin(), target.end(), multiply(c, invert(w))));
      }
    }
  }
}

TEST_CASE("stabilizer groups") {
  CHECK(stabilizer_group({0}, 4).size() == 192);
  CHECK(stabilizer_group({4}, 4).size() == 192);
  for (int n : {4, 5}) {
    for (unsigned m = 1; m < (1U << (n + 1)); ++m) {
      std::vector<int> indices;
      for (int i = 0; i <= n; ++i) {
        if ((m >> i) & 1U) indices.push_back(i);
      }
      const FacetGeometry& g = facet_geometry(Facet::of_indices(n, indices));
      std::vector<AffineElement> gens;
      for (int k : g.generators) gens.push_back(simple_reflections(n)[static_cast<std::size_t>(k)]);
      auto closure = gens.empty() ? std::vector<AffineElement>{AffineElement::identity(n)} : generated_group(gens);
      std::sort(closure.begin(), closure.end());
      CHECK(closure == g.group);
      for (const AffineElement& w : g.group) CHECK(act_scaled(w, g.point, g.scale) == g.point);
    }
  }
}

TEST_CASE("facet vertex sets") {
  const int n = 4;
  using L = VertexLabel;
  CHECK(facet_vertex_set({2}, n) == std::vector<L>{L::std_vertex(2)});
  CHECK(facet_vertex_set({1}, n) == std::vector<L>{L::std_vertex(0), L::zero_prime()});
  CHECK(facet_vertex_set({1, 3}, n) == std::vector<L>{L::std_vertex(0), L::zero_prime(), L::std_vertex(4), L::n_prime()});
  for (int m : {5, 6}) {
    for (unsigned bits = 1; bits < (1U << (m + 1)); ++bits) {
      std::vector<int> indices;
      for (int i = 0; i <= m; ++i) {
        if ((bits >> i) & 1U) indices.push_back(i);
      }
      CHECK(facet_vertex_set(indices, m) == facet_geometry(Facet::of_indices(m, indices)).fixed_vertices);
    }
  }
}

TEST_CASE("double cosets") {
  const int n = 4;
  const Facet f0 = Facet::of_indices(n, {0});
  const auto single = double_cosets({AffineElement::identity(n)}, f0).cosets;
  REQUIRE(single.size() == 1);
  CHECK(single.front().rep().is_identity());
  CHECK(double_cosets(admissible_set(Sign::plus, n), f0).cosets.size() == 1);
  const auto at2 = double_cosets(admissible_set(Sign::plus, n), Facet::of_indices(n, {2})).cosets.size();
  CHECK(at2 >= 3);
  CHECK(at2 <= 6);
}

TEST_CASE("double coset canonical form is invariant under W_F on both sides") {
  std::mt19937 rng(17);
  const int n = 4;
  for (const std::vector<int>& indices : {std::vector<int>{0}, {2}, {1, 3}, {0, 2, 4}}) {
    const Facet f = Facet::of_indices(n, indices);
    const auto& group = facet_geometry(f).group;
    std::uniform_int_distribution<std::size_t> pick(0, group.size() - 1);
    for (int trial = 0; trial < 40; ++trial) {
      const AffineElement w = testing::random_element(rng, n, 2);
      const DoubleCoset c(f, w);
      const AffineElement moved = multiply(multiply(group[pick(rng)], w), group[pick(rng)]);
      CHECK(DoubleCoset(f, moved) == c);
      CHECK(DoubleCoset(f, c.rep()) == c);
      CHECK(c.rep() <= w);
    }
  }
}

TEST_CASE("projection and refinement of cosets") {
  std::mt19937 rng(23);
  const int n = 4;
  const Facet fine = Facet::of_indices(n, {0, 2});
  const Facet coarse = Facet::of_indices(n, {0});
  for (int trial = 0; trial < 30; ++trial) {
    const AffineElement w = testing::random_element(rng, n, 2);
    const DoubleCoset c(fine, w);
    CHECK(project_coset(c, coarse) == DoubleCoset(coarse, w));
    const DoubleCoset big(coarse, w);
    const auto reps = refine_coset(big, fine);
    CHECK(std::any_of(reps.begin(), reps.end(), [&](const AffineElement& r) { return DoubleCoset(fine, r) == c; }));
    for (const AffineElement& r : reps) CHECK(DoubleCoset(coarse, r) == big);
  }
}

TEST_CASE("coset index membership agrees with canonical forms") {
  const int n = 4;
  const Facet f = Facet::of_indices(n, {2});
  const auto& adm = admissible_set(Sign::minus, n);
  const CosetIndex index(adm, f);
  const auto cosets = double_cosets(adm, f).cosets;
  std::mt19937 rng(29);
  for (int trial = 0; trial < 200; ++trial) {
    const AffineElement w = testing::random_element(rng, n, 1);
    const bool expect = std::binary_search(cosets.begin(), cosets.end(), DoubleCoset(f, w));
    CHECK(index.contains(w) == expect);
  }
  for (const AffineElement& w : adm) CHECK(index.contains(w));
}

TEST_CASE("vertexwise criterion for a few facets at n=4") {
  const int n = 4;
  for (const std::vector<int>& indices : {std::vector<int>{1}, {0, 2}, {1, 3}, {0, 1, 2, 3, 4}}) {
    for (Sign s : {Sign::plus, Sign::minus}) {
      const auto adm = double_cosets(admissible_set(s, n), Facet::of_indices(n, indices)).cosets;
      CHECK(vertexwise_intersection(indices, s, n) == adm);
    }
  }
}

TEST_CASE("affine reflections are involutions in W_aff") {
  for (const AffineElement& r : affine_reflections(4, 2)) {
    CHECK(multiply(r, r).is_identity());
    CHECK(r.in_affine_weyl());
    CHECK(is_affine_reflection(r));
  }
  CHECK_FALSE(is_affine_reflection(AffineElement::identity(4)));
  CHECK_FALSE(is_affine_reflection(AffineElement::translation(cochar(Sign::plus, 4))));
}

TEST_CASE("vertexwise criterion for every index set at n=5") {
  const int n = 5;
  for (unsigned bits = 1; bits < (1U << (n + 1)); ++bits) {
    std::vector<int> indices;
    for (int i = 0; i <= n; ++i) {
      if ((bits >> i) & 1U) indices.push_back(i);
    }
    for (Sign s : {Sign::plus, Sign::minus}) {
      const auto adm = double_cosets(admissible_set(s, n), Facet::of_indices(n, indices)).cosets;
      CHECK(vertexwise_intersection(indices, s, n) == adm);
    }
  }
}
