#include <algorithm>
#include <numeric>
#include <set>

#include "doctest.h"
#include "spinlm/parahoric.hpp"

using namespace spinlm;

namespace {

DiagramSubset apply(const DiagramPerm& p, DiagramSubset s) {
  DiagramSubset out = 0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if ((s >> k) & 1U) out |= 1U << p[k];
  }
  return out;
}

std::vector<VertexLabel> labels(std::initializer_list<int> standard) {
  std::vector<VertexLabel> out;
  for (int j : standard) out.push_back(VertexLabel::std_vertex(j));
  return out;
}

}  // namespace

TEST_CASE("Xi has order four with the parity-dependent type") {
  for (int n = 4; n <= 12; ++n) {
    const XiGroup g = xi_group(n);
    CHECK(g.elements.size() == 4);
    CHECK(g.cyclic() == (n % 2 == 1));
    CHECK(g.exponent() == (n % 2 == 1 ? 4 : 2));
  }
}

TEST_CASE("diagram tables match the action on alcove vertices") {
  for (int n = 4; n <= kMaxRank; ++n) {
    const XiGroup g = xi_group(n);
    const SpecialElements sp = special_elements(n);
    CHECK(diagram_action(sp.tau1) == g.tau1);
    CHECK(diagram_action(sp.tau2) == g.tau2);
    DiagramPerm identity(static_cast<std::size_t>(n + 1));
    std::iota(identity.begin(), identity.end(), 0);
    CHECK(diagram_action(sp.central) == identity);
  }
}

TEST_CASE("maximal classes") {
  CHECK(maximal_classes(4) == labels({0, 2}));
  CHECK(maximal_classes(5) == labels({0, 2}));
  CHECK(maximal_classes(6) == labels({0, 2, 3}));
  CHECK(maximal_classes(6).size() == 3);
  for (int n = 4; n <= 12; ++n) {
    std::vector<VertexLabel> expect{VertexLabel::std_vertex(0)};
    for (int j = 2; j <= n / 2; ++j) expect.push_back(VertexLabel::std_vertex(j));
    CHECK(maximal_classes(n) == expect);
  }
}

TEST_CASE("direct orbit count equals the Burnside count") {
  for (int n = 4; n <= 10; ++n) CHECK(conjugacy_classes(n).size() == burnside_count(xi_group(n)));
  // (32 + 8 + 8 + 8) / 4 orbits on all subsets, less the empty one.
  CHECK(conjugacy_classes(4).size() == 13);
}

TEST_CASE("class representatives are least in their orbits and pairwise distinct") {
  for (int n : {4, 5, 6, 7}) {
    const XiGroup g = xi_group(n);
    std::set<DiagramSubset> seen;
    for (DiagramSubset rep : conjugacy_classes(n)) {
      std::set<DiagramSubset> orbit;
      for (const DiagramPerm& p : g.elements) orbit.insert(apply(p, rep));
      for (DiagramSubset o : orbit) {
        CHECK(seen.insert(o).second);
        CHECK(subset_labels(o, n).size() == subset_labels(rep, n).size());
      }
    }
    CHECK(seen.size() == (1U << (n + 1)) - 1);
  }
}

TEST_CASE("index normalization") {
  CHECK(normalize_index({3}, 4) == std::vector<int>{1});
  CHECK(normalize_index({0}, 4) == std::vector<int>{0});
  CHECK(normalize_index({1, 3}, 4) == std::vector<int>{1, 3});
  CHECK(normalize_index({4}, 4) == std::vector<int>{0});
  CHECK(normalize_index({2, 5}, 5) == std::vector<int>{0, 3});
}
