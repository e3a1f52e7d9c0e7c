#pragma once

#include <cstdint>
#include <vector>

#include "spinlm/weyl.hpp"

namespace spinlm {

// Permutations of the local Dynkin diagram, indexed by position in dynkin_labels(n).
using DiagramPerm = std::vector<int>;

struct XiGroup {
  int n = 0;
  DiagramPerm tau1;
  DiagramPerm tau2;
  std::vector<DiagramPerm> elements;  // closure of {tau1, tau2}, sorted
  bool cyclic() const;
  int exponent() const;
};

XiGroup xi_group(int n);
// Action of an alcove-stabilizing element on the vertex lines a_j + R(1,...,1).
DiagramPerm diagram_action(const AffineElement& w);

// Subsets of the diagram as bitmasks over dynkin_labels(n).
using DiagramSubset = std::uint32_t;

// Canonical (lexicographically least) representative of each orbit on nonempty subsets.
std::vector<DiagramSubset> conjugacy_classes(int n);
std::size_t burnside_count(const XiGroup& g);
// Orbit representatives of singletons, as labels.
std::vector<VertexLabel> maximal_classes(int n);
std::vector<VertexLabel> subset_labels(DiagramSubset s, int n);

// Least of I and n - I.
std::vector<int> normalize_index(const std::vector<int>& indices, int n);

}  // namespace spinlm
