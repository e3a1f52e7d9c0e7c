#pragma once

#include <random>

#include "spinlm/weyl.hpp"

namespace spinlm::testing {

// Random element of W~o with translation entries in [-bound, bound].
inline AffineElement random_element(std::mt19937& rng, int n, int bound = 3) {
  const auto& perms = even_signed_perms(n);
  std::uniform_int_distribution<std::size_t> pick(0, perms.size() - 1);
  std::uniform_int_distribution<int64_t> entry(-bound, bound);
  ZVec t(2 * n);
  const int64_t c = entry(rng);
  for (int k = 0; k < n; ++k) {
    t[k] = entry(rng);
    t[star(k, n)] = c - t[k];
  }
  return AffineElement(TransVec(t), perms[pick(rng)]);
}

inline ZVec random_vector(std::mt19937& rng, int n, int bound = 5) {
  std::uniform_int_distribution<int64_t> entry(-bound, bound);
  ZVec v(2 * n);
  for (int k = 0; k < 2 * n; ++k) v[k] = entry(rng);
  return v;
}

}  // namespace spinlm::testing
