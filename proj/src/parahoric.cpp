#include "spinlm/parahoric.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace spinlm {

namespace {

DiagramPerm compose(const DiagramPerm& a, const DiagramPerm& b) {
  DiagramPerm out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[static_cast<std::size_t>(b[k])];
  return out;
}

DiagramPerm identity_perm(std::size_t size) {
  DiagramPerm p(size);
  for (std::size_t k = 0; k < size; ++k) p[k] = static_cast<int>(k);
  return p;
}

std::size_t position(const std::vector<VertexLabel>& labels, VertexLabel l) {
  auto it = std::find(labels.begin(), labels.end(), l);
  if (it == labels.end()) throw Error("label not on the diagram");
  return static_cast<std::size_t>(it - labels.begin());
}

DiagramSubset apply(const DiagramPerm& p, DiagramSubset s) {
  DiagramSubset out = 0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if ((s >> k) & 1U) out |= 1U << p[k];
  }
  return out;
}

// Sorted position lists compare lexicographically; a proper prefix is smaller.
bool subset_less(DiagramSubset a, DiagramSubset b) {
  if (a == b) return false;
  int k = __builtin_ctz(a ^ b);
  bool a_has = (a >> k) & 1U;
  DiagramSubset rest = (a_has ? b : a) >> k;
  bool other_exhausted = rest == 0;
  return a_has ? !other_exhausted : other_exhausted;
}

}  // namespace

DiagramPerm diagram_action(const AffineElement& w) {
  const int n = w.rank();
  const auto labels = dynkin_labels(n);
  DiagramPerm p(labels.size(), -1);
  for (std::size_t k = 0; k < labels.size(); ++k) {
    ZVec image = act_scaled(w, alcove_vertex(labels[k], n).doubled, 2);
    for (std::size_t m = 0; m < labels.size(); ++m) {
      ZVec diff = image - alcove_vertex(labels[m], n).doubled;
      if (diff.all_of_value(diff[0])) p[k] = static_cast<int>(m);
    }
    if (p[k] < 0) throw Error("diagram_action: element does not stabilize the base alcove");
  }
  return p;
}

XiGroup xi_group(int n) {
  if (n < kMinRank || n > 30) throw Error("xi_group: rank out of range");
  const auto labels = [n] {
    std::vector<VertexLabel> out{VertexLabel::std_vertex(0), VertexLabel::zero_prime()};
    for (int i = 2; i <= n - 2; ++i) out.push_back(VertexLabel::std_vertex(i));
    out.push_back(VertexLabel::std_vertex(n));
    out.push_back(VertexLabel::n_prime());
    return out;
  }();
  const VertexLabel v0 = VertexLabel::std_vertex(0);
  const VertexLabel v0p = VertexLabel::zero_prime();
  const VertexLabel vn = VertexLabel::std_vertex(n);
  const VertexLabel vnp = VertexLabel::n_prime();

  XiGroup g;
  g.n = n;
  g.tau2 = identity_perm(labels.size());
  auto set = [&](DiagramPerm& p, VertexLabel from, VertexLabel to) {
    p[position(labels, from)] = static_cast<int>(position(labels, to));
  };
  for (int i = 2; i <= n - 2; ++i) set(g.tau2, VertexLabel::std_vertex(i), VertexLabel::std_vertex(n - i));
  if (n % 2 == 1) {
    set(g.tau2, v0, vn);
    set(g.tau2, vn, v0p);
    set(g.tau2, v0p, vnp);
    set(g.tau2, vnp, v0);
  } else {
    set(g.tau2, v0, vn);
    set(g.tau2, vn, v0);
    set(g.tau2, v0p, vnp);
    set(g.tau2, vnp, v0p);
  }
  // tau1 exchanges both hyperspecial pairs; for odd n it coincides with tau2^2.
  g.tau1 = identity_perm(labels.size());
  set(g.tau1, v0, v0p);
  set(g.tau1, v0p, v0);
  set(g.tau1, vn, vnp);
  set(g.tau1, vnp, vn);

  std::set<DiagramPerm> seen{identity_perm(labels.size())};
  std::vector<DiagramPerm> queue(seen.begin(), seen.end());
  for (std::size_t h = 0; h < queue.size(); ++h) {
    for (const DiagramPerm* gen : {&g.tau1, &g.tau2}) {
      DiagramPerm next = compose(*gen, queue[h]);
      if (seen.insert(next).second) queue.push_back(next);
    }
  }
  g.elements.assign(seen.begin(), seen.end());
  return g;
}

bool XiGroup::cyclic() const {
  return exponent() == static_cast<int>(elements.size());
}

int XiGroup::exponent() const {
  int e = 1;
  for (const DiagramPerm& p : elements) {
    int order = 1;
    DiagramPerm cur = p;
    while (cur != identity_perm(p.size())) {
      cur = compose(p, cur);
      ++order;
    }
    e = std::lcm(e, order);
  }
  return e;
}

std::vector<DiagramSubset> conjugacy_classes(int n) {
  if (n > 12) throw Error("conjugacy_classes: full subset enumeration limited to n <= 12");
  XiGroup g = xi_group(n);
  const DiagramSubset full = (1U << (n + 1)) - 1;
  std::vector<bool> done(full + 1, false);
  std::vector<DiagramSubset> reps;
  for (DiagramSubset s = 1; s <= full; ++s) {
    if (done[s]) continue;
    DiagramSubset best = s;
    for (const DiagramPerm& p : g.elements) {
      DiagramSubset t = apply(p, s);
      done[t] = true;
      if (subset_less(t, best)) best = t;
    }
    reps.push_back(best);
  }
  std::sort(reps.begin(), reps.end(), subset_less);
  return reps;
}

std::size_t burnside_count(const XiGroup& g) {
  std::size_t total = 0;
  for (const DiagramPerm& p : g.elements) {
    std::vector<bool> seen(p.size(), false);
    int cycles = 0;
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (seen[k]) continue;
      ++cycles;
      for (std::size_t x = k; !seen[x]; x = static_cast<std::size_t>(p[x])) seen[x] = true;
    }
    total += (std::size_t{1} << cycles) - 1;
  }
  return total / g.elements.size();
}

std::vector<VertexLabel> subset_labels(DiagramSubset s, int n) {
  const auto labels = dynkin_labels(n);
  std::vector<VertexLabel> out;
  for (std::size_t k = 0; k < labels.size(); ++k) {
    if ((s >> k) & 1U) out.push_back(labels[k]);
  }
  return out;
}

std::vector<VertexLabel> maximal_classes(int n) {
  std::vector<VertexLabel> out;
  for (DiagramSubset s : conjugacy_classes(n)) {
    if (__builtin_popcount(s) == 1) out.push_back(subset_labels(s, n).front());
  }
  return out;
}

std::vector<int> normalize_index(const std::vector<int>& indices, int n) {
  if (indices.empty()) throw Error("normalize_index: empty index set");
  std::vector<int> a(indices);
  std::vector<int> b;
  for (int i : indices) {
    if (i < 0 || i > n) throw Error("normalize_index: index outside [0,n]");
    b.push_back(n - i);
  }
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  return std::min(a, b);
}

}  // namespace spinlm
