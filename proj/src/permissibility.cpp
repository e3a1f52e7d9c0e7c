#include "spinlm/permissibility.hpp"

#include "spinlm/sqrtpi.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace spinlm {

namespace {

bool contains_index(const std::vector<int>& indices, int i) {
  return std::find(indices.begin(), indices.end(), i) != indices.end();
}

}  // namespace

ZVec omega(int64_t j, int n) {
  require_rank(n);
  const int64_t period = 2 * n;
  int64_t d = j >= 0 ? j / period : -((-j + period - 1) / period);
  int64_t i = j - period * d;
  ZVec v = ZVec::constant(2 * n, -d);
  for (int64_t k = 0; k < i; ++k) v[static_cast<int>(k)] -= 1;
  return v;
}

std::vector<int64_t> period_representatives(const std::vector<int>& indices, int n) {
  std::set<int64_t> reps;
  for (int i : indices) {
    if (i < 0 || i > n) throw Error("index outside [0,n]");
    reps.insert(i);
    reps.insert(2 * n - i);
  }
  return {reps.begin(), reps.end()};
}

bool is_naively_permissible(const AffineElement& w, const std::vector<int>& indices) {
  const int n = w.rank();
  for (int64_t j : period_representatives(indices, n)) {
    ZVec mu = mu_vector(w, j).mu;
    for (int k = 0; k < mu.dim(); ++k) {
      if (mu[k] < 0 || mu[k] > 1) return false;
    }
    if (mu.sum() != n) return false;
  }
  return true;
}

bool MuVector::totally_isotropic() const {
  ZVec s = mu + mu.starred();
  return s.all_of_value(1);
}

std::vector<int> MuVector::zero_set() const {
  std::vector<int> out;
  for (int k = 0; k < mu.dim(); ++k) {
    if (mu[k] == 0) out.push_back(k + 1);
  }
  return out;
}

MuVector mu_vector(const AffineElement& w, int64_t j) {
  ZVec base = omega(j, w.rank());
  return {act(w, base) - base};
}

bool spin_orbit_member(const ZVec& mu, Sign s, int n) {
  if (mu.dim() != 2 * n) throw Error("spin_orbit_member: dimension mismatch");
  for (int k = 0; k < mu.dim(); ++k) {
    if (mu[k] != 0 && mu[k] != 1) throw Error("spin_orbit_member: entries must be 0 or 1");
  }
  if (!MuVector{mu}.totally_isotropic()) throw Error("spin_orbit_member: vector is not totally isotropic");
  return epsilon(mu) == sign_parity(s, n);
}

bool spin_orbit_member_bruteforce(const ZVec& mu, Sign s, int n) {
  ZVec base = cochar(s, n);
  for (const SignedPerm& p : even_signed_perms(n)) {
    if (p.apply(base) == mu) return true;
  }
  return false;
}

bool is_pm_permissible(const AffineElement& w, const std::vector<int>& indices, Sign s) {
  if (!is_naively_permissible(w, indices)) return false;
  for (int64_t j : period_representatives(indices, w.rank())) {
    MuVector mu = mu_vector(w, j);
    if (mu.totally_isotropic() && !spin_orbit_member(mu.mu, s, w.rank())) return false;
  }
  return true;
}

// ---- faces ----

Face::Face(int n, std::map<int, ZVec> base, int64_t d) : n_(n), base_(std::move(base)), d_(d) {
  require_rank(n);
  if (base_.empty()) throw Error("face needs a nonempty index set");
  for (const auto& [i, v] : base_) {
    if (i < 0 || i > n) throw Error("face index outside [0,n]");
    if (v.dim() != 2 * n) throw Error("face vector has wrong length");
  }
}

std::vector<int> Face::indices() const {
  std::vector<int> out;
  for (const auto& [i, v] : base_) out.push_back(i);
  return out;
}

ZVec Face::at(int64_t j) const {
  const int64_t period = 2 * n_;
  int64_t q = j >= 0 ? j / period : -((-j + period - 1) / period);
  int r = static_cast<int>(j - q * period);
  auto it = base_.find(r);
  if (it != base_.end()) return it->second - ZVec::constant(2 * n_, q);
  it = base_.find(static_cast<int>(period) - r);
  if (r != 0 && it != base_.end()) {
    // v_{2n-i} = v_{-i} - 1 = d - v_i* - 1
    return ZVec::constant(2 * n_, d_ - 1 - q) - it->second.starred();
  }
  throw Error("face has no value at j=" + std::to_string(j));
}

std::string Face::violation() const {
  std::set<int64_t> js;
  for (const auto& [i, v] : base_) {
    for (int64_t q = -1; q <= 1; ++q) {
      js.insert(2 * n_ * q + i);
      js.insert(2 * n_ * q - i);
    }
  }
  std::vector<int64_t> order(js.begin(), js.end());
  for (std::size_t a = 0; a < order.size(); ++a) {
    ZVec va = at(order[a]);
    ZVec dual = va + at(-order[a]).starred();
    if (!dual.all_of_value(d_)) return "duality fails at j=" + std::to_string(order[a]);
    for (std::size_t b = a + 1; b < order.size(); ++b) {
      ZVec vb = at(order[b]);
      ZVec diff = va - vb;
      for (int k = 0; k < diff.dim(); ++k) {
        if (diff[k] < 0) return "monotonicity fails between " + std::to_string(order[a]) + " and " + std::to_string(order[b]);
      }
      if (va.sum() - vb.sum() != order[b] - order[a]) {
        return "sum condition fails between " + std::to_string(order[a]) + " and " + std::to_string(order[b]);
      }
    }
  }
  return {};
}

Face standard_face(const std::vector<int>& indices, int n) {
  std::map<int, ZVec> base;
  for (int i : indices) base.emplace(i, omega(i, n));
  return Face(n, base, 0);
}

Face act_face(const AffineElement& w, const Face& f) {
  std::map<int, ZVec> base;
  for (const auto& [i, v] : f.base()) base.emplace(i, act(w, v));
  return Face(f.rank(), base, f.d() + w.trans().similitude());
}

// ---- subsets ----

IsoSubset::IsoSubset(int n, int i, std::uint32_t bits) : n_(n), i_(i), bits_(bits) {
  require_rank(n);
  if (i < 0 || i > n) throw Error("subset vertex outside [0,n]");
  if (bits >> (2 * n)) throw Error("subset has positions beyond 2n");
}

IsoSubset IsoSubset::of_positions(int n, int i, const std::vector<int>& one_based) {
  std::uint32_t bits = 0;
  for (int p : one_based) {
    if (p < 1 || p > 2 * n) throw Error("subset position outside [1,2n]");
    bits |= 1U << (p - 1);
  }
  return IsoSubset(n, i, bits);
}

std::vector<int> IsoSubset::positions() const {
  std::vector<int> out;
  for (int k = 1; k <= 2 * n_; ++k) {
    if (contains(k)) out.push_back(k);
  }
  return out;
}

bool IsoSubset::in_a(int one_based) const { return one_based <= i_ || one_based >= 2 * n_ + 1 - i_; }

bool IsoSubset::naively_permissible() const {
  if (__builtin_popcount(bits_) != n_) return false;
  for (int k = 1; k <= n_; ++k) {
    int both = (contains(k) ? 1 : 0) + (contains(2 * n_ + 1 - k) ? 1 : 0);
    if (in_a(k) ? both == 2 : both == 0) return false;
  }
  return true;
}

std::string IsoSubset::str() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (int p : positions()) {
    os << (first ? "" : ",") << p;
    first = false;
  }
  os << '}';
  return os.str();
}

std::vector<IsoSubset> permissible_subsets(int i, int n) {
  std::vector<IsoSubset> out;
  for (std::uint32_t bits = 0; bits < (1U << (2 * n)); ++bits) {
    if (__builtin_popcount(bits) != n) continue;
    IsoSubset e(n, i, bits);
    if (e.naively_permissible()) out.push_back(e);
  }
  return out;
}

IsoSubset zero_subset(const MuVector& mu, int i, int n) { return IsoSubset::of_positions(n, i, mu.zero_set()); }

Face face_of_subset(const IsoSubset& e) {
  const int n = e.rank();
  ZVec v = omega(e.vertex(), n);
  for (int k = 1; k <= 2 * n; ++k) {
    if (!e.contains(k)) v[k - 1] += 1;
  }
  return Face(n, {{e.vertex(), v}}, 1);
}

AffineElement face_to_element(const Face& f) {
  if (f.base().size() != 1) throw Error("face_to_element needs a face over a single index");
  if (std::string why = f.violation(); !why.empty()) throw Error("face_to_element: invalid face: " + why);
  const int n = f.rank();
  const int i = f.base().begin()->first;
  const ZVec vi = f.at(i);
  const ZVec r = f.at(-i) - vi;

  // w0 must carry the indicator of A_i onto r; pair representatives are taken in [1,n].
  std::vector<int> in_support;
  std::vector<int> off_support;
  for (int k = 0; k < n; ++k) {
    if (r[k] != r[star(k, n)] || (r[k] != 0 && r[k] != 1)) throw Error("face_to_element: v_{-i} - v_i is not a pair indicator");
    (r[k] == 1 ? in_support : off_support).push_back(k);
  }
  if (static_cast<int>(in_support.size()) != i) throw Error("face_to_element: support of v_{-i} - v_i has wrong size");
  std::vector<int> img(static_cast<std::size_t>(2 * n));
  for (int k = 0; k < n; ++k) {
    int target = k < i ? in_support[static_cast<std::size_t>(k)] : off_support[static_cast<std::size_t>(k - i)];
    img[static_cast<std::size_t>(k)] = target + 1;
    img[static_cast<std::size_t>(star(k, n))] = star(target, n) + 1;
  }
  SignedPerm w0 = SignedPerm::from_images(n, img);
  if (!w0.is_even()) w0 = w0.compose(SignedPerm::from_transpositions(n, {{1, 2 * n}}));
  AffineElement w(TransVec(vi - w0.apply(omega(i, n))), w0);

  if (epsilon(w) == 1) {
    if (i == 0 || i == n) throw Error("face_to_element: parity correction unavailable at a hyperspecial index");
    w = multiply(w, special_elements(n).tau1);
  }
  if (act(w, omega(i, n)) != vi || act(w, omega(-i, n)) != f.at(-i)) {
    throw Error("face_to_element: constructed element does not reproduce the face");
  }
  return w;
}

// ---- Perm ----

KottwitzValue target_fiber(const std::vector<int>& indices, Sign s, int n, PermNormalization norm) {
  bool hyperspecial = contains_index(indices, 0) || contains_index(indices, n);
  if (hyperspecial || norm == PermNormalization::kottwitz_fiber) return {1, sign_parity(s, n)};
  return {1, 0};
}

std::vector<DoubleCoset> enumerate_perm(int i, Sign s, int n, PermNormalization norm) {
  require_rank(n);
  if (i < 0 || i > n) throw Error("enumerate_perm: index outside [0,n]");
  std::vector<AffineElement> seeds;
  if (i == 0 || i == n) {
    for (const ZVec& lambda : cochar_orbit(s, n)) seeds.push_back(AffineElement::translation(lambda));
  } else {
    const KottwitzValue target = target_fiber({i}, s, n, norm);
    const AffineElement tau1 = special_elements(n).tau1;
    for (const IsoSubset& e : permissible_subsets(i, n)) {
      AffineElement w = face_to_element(face_of_subset(e));
      if (!is_pm_permissible(w, {i}, s)) continue;
      if (kottwitz(w) != target) w = multiply(w, tau1);
      seeds.push_back(w);
    }
  }
  return double_cosets(seeds, Facet::index(n, i)).cosets;
}

GeneralPerm enumerate_perm_general(const std::vector<int>& indices, Sign s, int n, PermNormalization norm) {
  if (indices.empty()) throw Error("enumerate_perm_general: empty index set");
  const Facet fi = Facet::of_indices(n, indices);
  const KottwitzValue target = target_fiber(indices, s, n, norm);
  const AffineElement tau1 = special_elements(n).tau1;

  int seed_index = indices.front();
  for (int i : indices) {
    if (facet_geometry(Facet::index(n, i)).group.size() < facet_geometry(Facet::index(n, seed_index)).group.size()) {
      seed_index = i;
    }
  }
  GeneralPerm out;
  for (const DoubleCoset& seed : enumerate_perm(seed_index, s, n, PermNormalization::cell_index)) {
    AffineElement rep = seed.rep();
    if (kottwitz(rep) != target) rep = multiply(rep, tau1);
    if (kottwitz(rep) != target) continue;
    for (const AffineElement& h : refine_coset(DoubleCoset(seed.facet(), rep), fi)) {
      if (is_pm_permissible(h, indices, s)) out.cosets.emplace_back(fi, h);
    }
  }
  std::sort(out.cosets.begin(), out.cosets.end());
  out.cosets.erase(std::unique(out.cosets.begin(), out.cosets.end()), out.cosets.end());

  if (!contains_index(indices, 0) && !contains_index(indices, n)) {
    for (const DoubleCoset& c : out.cosets) {
      if (!is_pm_permissible(multiply(c.rep(), tau1), indices, s)) out.missing_tau1_partner.push_back(c);
    }
  }
  return out;
}

// ---- orbit classes and strata ----

OrbitClass orbit_classify(const IsoSubset& e) {
  if (!e.naively_permissible()) throw Error("orbit_classify: subset " + e.str() + " is not naively permissible");
  const int n = e.rank();
  const int i = e.vertex();
  OrbitClass c;
  c.type = stratum_rank(e);
  if (c.type < i) return c;
  int r1 = 0;
  int r2 = 0;
  for (int k = 1; k <= i; ++k) r1 += e.contains(k) ? 1 : 0;
  for (int k = i + 1; k <= n; ++k) r2 += e.contains(k) ? 1 : 0;
  const bool p1 = (r1 - i) % 2 == 0;
  const bool p2 = (r2 - (n - i)) % 2 == 0;
  if (p1 && p2) {
    c.d = 1;
  } else if (!p1 && !p2) {
    c.d = 2;
  } else if (p1) {
    c.d = 3;
  } else {
    c.d = 4;
  }
  return c;
}

IsoSubset orbit_representative(int type, int d, int i, int n) {
  require_rank(n);
  std::vector<int> pos;
  auto range = [&](int a, int b) {
    for (int k = a; k <= b; ++k) pos.push_back(k);
  };
  if (type < std::max(0, 2 * i - n) || type > i) throw Error("orbit_representative: type out of range");
  if (type < i) {
    if (d != 1) throw Error("orbit_representative: lower types have a single class");
    range(i + 1 - type, n + i - type);
  } else {
    switch (d) {
      case 1: range(1, n); break;
      case 2:
        range(1, i - 1);
        range(i + 1, n - 1);
        pos.push_back(n + 1);
        pos.push_back(2 * n + 1 - i);
        break;
      case 3:
        range(1, n - 1);
        pos.push_back(n + 1);
        break;
      case 4:
        range(1, i - 1);
        range(i + 1, n);
        pos.push_back(2 * n + 1 - i);
        break;
      default: throw Error("orbit_representative: class label must be 1..4");
    }
  }
  std::sort(pos.begin(), pos.end());
  if (std::adjacent_find(pos.begin(), pos.end()) != pos.end()) {
    throw Error("orbit_representative: class undefined at this vertex");
  }
  IsoSubset e = IsoSubset::of_positions(n, i, pos);
  if (!e.naively_permissible()) throw Error("orbit_representative: class undefined at this vertex");
  return e;
}

int stratum_rank(const IsoSubset& e) {
  int count = 0;
  for (int p : e.positions()) count += e.in_a(p) ? 1 : 0;
  return count;
}

int stratum_rank_by_matrix(const IsoSubset& e) {
  const int n = e.rank();
  const int dim = 2 * n;
  const int i = e.vertex();
  // Reduction of f_k mod pi kills the k-th basis vector; compose f_{i+1}..f_{2n-i}.
  std::vector<std::vector<Rational>> map(static_cast<std::size_t>(dim), std::vector<Rational>(static_cast<std::size_t>(dim)));
  for (int k = 0; k < dim; ++k) map[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)] = 1;
  for (int k = i + 1; k <= dim - i; ++k) {
    std::vector<std::vector<Rational>> fk(static_cast<std::size_t>(dim), std::vector<Rational>(static_cast<std::size_t>(dim)));
    for (int a = 0; a < dim; ++a) fk[static_cast<std::size_t>(a)][static_cast<std::size_t>(a)] = (a == k - 1) ? 0 : 1;
    std::vector<std::vector<Rational>> prod(static_cast<std::size_t>(dim), std::vector<Rational>(static_cast<std::size_t>(dim)));
    for (int a = 0; a < dim; ++a) {
      for (int b = 0; b < dim; ++b) {
        Rational acc = 0;
        for (int c = 0; c < dim; ++c) acc += fk[static_cast<std::size_t>(a)][static_cast<std::size_t>(c)] * map[static_cast<std::size_t>(c)][static_cast<std::size_t>(b)];
        prod[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = acc;
      }
    }
    map = std::move(prod);
  }
  std::vector<int> cols = e.positions();
  std::vector<std::vector<Rational>> image(static_cast<std::size_t>(dim), std::vector<Rational>(cols.size()));
  for (int a = 0; a < dim; ++a) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      image[static_cast<std::size_t>(a)][c] = map[static_cast<std::size_t>(a)][static_cast<std::size_t>(cols[c] - 1)];
    }
  }
  return rational_rank(image);
}

std::vector<Sign> subset_signs(const IsoSubset& e) {
  const int n = e.rank();
  ZVec mu = ZVec::constant(2 * n, 1);
  for (int p : e.positions()) mu[p - 1] = 0;
  if (!MuVector{mu}.totally_isotropic()) return {Sign::plus, Sign::minus};
  return {spin_orbit_member(mu, Sign::plus, n) ? Sign::plus : Sign::minus};
}

}  // namespace spinlm
