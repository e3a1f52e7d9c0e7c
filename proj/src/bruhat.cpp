#include "spinlm/bruhat.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <unordered_map>
#include <unordered_set>

namespace spinlm {

namespace {

int64_t floor_div(int64_t a, int64_t b) {
  int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

struct PointKey {
  KottwitzValue kv;
  ZVec point;
  friend bool operator==(const PointKey& a, const PointKey& b) {
    return a.kv.z == b.kv.z && a.kv.parity == b.kv.parity && a.point == b.point;
  }
};

struct PointKeyHash {
  std::size_t operator()(const PointKey& k) const noexcept {
    return ZVecHash{}(k.point) ^ (static_cast<std::size_t>(k.kv.z) * 0x100000001b3ULL) ^
           (static_cast<std::size_t>(k.kv.parity) << 7);
  }
};

// Positive roots x_a - x_c with c = b or b*, a < b < n.
struct RootData {
  std::vector<std::pair<int, int>> roots;
  ZVec base_point;  // scaled barycenter of the alcove
  int64_t scale = 1;
  std::vector<int64_t> base_floor;
};

RootData make_root_data(int n) {
  RootData d;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      d.roots.emplace_back(a, b);
      d.roots.emplace_back(a, star(b, n));
    }
  }
  d.base_point = ZVec(2 * n);
  for (const VertexLabel& l : dynkin_labels(n)) d.base_point = d.base_point + alcove_vertex(l, n).doubled;
  d.scale = 2 * (n + 1);
  for (auto [a, c] : d.roots) {
    int64_t v = d.base_point[a] - d.base_point[c];
    if (v % d.scale == 0) throw Error("alcove barycenter lies on a root hyperplane");
    d.base_floor.push_back(floor_div(v, d.scale));
  }
  return d;
}

template <class T, class Make>
const T& cached_per_rank(int n, Make make) {
  static std::mutex mu;
  static std::map<int, T> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, make(n)).first;
  return it->second;
}

const RootData& root_data(int n) {
  require_rank(n);
  return cached_per_rank<RootData>(n, make_root_data);
}

}  // namespace

std::string sign_str(Sign s) { return s == Sign::plus ? "+" : "-"; }

int sign_parity(Sign s, int n) { return s == Sign::plus ? n % 2 : (n - 1) % 2; }

ZVec cochar(Sign s, int n) {
  require_rank(n);
  ZVec mu(2 * n);
  for (int k = 0; k < n; ++k) mu[k] = 1;
  if (s == Sign::minus) {
    mu[n - 1] = 0;
    mu[n] = 1;
  }
  return mu;
}

std::vector<ZVec> cochar_orbit(Sign s, int n) {
  ZVec mu = cochar(s, n);
  std::vector<ZVec> out;
  for (const SignedPerm& p : even_signed_perms(n)) out.push_back(p.apply(mu));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

const std::vector<AffineElement>& simple_reflections(int n) {
  require_rank(n);
  return cached_per_rank<std::vector<AffineElement>>(n, [](int m) {
    const int dim = 2 * m;
    std::vector<AffineElement> out;
    ZVec t0(dim);
    t0[0] = t0[1] = -1;
    t0[dim - 2] = t0[dim - 1] = 1;
    out.emplace_back(TransVec(t0), SignedPerm::from_transpositions(m, {{1, dim - 1}, {2, dim}}));
    for (int k = 1; k < m; ++k) {
      out.push_back(AffineElement::permutation(
          SignedPerm::from_transpositions(m, {{k, k + 1}, {dim + 1 - k, dim - k}})));
    }
    out.push_back(AffineElement::permutation(SignedPerm::from_transpositions(m, {{m - 1, m + 1}, {m, m + 2}})));
    return out;
  });
}

VertexLabel moved_vertex(int k, int n) {
  if (k == 0) return VertexLabel::std_vertex(0);
  if (k == 1) return VertexLabel::zero_prime();
  if (k == n - 1) return VertexLabel::n_prime();
  return VertexLabel::std_vertex(k);
}

AffineElement omega_element(KottwitzValue kv, int n) {
  SpecialElements sp = special_elements(n);
  return multiply(power(sp.tau2, kv.z), power(sp.tau1, kv.parity));
}

OmegaSplit split_omega(const AffineElement& w) {
  AffineElement omega = omega_element(kottwitz(w), w.rank());
  AffineElement aff = multiply(w, invert(omega));
  if (!aff.in_affine_weyl()) throw Error("Omega section failed: remainder outside W_aff");
  return {aff, omega};
}

int length(const AffineElement& w) {
  if (!w.in_identity_component()) throw Error("length: element outside the identity component");
  const RootData& d = root_data(w.rank());
  ZVec image = act_scaled(w, d.base_point, d.scale);
  int64_t total = 0;
  for (std::size_t r = 0; r < d.roots.size(); ++r) {
    auto [a, c] = d.roots[r];
    int64_t diff = floor_div(image[a] - image[c], d.scale) - d.base_floor[r];
    total += diff < 0 ? -diff : diff;
  }
  return static_cast<int>(total);
}

std::vector<int> reduced_word(const AffineElement& w) {
  const auto& refl = simple_reflections(w.rank());
  AffineElement y = split_omega(w).affine;
  int len = length(y);
  std::vector<int> word;
  while (len > 0) {
    bool found = false;
    for (int k = 0; k < static_cast<int>(refl.size()); ++k) {
      AffineElement ys = multiply(y, refl[static_cast<std::size_t>(k)]);
      int l2 = length(ys);
      if (l2 < len) {
        word.push_back(k);
        y = ys;
        len = l2;
        found = true;
        break;
      }
    }
    if (!found) throw Error("reduced_word: no descent found");
  }
  std::reverse(word.begin(), word.end());
  return word;
}

bool bruhat_leq(const AffineElement& x, const AffineElement& y) {
  if (kottwitz(x) != kottwitz(y)) return false;
  const auto& refl = simple_reflections(x.rank());
  AffineElement cur = split_omega(x).affine;
  int cur_len = length(cur);
  std::vector<int> word = reduced_word(y);
  if (cur_len > static_cast<int>(word.size())) return false;
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    AffineElement xs = multiply(cur, refl[static_cast<std::size_t>(*it)]);
    int l2 = length(xs);
    if (l2 < cur_len) {
      cur = xs;
      cur_len = l2;
    }
  }
  return cur_len == 0;
}

bool is_affine_reflection(const AffineElement& w) {
  const int n = w.rank();
  const int dim = 2 * n;
  const SignedPerm& p = w.w0();
  int moved = 0;
  int i = -1;
  for (int k = 0; k < dim; ++k) {
    if (p(k) != k) {
      ++moved;
      if (i < 0) i = k;
    }
  }
  if (moved != 4) return false;
  int j = p(i);
  if (j == star(i, n) || p(j) != i) return false;
  ZVec dir(dim);
  dir[i] += 1;
  dir[j] -= 1;
  dir[star(j, n)] += 1;
  dir[star(i, n)] -= 1;
  int64_t k = w.t()[i];
  return w.t() == dir.scaled(k);
}

std::vector<AffineElement> affine_reflections(int n, int max_shift) {
  std::vector<AffineElement> out;
  const int dim = 2 * n;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < dim; ++j) {
      if (j == star(i, n) || star(j, n) < i) continue;
      if (j >= n && star(j, n) <= i) continue;
      std::vector<int> img(static_cast<std::size_t>(dim));
      for (int k = 0; k < dim; ++k) img[static_cast<std::size_t>(k)] = k + 1;
      std::swap(img[static_cast<std::size_t>(i)], img[static_cast<std::size_t>(j)]);
      std::swap(img[static_cast<std::size_t>(star(i, n))], img[static_cast<std::size_t>(star(j, n))]);
      SignedPerm p = SignedPerm::from_images(n, img);
      ZVec dir(dim);
      dir[i] += 1;
      dir[j] -= 1;
      dir[star(j, n)] += 1;
      dir[star(i, n)] -= 1;
      for (int k = -max_shift; k <= max_shift; ++k) out.emplace_back(TransVec(dir.scaled(k)), p);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<AffineElement> lower_interval(const AffineElement& w) {
  const auto& refl = simple_reflections(w.rank());
  OmegaSplit sp = split_omega(w);
  std::vector<int> word = reduced_word(sp.affine);
  std::unordered_set<AffineElement, AffineElementHash> seen{AffineElement::identity(w.rank())};
  std::vector<AffineElement> cur{AffineElement::identity(w.rank())};
  for (int letter : word) {
    const AffineElement& s = refl[static_cast<std::size_t>(letter)];
    std::size_t count = cur.size();
    for (std::size_t k = 0; k < count; ++k) {
      AffineElement next = multiply(cur[k], s);
      if (seen.insert(next).second) cur.push_back(next);
    }
  }
  std::vector<AffineElement> out;
  out.reserve(cur.size());
  for (const AffineElement& x : cur) out.push_back(multiply(x, sp.omega));
  std::sort(out.begin(), out.end());
  return out;
}

const std::vector<AffineElement>& admissible_set(Sign s, int n) {
  require_rank(n);
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::vector<AffineElement>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({n, static_cast<int>(s)});
    if (it != cache.end()) return it->second;
  }
  std::unordered_set<AffineElement, AffineElementHash> acc;
  for (const ZVec& lambda : cochar_orbit(s, n)) {
    for (const AffineElement& x : lower_interval(AffineElement::translation(lambda))) acc.insert(x);
  }
  std::vector<AffineElement> out(acc.begin(), acc.end());
  std::sort(out.begin(), out.end());
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(std::make_pair(n, static_cast<int>(s)), std::move(out)).first->second;
}

// ---- facets ----

VertexLabel label_from_key(int key, int n) {
  if (key == 0) return VertexLabel::std_vertex(0);
  if (key == 1) return VertexLabel::zero_prime();
  if (key == n + 2) return VertexLabel::n_prime();
  if (key < 0 || key > n + 2) throw Error("vertex key out of range");
  return VertexLabel::std_vertex(key - 1);
}

Facet Facet::of_labels(int n, const std::vector<VertexLabel>& labels) {
  require_rank(n);
  if (labels.empty()) throw Error("facet needs at least one point");
  Facet f;
  f.n_ = n;
  for (const VertexLabel& l : labels) {
    if (l.kind == VertexLabel::Kind::standard && (l.index < 0 || l.index > n)) {
      throw Error("vertex index out of range");
    }
    f.bits_ |= 1U << l.order_key(n);
  }
  return f;
}

Facet Facet::of_indices(int n, const std::vector<int>& indices) {
  std::vector<VertexLabel> labels;
  for (int i : indices) labels.push_back(VertexLabel::std_vertex(i));
  return of_labels(n, labels);
}

Facet Facet::vertex(int n, VertexLabel label) { return of_labels(n, {label}); }

Facet Facet::index(int n, int i) { return of_indices(n, {i}); }

bool Facet::contains(VertexLabel label) const { return (bits_ >> label.order_key(n_)) & 1U; }

std::vector<VertexLabel> Facet::labels() const {
  std::vector<VertexLabel> out;
  for (int key = 0; key <= n_ + 2; ++key) {
    if ((bits_ >> key) & 1U) out.push_back(label_from_key(key, n_));
  }
  return out;
}

std::string Facet::str() const {
  std::string s = "{";
  bool first = true;
  for (const VertexLabel& l : labels()) {
    s += (first ? "" : ",") + l.str();
    first = false;
  }
  return s + "}";
}

namespace {

FacetGeometry make_facet_geometry(const Facet& f) {
  const int n = f.rank();
  FacetGeometry g;
  std::vector<ZVec> pts;
  for (const VertexLabel& l : f.labels()) pts.push_back(alcove_vertex(l, n).doubled);
  g.point = ZVec(2 * n);
  for (const ZVec& p : pts) g.point = g.point + p;
  g.scale = 2 * static_cast<int64_t>(pts.size());

  for (const SignedPerm& w0 : even_signed_perms(n)) {
    ZVec diff = pts[0] - w0.apply(pts[0]);
    bool ok = true;
    for (int k = 0; k < diff.dim() && ok; ++k) ok = diff[k] % 2 == 0;
    if (!ok) continue;
    ZVec t(2 * n);
    for (int k = 0; k < diff.dim(); ++k) t[k] = diff[k] / 2;
    for (std::size_t q = 1; q < pts.size() && ok; ++q) ok = (pts[q] - w0.apply(pts[q])) == t.scaled(2);
    if (!ok) continue;
    AffineElement w(TransVec(t), w0);
    if (w.in_affine_weyl()) g.group.push_back(w);
  }
  std::sort(g.group.begin(), g.group.end());

  const auto& refl = simple_reflections(n);
  for (int k = 0; k < static_cast<int>(refl.size()); ++k) {
    bool fixes = true;
    for (const ZVec& p : pts) fixes = fixes && act_scaled(refl[static_cast<std::size_t>(k)], p, 2) == p;
    if (fixes) g.generators.push_back(k);
  }
  for (const VertexLabel& l : dynkin_labels(n)) {
    ZVec a = alcove_vertex(l, n).doubled;
    bool fixed = true;
    for (int k : g.generators) fixed = fixed && act_scaled(refl[static_cast<std::size_t>(k)], a, 2) == a;
    if (fixed) g.fixed_vertices.push_back(l);
  }
  return g;
}

}  // namespace

const FacetGeometry& facet_geometry(const Facet& f) {
  static std::mutex mu;
  static std::map<Facet, FacetGeometry> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(f);
    if (it != cache.end()) return it->second;
  }
  FacetGeometry g = make_facet_geometry(f);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(f, std::move(g)).first->second;
}

std::vector<AffineElement> stabilizer_group(const std::vector<int>& indices, int n) {
  return facet_geometry(Facet::of_indices(n, indices)).group;
}

std::vector<AffineElement> generated_group(const std::vector<AffineElement>& gens) {
  if (gens.empty()) throw Error("generated_group needs a generator to fix the rank");
  std::unordered_set<AffineElement, AffineElementHash> seen{AffineElement::identity(gens[0].rank())};
  std::vector<AffineElement> queue(seen.begin(), seen.end());
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (const AffineElement& g : gens) {
      AffineElement next = multiply(queue[head], g);
      if (seen.insert(next).second) queue.push_back(next);
    }
  }
  std::sort(queue.begin(), queue.end());
  return queue;
}

std::vector<VertexLabel> facet_vertex_set(const std::vector<int>& indices, int n) {
  auto has = [&](int i) { return std::find(indices.begin(), indices.end(), i) != indices.end(); };
  std::vector<VertexLabel> out;
  if (has(0) || has(1)) out.push_back(VertexLabel::std_vertex(0));
  if (has(1)) out.push_back(VertexLabel::zero_prime());
  for (int i = 2; i <= n - 2; ++i) {
    if (has(i)) out.push_back(VertexLabel::std_vertex(i));
  }
  if (has(n) || has(n - 1)) out.push_back(VertexLabel::std_vertex(n));
  if (has(n - 1)) out.push_back(VertexLabel::n_prime());
  return out;
}

// ---- double cosets ----

DoubleCoset::DoubleCoset(const Facet& f, const AffineElement& w) : facet_(f) {
  const FacetGeometry& g = facet_geometry(f);
  std::unordered_set<ZVec, ZVecHash> points;
  bool have = false;
  for (const AffineElement& u : g.group) {
    AffineElement uw = multiply(u, w);
    if (!points.insert(act_scaled(uw, g.point, g.scale)).second) continue;
    for (const AffineElement& v : g.group) {
      AffineElement cand = multiply(uw, v);
      if (!have || cand < rep_) {
        rep_ = cand;
        have = true;
      }
    }
  }
}

std::string DoubleCoset::str() const { return facet_.str() + " " + rep_.str(); }

CosetImage double_cosets(const std::vector<AffineElement>& s, const Facet& f) {
  const FacetGeometry& g = facet_geometry(f);
  std::unordered_map<PointKey, std::size_t, PointKeyHash> orbit_of;
  struct Orbit {
    AffineElement seed;
    std::size_t points = 0;
    std::size_t hits = 0;
  };
  std::vector<Orbit> orbits;
  for (const AffineElement& w : s) {
    PointKey key{kottwitz(w), act_scaled(w, g.point, g.scale)};
    auto it = orbit_of.find(key);
    if (it == orbit_of.end()) {
      Orbit o{w, 0, 0};
      for (const AffineElement& u : g.group) {
        PointKey q{key.kv, act_scaled(u, key.point, g.scale)};
        if (orbit_of.emplace(q, orbits.size()).second) ++o.points;
      }
      orbits.push_back(o);
      it = orbit_of.find(key);
    }
    ++orbits[it->second].hits;
  }
  CosetImage out;
  for (const Orbit& o : orbits) {
    DoubleCoset c(f, o.seed);
    out.cosets.push_back(c);
    if (o.hits != o.points * g.group.size()) out.partial.push_back(c);
  }
  std::sort(out.cosets.begin(), out.cosets.end());
  std::sort(out.partial.begin(), out.partial.end());
  return out;
}

namespace {

bool group_contains_generators(const FacetGeometry& fine, const FacetGeometry& coarse) {
  return std::includes(coarse.generators.begin(), coarse.generators.end(), fine.generators.begin(),
                       fine.generators.end());
}

}  // namespace

DoubleCoset project_coset(const DoubleCoset& c, const Facet& coarser) {
  if (!group_contains_generators(facet_geometry(c.facet()), facet_geometry(coarser))) {
    throw Error("project_coset: target " + coarser.str() + " is not coarser than " + c.facet().str());
  }
  return DoubleCoset(coarser, c.rep());
}

CosetIndex::CosetIndex(const std::vector<AffineElement>& s, const Facet& f) : facet_(f) {
  const FacetGeometry& g = facet_geometry(f);
  std::unordered_set<PointKey, PointKeyHash> seen;
  for (const AffineElement& w : s) {
    PointKey key{kottwitz(w), act_scaled(w, g.point, g.scale)};
    if (seen.count(key)) continue;
    for (const AffineElement& u : g.group) seen.insert(PointKey{key.kv, act_scaled(u, key.point, g.scale)});
  }
  for (const PointKey& k : seen) keys_.emplace_back(k.kv, k.point);
  std::sort(keys_.begin(), keys_.end());
}

bool CosetIndex::contains(const AffineElement& w) const {
  const FacetGeometry& g = facet_geometry(facet_);
  std::pair<KottwitzValue, ZVec> key{kottwitz(w), act_scaled(w, g.point, g.scale)};
  return std::binary_search(keys_.begin(), keys_.end(), key);
}

std::vector<AffineElement> refine_coset(const DoubleCoset& c, const Facet& fine) {
  const FacetGeometry& gc = facet_geometry(c.facet());
  const FacetGeometry& gf = facet_geometry(fine);
  if (!group_contains_generators(gf, gc)) throw Error("refine_coset: facet is not finer");
  std::unordered_set<ZVec, ZVecHash> coarse_points;
  std::unordered_set<ZVec, ZVecHash> fine_points;
  std::vector<AffineElement> reps;
  for (const AffineElement& u : gc.group) {
    AffineElement g = multiply(u, c.rep());
    if (!coarse_points.insert(act_scaled(g, gc.point, gc.scale)).second) continue;
    for (const AffineElement& v : gc.group) {
      AffineElement h = multiply(g, v);
      ZVec q = act_scaled(h, gf.point, gf.scale);
      if (fine_points.count(q)) continue;
      for (const AffineElement& x : gf.group) fine_points.insert(act_scaled(x, q, gf.scale));
      reps.push_back(h);
    }
  }
  return reps;
}

std::vector<DoubleCoset> vertexwise_intersection(const std::vector<int>& indices, Sign s, int n) {
  const Facet fi = Facet::of_indices(n, indices);
  const auto& adm = admissible_set(s, n);
  std::vector<VertexLabel> j_set = facet_vertex_set(indices, n);
  std::vector<CosetIndex> idx;
  for (const VertexLabel& j : j_set) idx.emplace_back(adm, Facet::vertex(n, j));
  std::size_t best = 0;
  for (std::size_t k = 1; k < j_set.size(); ++k) {
    if (facet_geometry(idx[k].facet()).group.size() < facet_geometry(idx[best].facet()).group.size()) best = k;
  }
  std::vector<DoubleCoset> out;
  for (const DoubleCoset& seed : double_cosets(adm, idx[best].facet()).cosets) {
    for (const AffineElement& h : refine_coset(seed, fi)) {
      bool all = true;
      for (const CosetIndex& ci : idx) all = all && ci.contains(h);
      if (all) out.emplace_back(fi, h);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace spinlm
