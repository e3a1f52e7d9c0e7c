#include "spinlm/lift.hpp"

#include <algorithm>

namespace spinlm {

namespace {

SqrtPiScalar coord_unit() { return SqrtPiScalar(1); }

std::vector<SqrtPiScalar> basis_vector(int dim, int one_based) {
  std::vector<SqrtPiScalar> v(static_cast<std::size_t>(dim));
  v[static_cast<std::size_t>(one_based - 1)] = coord_unit();
  return v;
}

// e_a + c s e_b
std::vector<SqrtPiScalar> sheared(int dim, int a, int b, int sign) {
  std::vector<SqrtPiScalar> v = basis_vector(dim, a);
  v[static_cast<std::size_t>(b - 1)] = SqrtPiScalar::linear(0, sign);
  return v;
}

SqrtPiModule from_columns(const std::vector<std::vector<SqrtPiScalar>>& cols) {
  SqrtPiModule m;
  for (const auto& c : cols) m.append_column(c);
  return m;
}

SqrtPiModule coordinate_lattice(const std::vector<int>& positions, int n) {
  std::vector<std::vector<SqrtPiScalar>> cols;
  for (int p : positions) cols.push_back(basis_vector(2 * n, p));
  return from_columns(cols);
}

std::string vec_str(const std::vector<SqrtPiScalar>& v) {
  std::string s = "(";
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? ", " : "") + v[k].str();
  return s + ")";
}

}  // namespace

SqrtPiMatrix gram_form(int n) {
  SqrtPiMatrix h(2 * n, 2 * n);
  for (int a = 0; a < 2 * n; ++a) h.at(a, 2 * n - 1 - a) = 1;
  return h;
}

SqrtPiMatrix lambda1(int i, int n) {
  SqrtPiMatrix m(2 * n, 2 * n);
  for (int a = 0; a < 2 * n; ++a) {
    bool in_a = a < i || a >= 2 * n - i;
    m.at(a, a) = in_a ? SqrtPiScalar::pi() : SqrtPiScalar(1);
  }
  return m;
}

SqrtPiMatrix lambda2(int i, int n) {
  SqrtPiMatrix m(2 * n, 2 * n);
  for (int a = 0; a < 2 * n; ++a) {
    bool in_a = a < i || a >= 2 * n - i;
    m.at(a, a) = in_a ? SqrtPiScalar(1) : SqrtPiScalar::pi();
  }
  return m;
}

LiftPair build_lift(int type, int d, int i, int n) {
  require_rank(n);
  if (i <= 0 || i >= n) throw Error("build_lift: vertex must satisfy 0 < i < n");
  if (type < std::max(0, 2 * i - n) || type > i) throw Error("build_lift: type out of range");
  if (type < i && d != 1) throw Error("build_lift: lower types only have class 1");
  if (d < 1 || d > 4) throw Error("build_lift: class must be 1..4");
  const int dim = 2 * n;
  if (type == i) {
    // The special-fiber point is already totally isotropic; lift it verbatim.
    SqrtPiModule m = coordinate_lattice(orbit_representative(type, d, i, n).positions(), n);
    return {m, m};
  }
  const int gap = i - type;
  std::vector<std::vector<SqrtPiScalar>> cols;
  for (int a = gap + 1; a <= n - gap; ++a) cols.push_back(basis_vector(dim, a));
  for (int k = 1; k <= gap; ++k) cols.push_back(sheared(dim, n - gap + k, gap + 1 - k, +1));
  for (int k = 1; k <= gap; ++k) cols.push_back(sheared(dim, n + k, dim + 1 - k, -1));
  return {from_columns(cols), listed_dual_lift(type, i, n)};
}

SqrtPiModule listed_dual_lift(int type, int i, int n) {
  const int dim = 2 * n;
  const int gap = i - type;
  if (gap <= 0) throw Error("listed_dual_lift: only defined for type < i");
  std::vector<std::vector<SqrtPiScalar>> cols;
  for (int k = 1; k <= gap; ++k) cols.push_back(sheared(dim, k, n + 1 - k, +1));
  for (int a = gap + 1; a <= n - gap; ++a) cols.push_back(basis_vector(dim, a));
  for (int k = 1; k <= gap; ++k) cols.push_back(sheared(dim, dim - gap + k, n + gap + 1 - k, -1));
  return from_columns(cols);
}

bool is_direct_summand(const SqrtPiModule& m) {
  std::vector<int> v = smith_valuations(m);
  return static_cast<int>(v.size()) == m.cols() &&
         std::all_of(v.begin(), v.end(), [](int x) { return x == 0; });
}

bool module_contains(const SqrtPiModule& m, const std::vector<SqrtPiScalar>& x) {
  std::vector<int> before = smith_valuations(m);
  SqrtPiModule ext = m;
  ext.append_column(x);
  std::vector<int> after = smith_valuations(ext);
  if (after.size() != before.size()) return false;
  int sb = 0;
  int sa = 0;
  for (int v : before) sb += v;
  for (int v : after) sa += v;
  return sa == sb;
}

bool same_module(const SqrtPiModule& a, const SqrtPiModule& b) {
  for (int c = 0; c < b.cols(); ++c) {
    if (!module_contains(a, b.column(c))) return false;
  }
  for (int c = 0; c < a.cols(); ++c) {
    if (!module_contains(b, a.column(c))) return false;
  }
  return true;
}

SqrtPiModule dual_module(const SqrtPiModule& m) {
  if (!is_direct_summand(m)) throw Error("dual_module: input is not a full-rank direct summand");
  const int dim = m.rows();
  // Kernel of A = m^T H, solved by Cramer's rule on a block that is a unit mod s.
  SqrtPiMatrix a = m.transpose() * gram_form(dim / 2);
  std::vector<int> bound = pivot_columns(a.reduce());
  if (static_cast<int>(bound.size()) != a.rows()) throw Error("dual_module: degenerate input");
  std::vector<int> free_cols;
  for (int c = 0; c < dim; ++c) {
    if (std::find(bound.begin(), bound.end(), c) == bound.end()) free_cols.push_back(c);
  }
  const int k = a.rows();
  SqrtPiMatrix block(k, k);
  for (int r = 0; r < k; ++r) {
    for (int c = 0; c < k; ++c) block.at(r, c) = a.at(r, bound[static_cast<std::size_t>(c)]);
  }
  const SqrtPiScalar det = determinant(block);
  SqrtPiModule out;
  for (int f : free_cols) {
    std::vector<SqrtPiScalar> x(static_cast<std::size_t>(dim));
    x[static_cast<std::size_t>(f)] = det;
    for (int c = 0; c < k; ++c) {
      SqrtPiMatrix replaced = block;
      for (int r = 0; r < k; ++r) replaced.at(r, c) = a.at(r, f);
      x[static_cast<std::size_t>(bound[static_cast<std::size_t>(c)])] = -determinant(replaced);
    }
    out.append_column(x);
  }
  return out;
}

bool LmReport::all_pass() const {
  return std::all_of(clauses.begin(), clauses.end(), [](const LmClause& c) { return c.pass; });
}

std::string LmReport::failures() const {
  std::string s;
  for (const LmClause& c : clauses) {
    if (!c.pass) s += (s.empty() ? "" : "; ") + c.name + ": " + c.witness;
  }
  return s;
}

IsoSubset perp_subset(const IsoSubset& e) {
  const int n = e.rank();
  std::vector<int> pos;
  for (int j = 1; j <= 2 * n; ++j) {
    if (!e.contains(2 * n + 1 - j)) pos.push_back(j);
  }
  return IsoSubset::of_positions(n, e.vertex(), pos);
}

std::vector<int> reduced_support(const SqrtPiModule& m) {
  auto red = m.reduce();
  std::vector<int> out;
  for (int r = 0; r < m.rows(); ++r) {
    bool any = false;
    for (int c = 0; c < m.cols(); ++c) any = any || red[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] != 0;
    if (any) out.push_back(r + 1);
  }
  return out;
}

LmReport check_lm_conditions(const LiftPair& pair, int i, int n, const IsoSubset& expected) {
  LmReport rep;
  const auto& fi = pair.plus_side;
  const auto& fmi = pair.minus_side;
  for (auto [name, mod] : {std::pair{"direct_summand_i", &fi}, std::pair{"direct_summand_minus_i", &fmi}}) {
    LmClause c{name, false, {}};
    if (mod->rows() != 2 * n || mod->cols() != n) {
      c.witness = "shape " + std::to_string(mod->rows()) + "x" + std::to_string(mod->cols());
    } else {
      std::vector<int> v = smith_valuations(*mod);
      c.pass = static_cast<int>(v.size()) == n && std::all_of(v.begin(), v.end(), [](int x) { return x == 0; });
      if (!c.pass) {
        c.witness = "invariant valuations";
        for (int x : v) c.witness += " " + std::to_string(x);
      }
    }
    rep.clauses.push_back(c);
  }
  {
    LmClause c{"orthogonal", true, {}};
    SqrtPiMatrix pairing = fmi.transpose() * gram_form(n) * fi;
    for (int r = 0; r < pairing.rows() && c.pass; ++r) {
      for (int k = 0; k < pairing.cols() && c.pass; ++k) {
        if (!pairing.at(r, k).is_zero()) {
          c.pass = false;
          c.witness = "psi(" + vec_str(fmi.column(r)) + ", " + vec_str(fi.column(k)) + ") = " + pairing.at(r, k).str();
        }
      }
    }
    rep.clauses.push_back(c);
  }
  auto inclusion = [&](const char* name, const SqrtPiMatrix& lam, const SqrtPiModule& src, const SqrtPiModule& dst) {
    LmClause c{name, true, {}};
    SqrtPiMatrix img = lam * src;
    for (int k = 0; k < img.cols() && c.pass; ++k) {
      if (!module_contains(dst, img.column(k))) {
        c.pass = false;
        c.witness = vec_str(img.column(k)) + " not in target";
      }
    }
    rep.clauses.push_back(c);
  };
  inclusion("lambda1", lambda1(i, n), fmi, fi);
  inclusion("lambda2", lambda2(i, n), fi, fmi);
  {
    LmClause c{"reduction", true, {}};
    const IsoSubset perp = perp_subset(expected);
    for (auto [mod, target] : {std::pair{&fi, &expected}, std::pair{&fmi, &perp}}) {
      std::vector<int> support = reduced_support(*mod);
      int rank = rational_rank(mod->reduce());
      if (rank != n || support != target->positions()) {
        c.pass = false;
        c.witness = "reduced span rank " + std::to_string(rank) + " on " +
                    IsoSubset::of_positions(n, i, support).str() + ", expected " + target->str();
        break;
      }
    }
    rep.clauses.push_back(c);
  }
  return rep;
}

}  // namespace spinlm
