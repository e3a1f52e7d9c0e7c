#include "spinlm/weyl.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace spinlm {

namespace checked {
int64_t add(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("int64 overflow in addition");
  return r;
}
int64_t sub(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("int64 overflow in subtraction");
  return r;
}
int64_t mul(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("int64 overflow in multiplication");
  return r;
}
}  // namespace checked

void require_rank(int n) {
  if (n < kMinRank || n > kMaxRank) {
    throw Error("rank n=" + std::to_string(n) + " outside supported range [4, 8]");
  }
}

// ---- ZVec ----

ZVec::ZVec(int dim) : dim_(dim) {
  if (dim < 0 || dim > kMaxDim) throw Error("vector dimension out of range");
}

ZVec::ZVec(int dim, std::initializer_list<int64_t> values) : ZVec(dim) {
  if (static_cast<int>(values.size()) != dim) throw Error("vector literal has wrong length");
  std::copy(values.begin(), values.end(), v_.begin());
}

ZVec ZVec::from(std::span<const int64_t> values) {
  ZVec out(static_cast<int>(values.size()));
  std::copy(values.begin(), values.end(), out.v_.begin());
  return out;
}

ZVec ZVec::constant(int dim, int64_t value) {
  ZVec out(dim);
  std::fill_n(out.v_.begin(), dim, value);
  return out;
}

ZVec ZVec::operator+(const ZVec& o) const {
  if (o.dim_ != dim_) throw Error("dimension mismatch");
  ZVec out(dim_);
  for (int k = 0; k < dim_; ++k) out[k] = checked::add((*this)[k], o[k]);
  return out;
}

ZVec ZVec::operator-(const ZVec& o) const {
  if (o.dim_ != dim_) throw Error("dimension mismatch");
  ZVec out(dim_);
  for (int k = 0; k < dim_; ++k) out[k] = checked::sub((*this)[k], o[k]);
  return out;
}

ZVec ZVec::operator-() const { return ZVec(dim_) - *this; }

ZVec ZVec::scaled(int64_t c) const {
  ZVec out(dim_);
  for (int k = 0; k < dim_; ++k) out[k] = checked::mul((*this)[k], c);
  return out;
}

ZVec ZVec::starred() const {
  ZVec out(dim_);
  for (int k = 0; k < dim_; ++k) out[k] = (*this)[dim_ - 1 - k];
  return out;
}

int64_t ZVec::sum() const {
  int64_t s = 0;
  for (int k = 0; k < dim_; ++k) s = checked::add(s, (*this)[k]);
  return s;
}

int64_t ZVec::sum_first_half() const {
  int64_t s = 0;
  for (int k = 0; k < dim_ / 2; ++k) s = checked::add(s, (*this)[k]);
  return s;
}

bool ZVec::all_of_value(int64_t value) const {
  for (int k = 0; k < dim_; ++k) {
    if ((*this)[k] != value) return false;
  }
  return true;
}

std::vector<int64_t> ZVec::to_vector() const { return {v_.begin(), v_.begin() + dim_}; }

std::string ZVec::str() const {
  std::ostringstream os;
  os << '(';
  for (int k = 0; k < dim_; ++k) os << (k ? "," : "") << (*this)[k];
  os << ')';
  return os.str();
}

std::size_t ZVecHash::operator()(const ZVec& v) const noexcept {
  std::size_t h = static_cast<std::size_t>(v.dim()) * 0x9e3779b97f4a7c15ULL;
  for (int k = 0; k < v.dim(); ++k) {
    h ^= static_cast<std::size_t>(v[k]) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

// ---- SignedPerm ----

SignedPerm SignedPerm::identity(int n) {
  require_rank(n);
  SignedPerm p;
  p.n_ = n;
  for (int k = 0; k < 2 * n; ++k) p.img_[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(k);
  return p;
}

SignedPerm SignedPerm::from_images(int n, std::span<const int> images) {
  require_rank(n);
  if (static_cast<int>(images.size()) != 2 * n) throw Error("permutation needs 2n images");
  SignedPerm p;
  p.n_ = n;
  std::array<bool, kMaxDim> seen{};
  for (int k = 0; k < 2 * n; ++k) {
    int im = images[static_cast<std::size_t>(k)];
    if (im < 1 || im > 2 * n || seen[static_cast<std::size_t>(im - 1)]) {
      throw Error("images do not form a permutation of [1,2n]");
    }
    seen[static_cast<std::size_t>(im - 1)] = true;
    p.img_[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(im - 1);
  }
  for (int k = 0; k < 2 * n; ++k) {
    if (p(star(k, n)) != star(p(k), n)) throw Error("permutation does not commute with i -> 2n+1-i");
  }
  return p;
}

SignedPerm SignedPerm::from_transpositions(int n, std::initializer_list<std::pair<int, int>> cycles) {
  std::vector<int> img(static_cast<std::size_t>(2 * n));
  std::iota(img.begin(), img.end(), 1);
  // Rightmost factor acts first, so it is folded in first.
  for (auto it = std::rbegin(cycles); it != std::rend(cycles); ++it) {
    auto [a, b] = *it;
    for (int& x : img) {
      if (x == a) {
        x = b;
      } else if (x == b) {
        x = a;
      }
    }
  }
  return from_images(n, img);
}

std::vector<int> SignedPerm::images() const {
  std::vector<int> out(static_cast<std::size_t>(dim()));
  for (int k = 0; k < dim(); ++k) out[static_cast<std::size_t>(k)] = image(k + 1);
  return out;
}

SignedPerm SignedPerm::compose(const SignedPerm& rhs) const {
  if (rhs.n_ != n_) throw Error("rank mismatch");
  SignedPerm p;
  p.n_ = n_;
  for (int k = 0; k < dim(); ++k) p.img_[static_cast<std::size_t>(k)] = img_[rhs.img_[static_cast<std::size_t>(k)]];
  return p;
}

SignedPerm SignedPerm::inverse() const {
  SignedPerm p;
  p.n_ = n_;
  for (int k = 0; k < dim(); ++k) p.img_[img_[static_cast<std::size_t>(k)]] = static_cast<std::uint8_t>(k);
  return p;
}

ZVec SignedPerm::apply(const ZVec& v) const {
  if (v.dim() != dim()) throw Error("dimension mismatch");
  ZVec out(dim());
  for (int k = 0; k < dim(); ++k) out[(*this)(k)] = v[k];
  return out;
}

bool SignedPerm::is_even() const {
  std::array<bool, kMaxDim> seen{};
  int transpositions = 0;
  for (int k = 0; k < dim(); ++k) {
    if (seen[static_cast<std::size_t>(k)]) continue;
    int len = 0;
    for (int x = k; !seen[static_cast<std::size_t>(x)]; x = (*this)(x)) {
      seen[static_cast<std::size_t>(x)] = true;
      ++len;
    }
    transpositions += len - 1;
  }
  return transpositions % 2 == 0;
}

bool SignedPerm::is_identity() const {
  for (int k = 0; k < dim(); ++k) {
    if ((*this)(k) != k) return false;
  }
  return true;
}

int SignedPerm::sign_changes() const {
  int c = 0;
  for (int k = 0; k < n_; ++k) c += (*this)(k) >= n_ ? 1 : 0;
  return c;
}

// ---- TransVec / AffineElement ----

TransVec::TransVec(ZVec r) : r_(r) {
  int n = r_.rank();
  if (r_.dim() % 2 != 0) throw Error("translation vector must have even length");
  for (int k = 1; k < n; ++k) {
    if (r_[k] + r_[star(k, n)] != r_[0] + r_[star(0, n)]) {
      throw Error("translation " + r_.str() + " violates r(i)+r(i*) = const");
    }
  }
}

int64_t TransVec::similitude() const { return checked::add(r_[0], r_[r_.dim() - 1]); }

AffineElement::AffineElement(TransVec t, SignedPerm w0) : t_(t), w0_(w0) {
  if (t_.vec().dim() != w0_.dim()) throw Error("translation and permutation rank mismatch");
}

AffineElement AffineElement::identity(int n) {
  return AffineElement(TransVec::zero(n), SignedPerm::identity(n));
}

AffineElement AffineElement::translation(const ZVec& v) {
  return AffineElement(TransVec(v), SignedPerm::identity(v.rank()));
}

AffineElement AffineElement::permutation(const SignedPerm& w0) {
  return AffineElement(TransVec::zero(w0.rank()), w0);
}

bool AffineElement::in_affine_weyl() const {
  return w0_.is_even() && t_.similitude() == 0 && epsilon(t_.vec()) == 0;
}

bool AffineElement::in_w_prime() const { return w0_.is_even() && epsilon(t_.vec()) == 0; }

bool AffineElement::is_identity() const { return w0_.is_identity() && t().all_of_value(0); }

std::string AffineElement::str() const {
  std::ostringstream os;
  os << "t" << t().str() << " w[";
  for (int k = 1; k <= w0_.dim(); ++k) os << (k > 1 ? " " : "") << w0_.image(k);
  os << ']';
  return os.str();
}

std::size_t AffineElementHash::operator()(const AffineElement& w) const noexcept {
  std::size_t h = ZVecHash{}(w.t());
  for (int k = 0; k < w.w0().dim(); ++k) {
    h ^= static_cast<std::size_t>(w.w0()(k)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

AffineElement multiply(const AffineElement& x, const AffineElement& y) {
  return AffineElement(TransVec(x.t() + x.w0().apply(y.t())), x.w0().compose(y.w0()));
}

AffineElement invert(const AffineElement& x) {
  SignedPerm inv = x.w0().inverse();
  return AffineElement(TransVec(-inv.apply(x.t())), inv);
}

AffineElement power(const AffineElement& x, int64_t k) {
  AffineElement base = k < 0 ? invert(x) : x;
  AffineElement out = AffineElement::identity(x.rank());
  for (int64_t e = k < 0 ? -k : k; e > 0; e >>= 1) {
    if (e & 1) out = multiply(out, base);
    base = multiply(base, base);
  }
  return out;
}

ZVec act(const AffineElement& w, const ZVec& v) { return w.w0().apply(v) + w.t(); }

ZVec act_scaled(const AffineElement& w, const ZVec& scaled_point, int64_t scale) {
  return w.w0().apply(scaled_point) + w.t().scaled(scale);
}

KottwitzValue kottwitz(const AffineElement& w) {
  if (!w.w0().is_even()) throw Error("kottwitz: element outside the identity component");
  return {w.trans().similitude(), epsilon(w.t())};
}

int epsilon(const AffineElement& w) { return kottwitz(w).parity; }

int epsilon(const ZVec& v) {
  int64_t s = v.sum_first_half();
  return static_cast<int>(((s % 2) + 2) % 2);
}

// ---- vertices ----

std::string VertexLabel::str() const {
  switch (kind) {
    case Kind::zero_prime: return "0'";
    case Kind::n_prime: return "n'";
    case Kind::standard: break;
  }
  return std::to_string(index);
}

int VertexLabel::order_key(int n) const {
  switch (kind) {
    case Kind::zero_prime: return 1;
    case Kind::n_prime: return n + 2;
    case Kind::standard: break;
  }
  return index == 0 ? 0 : index + 1;
}

AlcoveVertex alcove_vertex(VertexLabel label, int n) {
  require_rank(n);
  const int dim = 2 * n;
  ZVec v(dim);
  switch (label.kind) {
    case VertexLabel::Kind::zero_prime:
      v[0] = -2;
      v[dim - 1] = 2;
      break;
    case VertexLabel::Kind::n_prime:
      for (int k = 0; k < dim; ++k) v[k] = k < n ? -1 : 1;
      v[n - 1] = 1;
      v[n] = -1;
      break;
    case VertexLabel::Kind::standard: {
      int i = label.index;
      if (i < 0 || i > n) throw Error("vertex index out of range");
      for (int k = 0; k < i; ++k) {
        v[k] = -1;
        v[dim - 1 - k] = 1;
      }
      break;
    }
  }
  return {label, v};
}

std::vector<VertexLabel> dynkin_labels(int n) {
  std::vector<VertexLabel> out{VertexLabel::std_vertex(0), VertexLabel::zero_prime()};
  for (int i = 2; i <= n - 2; ++i) out.push_back(VertexLabel::std_vertex(i));
  out.push_back(VertexLabel::std_vertex(n));
  out.push_back(VertexLabel::n_prime());
  return out;
}

SpecialElements special_elements(int n) {
  require_rank(n);
  const int dim = 2 * n;
  SpecialElements s;

  ZVec t1(dim);
  t1[0] = -1;
  t1[dim - 1] = 1;
  SignedPerm swap_mid = SignedPerm::from_transpositions(n, {{n, n + 1}});
  SignedPerm w1 = SignedPerm::from_transpositions(n, {{1, dim}, {n, n + 1}});
  s.tau1 = AffineElement(TransVec(t1), w1);

  std::vector<int> shift(static_cast<std::size_t>(dim));
  for (int j = 1; j <= dim; ++j) shift[static_cast<std::size_t>(j - 1)] = j > n ? j - n : j + n;
  s.sigma2 = SignedPerm::from_images(n, shift);

  ZVec t2(dim);
  for (int k = n; k < dim; ++k) t2[k] = 1;
  SignedPerm w2 = n % 2 == 1 ? s.sigma2.compose(swap_mid) : s.sigma2;
  s.tau2 = AffineElement(TransVec(t2), w2);

  s.central = AffineElement::translation(ZVec::constant(dim, 1));
  s.tau = swap_mid;
  return s;
}

const std::vector<SignedPerm>& even_signed_perms(int n) {
  require_rank(n);
  if (n > 7) throw Error("even_signed_perms: table too large for n > 7");
  static std::mutex mu;
  static std::map<int, std::vector<SignedPerm>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  std::vector<SignedPerm> out;
  std::vector<int> base(static_cast<std::size_t>(n));
  std::iota(base.begin(), base.end(), 0);
  std::vector<int> img(static_cast<std::size_t>(2 * n));
  do {
    for (unsigned mask = 0; mask < (1U << n); ++mask) {
      if (__builtin_popcount(mask) % 2 != 0) continue;
      for (int k = 0; k < n; ++k) {
        int target = base[static_cast<std::size_t>(k)];
        if (mask & (1U << k)) target = star(target, n);
        img[static_cast<std::size_t>(k)] = target + 1;
        img[static_cast<std::size_t>(star(k, n))] = star(target, n) + 1;
      }
      out.push_back(SignedPerm::from_images(n, img));
    }
  } while (std::next_permutation(base.begin(), base.end()));
  std::sort(out.begin(), out.end());
  return cache.emplace(n, std::move(out)).first->second;
}

}  // namespace spinlm
