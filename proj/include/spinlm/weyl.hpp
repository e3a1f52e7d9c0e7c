#pragma once

// Extended affine Weyl group of GO_{2n}: X_*(T) x| S*_{2n} acting on Z^{2n}.
//
// Conventions used throughout the library:
//  * coordinates are 0-based internally; public constructors that take
//    permutation images or coordinate labels are 1-based, like the math.
//  * permutations compose as (x*y)(i) = x(y(i)).
//  * a permutation acts on vectors by (w v)(i) = v(w^{-1} i), i.e. the
//    entry in slot k moves to slot w(k).
//  * an element t^w w0 acts by  v -> w0 v + t^w.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace spinlm {

inline constexpr int kMinRank = 4;
inline constexpr int kMaxRank = 8;
inline constexpr int kMaxDim = 2 * kMaxRank;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OverflowError : public Error {
 public:
  using Error::Error;
};

namespace checked {
int64_t add(int64_t a, int64_t b);
int64_t sub(int64_t a, int64_t b);
int64_t mul(int64_t a, int64_t b);
}  // namespace checked

void require_rank(int n);

// Index of the paired coordinate, i* = 2n+1-i in 1-based terms.
constexpr int star(int k, int n) { return 2 * n - 1 - k; }

// Integer vector of length 2n with overflow-checked arithmetic.
class ZVec {
 public:
  ZVec() = default;
  explicit ZVec(int dim);
  ZVec(int dim, std::initializer_list<int64_t> values);
  static ZVec from(std::span<const int64_t> values);
  static ZVec constant(int dim, int64_t value);

  int dim() const { return dim_; }
  int rank() const { return dim_ / 2; }
  int64_t operator[](int k) const { return v_[static_cast<std::size_t>(k)]; }
  int64_t& operator[](int k) { return v_[static_cast<std::size_t>(k)]; }

  ZVec operator+(const ZVec& o) const;
  ZVec operator-(const ZVec& o) const;
  ZVec operator-() const;
  ZVec scaled(int64_t c) const;

  // v*(k) = v(k*)
  ZVec starred() const;
  int64_t sum() const;
  int64_t sum_first_half() const;
  bool all_of_value(int64_t value) const;

  std::vector<int64_t> to_vector() const;
  std::string str() const;

  friend auto operator<=>(const ZVec&, const ZVec&) = default;
  friend bool operator==(const ZVec&, const ZVec&) = default;

 private:
  int dim_ = 0;
  std::array<int64_t, kMaxDim> v_{};
};

// A permutation of [1,2n] commuting with i -> i*  (an element of S*_{2n}).
class SignedPerm {
 public:
  SignedPerm() = default;
  static SignedPerm identity(int n);
  // images[k-1] = sigma(k), 1-based.
  static SignedPerm from_images(int n, std::span<const int> images);
  // Product of transpositions (a b), 1-based, applied right to left.
  static SignedPerm from_transpositions(int n, std::initializer_list<std::pair<int, int>> cycles);

  int rank() const { return n_; }
  int dim() const { return 2 * n_; }
  // 0-based image.
  int operator()(int k) const { return img_[static_cast<std::size_t>(k)]; }
  // 1-based image.
  int image(int k) const { return img_[static_cast<std::size_t>(k - 1)] + 1; }
  std::vector<int> images() const;

  SignedPerm compose(const SignedPerm& rhs) const;  // (*this) o rhs
  SignedPerm inverse() const;
  ZVec apply(const ZVec& v) const;

  bool is_even() const;
  bool is_identity() const;
  // Number of k <= n with sigma(k) > n.
  int sign_changes() const;

  friend auto operator<=>(const SignedPerm&, const SignedPerm&) = default;
  friend bool operator==(const SignedPerm&, const SignedPerm&) = default;

 private:
  int n_ = 0;
  std::array<std::uint8_t, kMaxDim> img_{};
};

// Translation part t^w; satisfies r(k) + r(k*) constant.
class TransVec {
 public:
  TransVec() = default;
  explicit TransVec(ZVec r);
  static TransVec zero(int n) { return TransVec(ZVec(2 * n)); }
  const ZVec& vec() const { return r_; }
  int64_t similitude() const;  // r(1) + r(2n)
  friend auto operator<=>(const TransVec&, const TransVec&) = default;
  friend bool operator==(const TransVec&, const TransVec&) = default;

 private:
  ZVec r_;
};

struct KottwitzValue {
  int64_t z = 0;
  int parity = 0;
  friend auto operator<=>(const KottwitzValue&, const KottwitzValue&) = default;
};

// t^w w0. Lexicographic order: translation first, then permutation images.
class AffineElement {
 public:
  AffineElement() = default;
  AffineElement(TransVec t, SignedPerm w0);
  static AffineElement identity(int n);
  static AffineElement translation(const ZVec& v);
  static AffineElement permutation(const SignedPerm& w0);

  int rank() const { return w0_.rank(); }
  const ZVec& t() const { return t_.vec(); }
  const TransVec& trans() const { return t_; }
  const SignedPerm& w0() const { return w0_; }

  // Component flag: false on the coset tau * W~o.
  bool in_identity_component() const { return w0_.is_even(); }
  bool in_affine_weyl() const;
  bool in_w_prime() const;
  bool is_identity() const;

  std::string str() const;

  friend auto operator<=>(const AffineElement&, const AffineElement&) = default;
  friend bool operator==(const AffineElement&, const AffineElement&) = default;

 private:
  TransVec t_;
  SignedPerm w0_;
};

struct AffineElementHash {
  std::size_t operator()(const AffineElement& w) const noexcept;
};

struct ZVecHash {
  std::size_t operator()(const ZVec& v) const noexcept;
};

AffineElement multiply(const AffineElement& x, const AffineElement& y);
AffineElement invert(const AffineElement& x);
AffineElement power(const AffineElement& x, int64_t k);
ZVec act(const AffineElement& w, const ZVec& v);
// Action on a point p/scale given by its scaled coordinates: w0 p + scale*t.
ZVec act_scaled(const AffineElement& w, const ZVec& scaled_point, int64_t scale);

// Rejects elements outside W~o.
KottwitzValue kottwitz(const AffineElement& w);
int epsilon(const AffineElement& w);
// Parity of the first-half sum of an integer vector.
int epsilon(const ZVec& v);

// Vertices of the base alcove and the two edge midpoints a_1, a_{n-1}.
struct VertexLabel {
  enum class Kind : std::uint8_t { standard, zero_prime, n_prime };
  Kind kind = Kind::standard;
  int index = 0;  // meaningful for Kind::standard

  static VertexLabel std_vertex(int i) { return {Kind::standard, i}; }
  static VertexLabel zero_prime() { return {Kind::zero_prime, 0}; }
  static VertexLabel n_prime() { return {Kind::n_prime, 0}; }
  std::string str() const;
  // Position in the fixed order 0 < 0' < 1 < 2 < ... < n-1 < n < n'.
  int order_key(int n) const;
  friend bool operator==(const VertexLabel&, const VertexLabel&) = default;
};

struct AlcoveVertex {
  VertexLabel label;
  ZVec doubled;  // 2 * a_label
};

AlcoveVertex alcove_vertex(VertexLabel label, int n);
// The n+1 vertex labels 0, 0', 2, ..., n-2, n, n'.
std::vector<VertexLabel> dynkin_labels(int n);

struct SpecialElements {
  AffineElement tau1;
  AffineElement tau2;
  AffineElement central;  // translation by (1,...,1)
  SignedPerm sigma2;      // (x_1..x_2n) -> (x_{n+1}..x_{2n}, x_1..x_n)
  SignedPerm tau;         // transposition (n, n+1); odd, generates W~ / W~o
};

SpecialElements special_elements(int n);

// All of S°_{2n} (the Weyl group of type D_n), in lexicographic order.
const std::vector<SignedPerm>& even_signed_perms(int n);

}  // namespace spinlm
