#pragma once

// Exact scalars of the ring Q[s], s = sqrt(pi), viewed inside the discrete
// valuation ring Q[s] localized at s. Column matrices over it model lattices.

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>
#include <vector>

namespace spinlm {

using Rational = boost::multiprecision::cpp_rational;

class SqrtPiScalar {
 public:
  SqrtPiScalar() = default;
  SqrtPiScalar(long long c);  // NOLINT: integers embed implicitly
  SqrtPiScalar(Rational c);   // NOLINT
  // a + b s
  static SqrtPiScalar linear(Rational a, Rational b);
  static SqrtPiScalar s_power(int k);
  static SqrtPiScalar pi() { return s_power(2); }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  // Largest k with s^k dividing this; nullopt for zero.
  std::optional<int> valuation() const;
  Rational coeff(int k) const;
  // a + b s with a, b in Q[pi]: the even and odd parts.
  SqrtPiScalar even_part() const;
  SqrtPiScalar odd_part() const;
  Rational reduce() const { return coeff(0); }
  SqrtPiScalar shift_down(int k) const;  // divide by s^k; must be exact

  SqrtPiScalar operator+(const SqrtPiScalar& o) const;
  SqrtPiScalar operator-(const SqrtPiScalar& o) const;
  SqrtPiScalar operator-() const;
  SqrtPiScalar operator*(const SqrtPiScalar& o) const;
  SqrtPiScalar& operator+=(const SqrtPiScalar& o) { return *this = *this + o; }
  SqrtPiScalar& operator-=(const SqrtPiScalar& o) { return *this = *this - o; }
  SqrtPiScalar& operator*=(const SqrtPiScalar& o) { return *this = *this * o; }
  bool operator==(const SqrtPiScalar& o) const { return c_ == o.c_; }

  std::string str() const;

 private:
  void trim();
  std::vector<Rational> c_;  // c_[k] is the coefficient of s^k
};

// rows x cols matrix; columns are lattice generators.
class SqrtPiMatrix {
 public:
  SqrtPiMatrix() = default;
  SqrtPiMatrix(int rows, int cols);
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  SqrtPiScalar& at(int r, int c) { return a_[static_cast<std::size_t>(r * cols_ + c)]; }
  const SqrtPiScalar& at(int r, int c) const { return a_[static_cast<std::size_t>(r * cols_ + c)]; }
  std::vector<SqrtPiScalar> column(int c) const;
  void append_column(const std::vector<SqrtPiScalar>& col);
  SqrtPiMatrix transpose() const;
  SqrtPiMatrix operator*(const SqrtPiMatrix& o) const;
  bool is_zero() const;
  // Constant terms.
  std::vector<std::vector<Rational>> reduce() const;
  int max_degree() const;
  bool operator==(const SqrtPiMatrix& o) const = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<SqrtPiScalar> a_;
};

// Valuations of the nonzero invariant factors (Smith normal form over the
// localized ring), ascending. Their count is the rank over Q(s).
std::vector<int> smith_valuations(const SqrtPiMatrix& m);
SqrtPiScalar determinant(const SqrtPiMatrix& square);
int rational_rank(std::vector<std::vector<Rational>> m);
// Pivot columns of a rational matrix in row-echelon order.
std::vector<int> pivot_columns(std::vector<std::vector<Rational>> m);

}  // namespace spinlm
