#include "spinlm/sqrtpi.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "spinlm/weyl.hpp"

namespace spinlm {

SqrtPiScalar::SqrtPiScalar(long long c) : SqrtPiScalar(Rational(c)) {}

SqrtPiScalar::SqrtPiScalar(Rational c) {
  c_.push_back(std::move(c));
  trim();
}

SqrtPiScalar SqrtPiScalar::linear(Rational a, Rational b) {
  SqrtPiScalar x;
  x.c_ = {std::move(a), std::move(b)};
  x.trim();
  return x;
}

SqrtPiScalar SqrtPiScalar::s_power(int k) {
  if (k < 0) throw Error("negative power of s is not integral");
  SqrtPiScalar x;
  x.c_.assign(static_cast<std::size_t>(k) + 1, Rational(0));
  x.c_.back() = 1;
  return x;
}

void SqrtPiScalar::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

std::optional<int> SqrtPiScalar::valuation() const {
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (c_[k] != 0) return static_cast<int>(k);
  }
  return std::nullopt;
}

Rational SqrtPiScalar::coeff(int k) const {
  return k >= 0 && k < static_cast<int>(c_.size()) ? c_[static_cast<std::size_t>(k)] : Rational(0);
}

SqrtPiScalar SqrtPiScalar::even_part() const {
  SqrtPiScalar x = *this;
  for (std::size_t k = 1; k < x.c_.size(); k += 2) x.c_[k] = 0;
  x.trim();
  return x;
}

SqrtPiScalar SqrtPiScalar::odd_part() const { return *this - even_part(); }

SqrtPiScalar SqrtPiScalar::shift_down(int k) const {
  auto v = valuation();
  if (!v) return {};
  if (*v < k) throw Error("shift_down: not divisible by the requested power of s");
  SqrtPiScalar x;
  x.c_.assign(c_.begin() + k, c_.end());
  return x;
}

SqrtPiScalar SqrtPiScalar::operator+(const SqrtPiScalar& o) const {
  SqrtPiScalar x;
  x.c_.resize(std::max(c_.size(), o.c_.size()));
  for (std::size_t k = 0; k < x.c_.size(); ++k) x.c_[k] = coeff(static_cast<int>(k)) + o.coeff(static_cast<int>(k));
  x.trim();
  return x;
}

SqrtPiScalar SqrtPiScalar::operator-() const {
  SqrtPiScalar x = *this;
  for (Rational& c : x.c_) c = -c;
  return x;
}

SqrtPiScalar SqrtPiScalar::operator-(const SqrtPiScalar& o) const { return *this + (-o); }

SqrtPiScalar SqrtPiScalar::operator*(const SqrtPiScalar& o) const {
  if (is_zero() || o.is_zero()) return {};
  SqrtPiScalar x;
  x.c_.assign(c_.size() + o.c_.size() - 1, Rational(0));
  for (std::size_t a = 0; a < c_.size(); ++a) {
    if (c_[a] == 0) continue;
    for (std::size_t b = 0; b < o.c_.size(); ++b) x.c_[a + b] += c_[a] * o.c_[b];
  }
  x.trim();
  return x;
}

std::string SqrtPiScalar::str() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (c_[k] == 0) continue;
    if (!first) os << (c_[k] > 0 ? " + " : " - ");
    else if (c_[k] < 0) os << "-";
    Rational mag = c_[k] < 0 ? Rational(-c_[k]) : c_[k];
    if (k == 0 || mag != 1) os << mag;
    if (k >= 1) os << "s";
    if (k >= 2) os << "^" << k;
    first = false;
  }
  return os.str();
}

// ---- matrices ----

SqrtPiMatrix::SqrtPiMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows * cols)) {}

std::vector<SqrtPiScalar> SqrtPiMatrix::column(int c) const {
  std::vector<SqrtPiScalar> out;
  for (int r = 0; r < rows_; ++r) out.push_back(at(r, c));
  return out;
}

void SqrtPiMatrix::append_column(const std::vector<SqrtPiScalar>& col) {
  if (cols_ == 0 && rows_ == 0) rows_ = static_cast<int>(col.size());
  if (static_cast<int>(col.size()) != rows_) throw Error("append_column: wrong length");
  SqrtPiMatrix m(rows_, cols_ + 1);
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) m.at(r, c) = at(r, c);
    m.at(r, cols_) = col[static_cast<std::size_t>(r)];
  }
  *this = std::move(m);
}

SqrtPiMatrix SqrtPiMatrix::transpose() const {
  SqrtPiMatrix m(cols_, rows_);
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) m.at(c, r) = at(r, c);
  }
  return m;
}

SqrtPiMatrix SqrtPiMatrix::operator*(const SqrtPiMatrix& o) const {
  if (cols_ != o.rows_) throw Error("matrix product: shape mismatch");
  SqrtPiMatrix m(rows_, o.cols_);
  for (int r = 0; r < rows_; ++r) {
    for (int k = 0; k < cols_; ++k) {
      if (at(r, k).is_zero()) continue;
      for (int c = 0; c < o.cols_; ++c) {
        if (!o.at(k, c).is_zero()) m.at(r, c) += at(r, k) * o.at(k, c);
      }
    }
  }
  return m;
}

bool SqrtPiMatrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const SqrtPiScalar& x) { return x.is_zero(); });
}

std::vector<std::vector<Rational>> SqrtPiMatrix::reduce() const {
  std::vector<std::vector<Rational>> out(static_cast<std::size_t>(rows_), std::vector<Rational>(static_cast<std::size_t>(cols_)));
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) out[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = at(r, c).reduce();
  }
  return out;
}

int SqrtPiMatrix::max_degree() const {
  int d = 0;
  for (const SqrtPiScalar& x : a_) d = std::max(d, x.degree());
  return d;
}

std::vector<int> smith_valuations(const SqrtPiMatrix& input) {
  SqrtPiMatrix m = input;
  const int rows = m.rows();
  const int cols = m.cols();
  std::vector<int> out;
  for (int step = 0; step < std::min(rows, cols); ++step) {
    int pr = -1;
    int pc = -1;
    int best = 0;
    for (int r = step; r < rows; ++r) {
      for (int c = step; c < cols; ++c) {
        auto v = m.at(r, c).valuation();
        if (v && (pr < 0 || *v < best)) {
          pr = r;
          pc = c;
          best = *v;
        }
      }
    }
    if (pr < 0) break;
    for (int c = 0; c < cols; ++c) std::swap(m.at(step, c), m.at(pr, c));
    for (int r = 0; r < rows; ++r) std::swap(m.at(r, step), m.at(r, pc));
    // pivot = s^best * u with u(0) != 0; scaling a row or column by u is invertible over the local ring
    const SqrtPiScalar unit = m.at(step, step).shift_down(best);
    for (int r = step + 1; r < rows; ++r) {
      if (m.at(r, step).is_zero()) continue;
      SqrtPiScalar q = m.at(r, step).shift_down(best);
      for (int c = step; c < cols; ++c) m.at(r, c) = unit * m.at(r, c) - q * m.at(step, c);
    }
    for (int c = step + 1; c < cols; ++c) {
      if (m.at(step, c).is_zero()) continue;
      SqrtPiScalar q = m.at(step, c).shift_down(best);
      for (int r = step; r < rows; ++r) m.at(r, c) = unit * m.at(r, c) - q * m.at(r, step);
    }
    out.push_back(best);
  }
  return out;
}

SqrtPiScalar determinant(const SqrtPiMatrix& a) {
  const int n = a.rows();
  if (a.cols() != n) throw Error("determinant: matrix is not square");
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  SqrtPiScalar total;
  do {
    int inversions = 0;
    for (int x = 0; x < n; ++x) {
      for (int y = x + 1; y < n; ++y) inversions += perm[static_cast<std::size_t>(x)] > perm[static_cast<std::size_t>(y)] ? 1 : 0;
    }
    SqrtPiScalar term(1);
    for (int r = 0; r < n && !term.is_zero(); ++r) term *= a.at(r, perm[static_cast<std::size_t>(r)]);
    if (term.is_zero()) continue;
    total += inversions % 2 ? -term : term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

std::vector<int> pivot_columns(std::vector<std::vector<Rational>> m) {
  std::vector<int> pivots;
  const int rows = static_cast<int>(m.size());
  const int cols = rows ? static_cast<int>(m[0].size()) : 0;
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int p = -1;
    for (int r = rank; r < rows; ++r) {
      if (m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] != 0) {
        p = r;
        break;
      }
    }
    if (p < 0) continue;
    std::swap(m[static_cast<std::size_t>(rank)], m[static_cast<std::size_t>(p)]);
    for (int r = rank + 1; r < rows; ++r) {
      auto& row = m[static_cast<std::size_t>(r)];
      const auto& prow = m[static_cast<std::size_t>(rank)];
      Rational f = row[static_cast<std::size_t>(c)] / prow[static_cast<std::size_t>(c)];
      if (f == 0) continue;
      for (int k = c; k < cols; ++k) row[static_cast<std::size_t>(k)] -= f * prow[static_cast<std::size_t>(k)];
    }
    pivots.push_back(c);
    ++rank;
  }
  return pivots;
}

int rational_rank(std::vector<std::vector<Rational>> m) { return static_cast<int>(pivot_columns(std::move(m)).size()); }

}  // namespace spinlm
