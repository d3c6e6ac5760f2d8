#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rexact {

// Exact scalar. mpq_class keeps numerator/denominator in lowest terms with a
// positive denominator after every arithmetic operation.
using Rational = mpq_class;

class ShapeError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

Rational parse_rational(std::string_view text);
std::string to_string(const Rational &r);
std::size_t bit_size(const Rational &r);

// ---------------------------------------------------------------------------
// Univariate polynomials over Q, coefficients lowest degree first.
// ---------------------------------------------------------------------------

class Poly {
public:
  // Degree of the zero polynomial. Compares below every real degree.
  static constexpr int neg_inf_degree = std::numeric_limits<int>::min();

  Poly() = default;
  Poly(long c);
  Poly(const Rational &c);
  explicit Poly(std::vector<Rational> coeffs);

  static Poly monomial(const Rational &c, int power);
  static Poly z() { return monomial(Rational(1), 1); }

  int degree() const;
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  // Coefficient of z^i; zero outside the stored range.
  const Rational &coeff(int i) const;
  const Rational &lead() const;
  const std::vector<Rational> &coeffs() const { return c_; }
  // Largest m with z^m dividing this polynomial (neg_inf_degree for zero).
  int valuation() const;
  std::size_t bits() const;

  Poly operator-() const;
  Poly &operator+=(const Poly &o);
  Poly &operator-=(const Poly &o);
  Poly &operator*=(const Poly &o);
  Poly &operator*=(const Rational &c);

  friend Poly operator+(Poly a, const Poly &b) { return a += b; }
  friend Poly operator-(Poly a, const Poly &b) { return a -= b; }
  friend Poly operator*(const Poly &a, const Poly &b);
  friend Poly operator*(Poly a, const Rational &c) { return a *= c; }
  friend Poly operator*(const Rational &c, Poly a) { return a *= c; }
  friend bool operator==(const Poly &a, const Poly &b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly &a, const Poly &b) { return !(a == b); }

  // Multiply by z^k (k >= 0).
  Poly shifted(int k) const;
  // Divide by z^k; throws unless z^k divides exactly.
  Poly unshifted(int k) const;
  // Keep coefficients of z^0 .. z^{n-1}.
  Poly truncated(int n) const;
  Poly monic() const;
  Rational eval(const Rational &x) const;
  std::complex<long double> eval(std::complex<long double> x) const;
  Poly derivative() const;

  std::string str(const char *var = "z") const;

private:
  void trim();
  std::vector<Rational> c_;
};

// Exact division with remainder; throws std::domain_error on division by zero.
std::pair<Poly, Poly> divmod(const Poly &a, const Poly &b);
// Exact quotient; throws std::domain_error unless b divides a.
Poly exact_div(const Poly &a, const Poly &b);
bool divides(const Poly &b, const Poly &a);
// Monic gcd; gcd(0, 0) = 0.
Poly poly_gcd(const Poly &a, const Poly &b);
// Primitive integer associate with positive leading coefficient.
Poly primitive_part(const Poly &p);

// ---------------------------------------------------------------------------
// Dense matrices. Used with T = Rational and T = Poly.
// ---------------------------------------------------------------------------

template <class T>
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), e_(rows * cols, T(0)) {}
  Matrix(std::initializer_list<std::initializer_list<T>> rows);

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  T &operator()(std::size_t i, std::size_t j) { return e_[i * c_ + j]; }
  const T &operator()(std::size_t i, std::size_t j) const { return e_[i * c_ + j]; }
  const std::vector<T> &data() const { return e_; }

  bool is_zero() const {
    for (const auto &x : e_)
      if (x != T(0)) return false;
    return true;
  }

  Matrix transpose() const {
    Matrix t(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix block(std::size_t i0, std::size_t j0, std::size_t nr, std::size_t nc) const {
    if (i0 + nr > r_ || j0 + nc > c_) throw ShapeError("block out of range");
    Matrix b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(i0 + i, j0 + j);
    return b;
  }

  void set_block(std::size_t i0, std::size_t j0, const Matrix &b) {
    if (i0 + b.rows() > r_ || j0 + b.cols() > c_) throw ShapeError("set_block out of range");
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) (*this)(i0 + i, j0 + j) = b(i, j);
  }

  Matrix row(std::size_t i) const { return block(i, 0, 1, c_); }
  Matrix col(std::size_t j) const { return block(0, j, r_, 1); }

  Matrix &operator+=(const Matrix &o) {
    check_same(o);
    for (std::size_t k = 0; k < e_.size(); ++k) e_[k] += o.e_[k];
    return *this;
  }
  Matrix &operator-=(const Matrix &o) {
    check_same(o);
    for (std::size_t k = 0; k < e_.size(); ++k) e_[k] -= o.e_[k];
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix &b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix &b) { return a -= b; }
  friend Matrix operator-(Matrix a) {
    for (auto &x : a.e_) x = -x;
    return a;
  }
  friend Matrix operator*(const Matrix &a, const Matrix &b) {
    if (a.c_ != b.r_) throw ShapeError("matrix product shape mismatch");
    Matrix p(a.r_, b.c_);
    for (std::size_t i = 0; i < a.r_; ++i)
      for (std::size_t k = 0; k < a.c_; ++k) {
        const T &aik = a(i, k);
        if (aik == T(0)) continue;
        for (std::size_t j = 0; j < b.c_; ++j)
          if (b(k, j) != T(0)) p(i, j) += aik * b(k, j);
      }
    return p;
  }
  template <class S>
  Matrix scaled(const S &s) const {
    Matrix m = *this;
    for (auto &x : m.e_) x *= s;
    return m;
  }
  friend bool operator==(const Matrix &a, const Matrix &b) {
    return a.r_ == b.r_ && a.c_ == b.c_ && a.e_ == b.e_;
  }
  friend bool operator!=(const Matrix &a, const Matrix &b) { return !(a == b); }

private:
  void check_same(const Matrix &o) const {
    if (r_ != o.r_ || c_ != o.c_) throw ShapeError("matrix shape mismatch");
  }
  std::size_t r_ = 0, c_ = 0;
  std::vector<T> e_;
};

template <class T>
Matrix<T>::Matrix(std::initializer_list<std::initializer_list<T>> rows) {
  r_ = rows.size();
  c_ = r_ ? rows.begin()->size() : 0;
  e_.reserve(r_ * c_);
  for (const auto &row : rows) {
    if (row.size() != c_) throw ShapeError("ragged matrix initializer");
    for (const auto &x : row) e_.push_back(x);
  }
}

using RationalMatrix = Matrix<Rational>;
using PolyMatrix = Matrix<Poly>;
using RationalVector = std::vector<Rational>;

RationalMatrix vstack(const std::vector<RationalMatrix> &parts, std::size_t cols);
RationalMatrix hstack(const std::vector<RationalMatrix> &parts, std::size_t rows);
RationalMatrix column_matrix(const RationalVector &v);
RationalVector matvec(const RationalMatrix &m, const RationalVector &v);

// ---------------------------------------------------------------------------
// Polynomial matrices.
// ---------------------------------------------------------------------------

int degree(const PolyMatrix &m);
RationalMatrix coefficient(const PolyMatrix &m, int power);
std::vector<RationalMatrix> coefficients(const PolyMatrix &m);
PolyMatrix from_coefficients(const std::vector<RationalMatrix> &coeffs);
PolyMatrix to_poly_matrix(const RationalMatrix &m);
RationalMatrix evaluate(const PolyMatrix &m, const Rational &x);
PolyMatrix scale(const PolyMatrix &m, const Poly &p);
PolyMatrix diagonal(const std::vector<Poly> &d);

Poly determinant(const PolyMatrix &m);
// (det M, adj M) with M adj M = adj M M = det(M) I.
std::pair<Poly, PolyMatrix> det_adjugate(const PolyMatrix &m);

// ---------------------------------------------------------------------------
// Exact linear algebra over Q.
// ---------------------------------------------------------------------------

struct RankKernel {
  std::size_t rank = 0;
  std::vector<RationalVector> kernel;
  std::vector<std::size_t> pivot_cols;
  RationalMatrix rref;
};

// Gaussian elimination with smallest-bit-size pivots (ties: lowest row index).
RankKernel rank_kernel(const RationalMatrix &m);
std::size_t rank(const RationalMatrix &m);

// Particular solution of A x = b with free variables set to zero, or nullopt
// when the system is inconsistent.
std::optional<RationalVector> solve_particular(const RationalMatrix &a, const RationalVector &b);

Rational determinant(const RationalMatrix &m);
RationalMatrix inverse(const RationalMatrix &m);
// (A^T A)^{-1} A^T for A = first ncols columns of m.
RationalMatrix pseudo_inverse_columns(const RationalMatrix &m, std::size_t ncols);
// Point of x0 + span(basis) with minimal Euclidean norm.
RationalVector min_norm_point(const RationalVector &x0, const std::vector<RationalVector> &basis);

} // namespace rexact
