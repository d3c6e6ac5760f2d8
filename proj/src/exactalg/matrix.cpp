#include "rexact/exactalg.hpp"

#include <algorithm>

namespace rexact {

RationalMatrix vstack(const std::vector<RationalMatrix> &parts, std::size_t cols) {
  std::size_t rows = 0;
  for (const auto &p : parts) {
    if (p.cols() != cols) throw ShapeError("vstack column mismatch");
    rows += p.rows();
  }
  RationalMatrix m(rows, cols);
  std::size_t r = 0;
  for (const auto &p : parts) {
    m.set_block(r, 0, p);
    r += p.rows();
  }
  return m;
}

RationalMatrix hstack(const std::vector<RationalMatrix> &parts, std::size_t rows) {
  std::size_t cols = 0;
  for (const auto &p : parts) {
    if (p.rows() != rows) throw ShapeError("hstack row mismatch");
    cols += p.cols();
  }
  RationalMatrix m(rows, cols);
  std::size_t c = 0;
  for (const auto &p : parts) {
    m.set_block(0, c, p);
    c += p.cols();
  }
  return m;
}

RationalMatrix column_matrix(const RationalVector &v) {
  RationalMatrix m(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
  return m;
}

RationalVector matvec(const RationalMatrix &m, const RationalVector &v) {
  if (m.cols() != v.size()) throw ShapeError("matvec shape mismatch");
  RationalVector r(m.rows(), Rational(0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0 && v[j] != 0) r[i] += m(i, j) * v[j];
  return r;
}

int degree(const PolyMatrix &m) {
  int d = Poly::neg_inf_degree;
  for (const auto &p : m.data()) d = std::max(d, p.degree());
  return d;
}

RationalMatrix coefficient(const PolyMatrix &m, int power) {
  RationalMatrix c(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) c(i, j) = m(i, j).coeff(power);
  return c;
}

std::vector<RationalMatrix> coefficients(const PolyMatrix &m) {
  std::vector<RationalMatrix> out;
  const int d = degree(m);
  for (int k = 0; k <= d; ++k) out.push_back(coefficient(m, k));
  return out;
}

PolyMatrix from_coefficients(const std::vector<RationalMatrix> &coeffs) {
  if (coeffs.empty()) return PolyMatrix();
  const std::size_t r = coeffs[0].rows(), c = coeffs[0].cols();
  PolyMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) {
      std::vector<Rational> v;
      v.reserve(coeffs.size());
      for (const auto &k : coeffs) {
        if (k.rows() != r || k.cols() != c) throw ShapeError("coefficient shape mismatch");
        v.push_back(k(i, j));
      }
      m(i, j) = Poly(std::move(v));
    }
  return m;
}

PolyMatrix to_poly_matrix(const RationalMatrix &m) {
  PolyMatrix p(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) p(i, j) = Poly(m(i, j));
  return p;
}

RationalMatrix evaluate(const PolyMatrix &m, const Rational &x) {
  RationalMatrix v(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) v(i, j) = m(i, j).eval(x);
  return v;
}

PolyMatrix scale(const PolyMatrix &m, const Poly &p) {
  PolyMatrix r = m;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j) * p;
  return r;
}

PolyMatrix diagonal(const std::vector<Poly> &d) {
  PolyMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

namespace {

// Fraction-free (Bareiss) elimination; divisions are exact in Q[z].
Poly bareiss_det(PolyMatrix a) {
  const std::size_t n = a.rows();
  if (n == 0) return Poly(1);
  Poly prev(1);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t best = n;
    for (std::size_t i = k; i < n; ++i) {
      if (a(i, k).is_zero()) continue;
      if (best == n || a(i, k).degree() < a(best, k).degree() ||
          (a(i, k).degree() == a(best, k).degree() && a(i, k).bits() < a(best, k).bits()))
        best = i;
    }
    if (best == n) return Poly();
    if (best != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(best, j));
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Poly v = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        a(i, j) = exact_div(v, prev);
      }
      a(i, k) = Poly();
    }
    prev = a(k, k);
  }
  Poly d = a(n - 1, n - 1);
  return negate ? -d : d;
}

PolyMatrix minor_matrix(const PolyMatrix &m, std::size_t skip_r, std::size_t skip_c) {
  const std::size_t n = m.rows();
  PolyMatrix s(n - 1, n - 1);
  for (std::size_t i = 0, ii = 0; i < n; ++i) {
    if (i == skip_r) continue;
    for (std::size_t j = 0, jj = 0; j < n; ++j) {
      if (j == skip_c) continue;
      s(ii, jj++) = m(i, j);
    }
    ++ii;
  }
  return s;
}

} // namespace

Poly determinant(const PolyMatrix &m) {
  if (m.rows() != m.cols()) throw ShapeError("determinant of non-square matrix");
  return bareiss_det(m);
}

std::pair<Poly, PolyMatrix> det_adjugate(const PolyMatrix &m) {
  if (m.rows() != m.cols()) throw ShapeError("adjugate of non-square matrix");
  const std::size_t n = m.rows();
  PolyMatrix adj(n, n);
  if (n == 1) {
    adj(0, 0) = Poly(1);
  } else {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Poly c = bareiss_det(minor_matrix(m, i, j));
        adj(j, i) = ((i + j) % 2 == 0) ? c : -c;
      }
  }
  return {bareiss_det(m), adj};
}

} // namespace rexact
