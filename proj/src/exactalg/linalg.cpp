#include "rexact/exactalg.hpp"

namespace rexact {

namespace {

// Reduced row echelon form in place; returns pivot columns. Only the first
// `ncols` columns are eligible as pivots (the rest ride along, e.g. an RHS).
std::vector<std::size_t> rref_in_place(RationalMatrix &a, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < ncols && row < a.rows(); ++col) {
    std::size_t best = a.rows();
    std::size_t best_bits = 0;
    for (std::size_t i = row; i < a.rows(); ++i) {
      if (a(i, col) == 0) continue;
      std::size_t b = bit_size(a(i, col));
      if (best == a.rows() || b < best_bits) {
        best = i;
        best_bits = b;
      }
    }
    if (best == a.rows()) continue;
    if (best != row)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(row, j), a(best, j));
    Rational inv = 1 / a(row, col);
    for (std::size_t j = col; j < a.cols(); ++j) a(row, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == row || a(i, col) == 0) continue;
      Rational f = a(i, col);
      for (std::size_t j = col; j < a.cols(); ++j)
        if (a(row, j) != 0) a(i, j) -= f * a(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

} // namespace

RankKernel rank_kernel(const RationalMatrix &m) {
  RankKernel out;
  out.rref = m;
  out.pivot_cols = rref_in_place(out.rref, m.cols());
  out.rank = out.pivot_cols.size();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : out.pivot_cols) is_pivot[c] = true;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    RationalVector v(m.cols(), Rational(0));
    v[f] = 1;
    for (std::size_t r = 0; r < out.pivot_cols.size(); ++r) v[out.pivot_cols[r]] = -out.rref(r, f);
    out.kernel.push_back(std::move(v));
  }
  return out;
}

std::size_t rank(const RationalMatrix &m) { return rank_kernel(m).rank; }

std::optional<RationalVector> solve_particular(const RationalMatrix &a, const RationalVector &b) {
  if (b.size() != a.rows()) throw ShapeError("solve: rhs length mismatch");
  RationalMatrix aug(a.rows(), a.cols() + 1);
  aug.set_block(0, 0, a);
  for (std::size_t i = 0; i < b.size(); ++i) aug(i, a.cols()) = b[i];
  auto pivots = rref_in_place(aug, a.cols());
  for (std::size_t i = pivots.size(); i < aug.rows(); ++i)
    if (aug(i, a.cols()) != 0) return std::nullopt;
  RationalVector x(a.cols(), Rational(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, a.cols());
  return x;
}

Rational determinant(const RationalMatrix &m) {
  if (m.rows() != m.cols()) throw ShapeError("determinant of non-square matrix");
  RationalMatrix a = m;
  const std::size_t n = a.rows();
  Rational det(1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = n;
    for (std::size_t i = k; i < n; ++i)
      if (a(i, k) != 0 && (p == n || bit_size(a(i, k)) < bit_size(a(p, k)))) p = i;
    if (p == n) return Rational(0);
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      det = -det;
    }
    det *= a(k, k);
    Rational inv = 1 / a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      Rational f = a(i, k) * inv;
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return det;
}

RationalMatrix inverse(const RationalMatrix &m) {
  if (m.rows() != m.cols()) throw ShapeError("inverse of non-square matrix");
  const std::size_t n = m.rows();
  RationalMatrix aug(n, 2 * n);
  aug.set_block(0, 0, m);
  aug.set_block(0, n, RationalMatrix::identity(n));
  auto pivots = rref_in_place(aug, n);
  if (pivots.size() != n) throw std::domain_error("singular matrix has no inverse");
  return aug.block(0, n, n, n);
}

RationalMatrix pseudo_inverse_columns(const RationalMatrix &m, std::size_t ncols) {
  if (ncols > m.cols()) throw ShapeError("pseudo_inverse_columns: ncols exceeds column count");
  RationalMatrix a = m.block(0, 0, m.rows(), ncols);
  RationalMatrix at = a.transpose();
  RationalMatrix gram = at * a;
  if (rank(gram) != ncols) throw std::domain_error("pseudo_inverse_columns: rank-deficient column block");
  return inverse(gram) * at;
}

RationalVector min_norm_point(const RationalVector &x0, const std::vector<RationalVector> &basis) {
  if (basis.empty()) return x0;
  const std::size_t n = x0.size(), k = basis.size();
  RationalMatrix nmat(n, k);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < n; ++i) nmat(i, j) = basis[j][i];
  RationalMatrix nt = nmat.transpose();
  RationalVector coef = matvec(inverse(nt * nmat), matvec(nt, x0));
  RationalVector shift = matvec(nmat, coef);
  RationalVector x = x0;
  for (std::size_t i = 0; i < n; ++i) x[i] -= shift[i];
  return x;
}

} // namespace rexact
