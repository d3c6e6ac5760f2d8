#include "rexact/canon.hpp"

#include <algorithm>

namespace rexact {

int SmithForm::total_zero_order() const {
  int s = 0;
  for (int x : g) s += x;
  return s;
}

PolyMatrix SmithForm::core() const {
  std::vector<Poly> d;
  for (std::size_t i = 0; i < g.size(); ++i) d.push_back(phi[i].shifted(g[i]));
  return diagonal(d);
}

PolyMatrix SmithForm::reconstruct() const { return P * core() * Q; }

RationalMatrix SmithForm::omega0() const { return omega_coefficients(1).at(0); }

std::vector<RationalMatrix> SmithForm::omega_coefficients(int n) const {
  PolyMatrix omega = diagonal(phi) * Q;
  std::vector<RationalMatrix> out;
  for (int k = 0; k < n; ++k) out.push_back(coefficient(omega, k));
  return out;
}

namespace {

struct Elimination {
  PolyMatrix A, P, P_inv, Q, Q_inv;

  explicit Elimination(const PolyMatrix &m)
      : A(m), P(PolyMatrix::identity(m.rows())), P_inv(PolyMatrix::identity(m.rows())),
        Q(PolyMatrix::identity(m.rows())), Q_inv(PolyMatrix::identity(m.rows())) {}

  std::size_t n() const { return A.rows(); }

  // row_i += c * row_t
  void row_add(std::size_t i, std::size_t t, const Poly &c) {
    for (std::size_t j = 0; j < n(); ++j) {
      if (!A(t, j).is_zero()) A(i, j) += c * A(t, j);
      if (!P_inv(t, j).is_zero()) P_inv(i, j) += c * P_inv(t, j);
      if (!P(j, i).is_zero()) P(j, t) -= c * P(j, i);
    }
  }
  void row_swap(std::size_t i, std::size_t t) {
    if (i == t) return;
    for (std::size_t j = 0; j < n(); ++j) {
      std::swap(A(i, j), A(t, j));
      std::swap(P_inv(i, j), P_inv(t, j));
      std::swap(P(j, i), P(j, t));
    }
  }
  void row_scale(std::size_t i, const Rational &u) {
    const Rational inv = 1 / u;
    for (std::size_t j = 0; j < n(); ++j) {
      A(i, j) *= u;
      P_inv(i, j) *= u;
      P(j, i) *= inv;
    }
  }
  // col_j += c * col_t
  void col_add(std::size_t j, std::size_t t, const Poly &c) {
    for (std::size_t i = 0; i < n(); ++i) {
      if (!A(i, t).is_zero()) A(i, j) += c * A(i, t);
      if (!Q_inv(i, t).is_zero()) Q_inv(i, j) += c * Q_inv(i, t);
      if (!Q(j, i).is_zero()) Q(t, i) -= c * Q(j, i);
    }
  }
  void col_swap(std::size_t j, std::size_t t) {
    if (j == t) return;
    for (std::size_t i = 0; i < n(); ++i) {
      std::swap(A(i, j), A(i, t));
      std::swap(Q_inv(i, j), Q_inv(i, t));
      std::swap(Q(j, i), Q(t, i));
    }
  }

  bool pick_pivot(std::size_t t, std::size_t &pi, std::size_t &pj) const {
    bool found = false;
    int best_deg = 0;
    std::size_t best_bits = 0;
    for (std::size_t i = t; i < n(); ++i)
      for (std::size_t j = t; j < n(); ++j) {
        const Poly &e = A(i, j);
        if (e.is_zero()) continue;
        int d = e.degree();
        std::size_t b = e.bits();
        if (!found || d < best_deg || (d == best_deg && b < best_bits)) {
          found = true;
          best_deg = d;
          best_bits = b;
          pi = i;
          pj = j;
        }
      }
    return found;
  }

  void run() {
    for (std::size_t t = 0; t < n(); ++t) {
      for (;;) {
        std::size_t pi = 0, pj = 0;
        if (!pick_pivot(t, pi, pj)) throw RedundantEquations();
        row_swap(t, pi);
        col_swap(t, pj);
        bool clean = true;
        for (std::size_t i = t + 1; i < n(); ++i) {
          if (A(i, t).is_zero()) continue;
          row_add(i, t, -divmod(A(i, t), A(t, t)).first);
          if (!A(i, t).is_zero()) clean = false;
        }
        for (std::size_t j = t + 1; j < n(); ++j) {
          if (A(t, j).is_zero()) continue;
          col_add(j, t, -divmod(A(t, j), A(t, t)).first);
          if (!A(t, j).is_zero()) clean = false;
        }
        if (!clean) continue;
        bool fixed = false;
        for (std::size_t i = t + 1; i < n() && !fixed; ++i)
          for (std::size_t j = t + 1; j < n() && !fixed; ++j)
            if (!divides(A(t, t), A(i, j))) {
              row_add(t, i, Poly(1));
              fixed = true;
            }
        if (!fixed) break;
      }
      row_scale(t, 1 / A(t, t).lead());
    }
  }
};

} // namespace

SmithForm smith_form(const PolyMatrix &m) {
  if (m.rows() != m.cols()) throw ShapeError("smith_form requires a square matrix");
  Elimination e(m);
  e.run();
  SmithForm sf;
  sf.P = std::move(e.P);
  sf.P_inv = std::move(e.P_inv);
  sf.Q = std::move(e.Q);
  sf.Q_inv = std::move(e.Q_inv);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const Poly &d = e.A(i, i);
    int v = d.valuation();
    sf.g.push_back(v);
    sf.phi.push_back(d.unshifted(v));
  }
  return sf;
}

namespace {

PolyMatrix unimodular_inverse(const PolyMatrix &m, const char *name) {
  auto [det, adj] = det_adjugate(m);
  if (det.is_zero() || det.degree() != 0)
    throw std::invalid_argument(std::string(name) + " is not unimodular (det = " + det.str() + ")");
  Rational inv = 1 / det.coeff(0);
  PolyMatrix r = adj;
  for (std::size_t i = 0; i < r.rows(); ++i)
    for (std::size_t j = 0; j < r.cols(); ++j) r(i, j) *= inv;
  return r;
}

} // namespace

SmithForm make_smith_form(const PolyMatrix &P, const std::vector<int> &g, const std::vector<Poly> &phi,
                          const PolyMatrix &Q) {
  if (P.rows() != P.cols() || Q.rows() != Q.cols() || P.rows() != Q.rows() || g.size() != P.rows() ||
      phi.size() != P.rows())
    throw ShapeError("make_smith_form: inconsistent sizes");
  SmithForm sf;
  sf.P = P;
  sf.Q = Q;
  sf.g = g;
  sf.phi = phi;
  sf.P_inv = unimodular_inverse(P, "P");
  sf.Q_inv = unimodular_inverse(Q, "Q");
  return sf;
}

std::vector<std::string> smith_violations(const SmithForm &sf, const PolyMatrix &m) {
  std::vector<std::string> v;
  const std::size_t n = m.rows();
  if (sf.P.rows() != n || sf.Q.rows() != n || sf.g.size() != n || sf.phi.size() != n) {
    v.push_back("size mismatch");
    return v;
  }
  if (sf.reconstruct() != m) v.push_back("P*alpha*Phi*Q differs from the source matrix");
  if (!is_unimodular(sf.P)) v.push_back("P is not unimodular");
  if (!is_unimodular(sf.Q)) v.push_back("Q is not unimodular");
  const PolyMatrix I = PolyMatrix::identity(n);
  if (sf.P * sf.P_inv != I) v.push_back("P*P_inv != I");
  if (sf.Q * sf.Q_inv != I) v.push_back("Q*Q_inv != I");
  for (std::size_t i = 0; i < n; ++i) {
    if (sf.g[i] < 0) v.push_back("negative partial multiplicity");
    if (i > 0 && sf.g[i] < sf.g[i - 1]) v.push_back("g not non-decreasing");
    if (sf.phi[i].coeff(0) == 0) v.push_back("phi_" + std::to_string(i) + "(0) == 0");
    if (sf.phi[i].lead() != 1) v.push_back("phi_" + std::to_string(i) + " not monic");
    if (i > 0 && !divides(sf.phi[i - 1], sf.phi[i])) v.push_back("phi divisibility chain broken");
  }
  return v;
}

std::vector<Poly> invariant_factors_oracle(const PolyMatrix &m) {
  if (m.rows() != m.cols()) throw ShapeError("invariant_factors_oracle requires a square matrix");
  const std::size_t n = m.rows();
  std::vector<Poly> out;
  Poly prev(1);
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<std::size_t> rows(k), cols(k);
    auto first = [&](std::vector<std::size_t> &c) {
      for (std::size_t i = 0; i < k; ++i) c[i] = i;
    };
    auto next = [&](std::vector<std::size_t> &c) {
      std::size_t i = k;
      while (i > 0) {
        --i;
        if (c[i] < n - k + i) {
          ++c[i];
          for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
          return true;
        }
      }
      return false;
    };
    Poly acc;
    first(rows);
    do {
      first(cols);
      do {
        PolyMatrix sub(k, k);
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) sub(i, j) = m(rows[i], cols[j]);
        acc = poly_gcd(acc, determinant(sub));
      } while (next(cols));
    } while (next(rows));
    if (acc.is_zero()) throw RedundantEquations();
    out.push_back(exact_div(acc, prev).monic());
    prev = acc;
  }
  return out;
}

bool is_unimodular(const PolyMatrix &m) {
  if (m.rows() != m.cols()) return false;
  Poly d = determinant(m);
  return !d.is_zero() && d.degree() == 0;
}

} // namespace rexact
