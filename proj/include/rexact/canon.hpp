#pragma once

#include "rexact/errors.hpp"
#include "rexact/exactalg.hpp"

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace rexact {

// pi = P * diag(z^g_i) * diag(phi_i) * Q with P, Q unimodular.
struct SmithForm {
  PolyMatrix P, Q, P_inv, Q_inv;
  std::vector<int> g;
  std::vector<Poly> phi;

  std::size_t size() const { return g.size(); }
  int total_zero_order() const;
  // Diagonal core diag(z^g_i phi_i).
  PolyMatrix core() const;
  PolyMatrix reconstruct() const;
  // Zero-lag coefficient of Phi(z) Q(z).
  RationalMatrix omega0() const;
  // Coefficients of Phi(z) Q(z) for powers 0..n-1.
  std::vector<RationalMatrix> omega_coefficients(int n) const;
};

// Throws RedundantEquations when det(m) is identically zero.
SmithForm smith_form(const PolyMatrix &m);

// Builds a SmithForm from explicitly supplied factors; P_inv and Q_inv are
// adj/det. Throws std::invalid_argument if P or Q is not unimodular.
SmithForm make_smith_form(const PolyMatrix &P, const std::vector<int> &g, const std::vector<Poly> &phi,
                          const PolyMatrix &Q);

// Lists every violated SmithForm invariant (empty when the form is valid for m).
std::vector<std::string> smith_violations(const SmithForm &sf, const PolyMatrix &m);

// Monic invariant factors d_k = D_k / D_{k-1}, D_k = gcd of k x k minors.
std::vector<Poly> invariant_factors_oracle(const PolyMatrix &m);

bool is_unimodular(const PolyMatrix &m);

struct RootClassification {
  int zero_multiplicity = 0;
  std::vector<std::complex<double>> stable_roots;
  std::vector<std::complex<double>> unstable_roots;
  Rational xi{1};
  // Exact split of p / z^m into primitive stable and unstable factors, when
  // both have rational coefficients: p = z^m * scale * stable * unstable.
  std::optional<Poly> stable_factor;
  std::optional<Poly> unstable_factor;
};

struct RootOptions {
  double boundary_tol = 1e-9;
};

// Throws BoundaryRoot when a root lies within tolerance of the ring [1/xi, 1].
RootClassification classify_roots(const Poly &p, const Rational &xi, const RootOptions &opt = {});

// Numerical roots of p (p(0) != 0 not required), polished.
std::vector<std::complex<double>> poly_roots(const Poly &p);

// Splits p (p(0) != 0) as p = c * stable * unstable with exact rational
// factors; unstable is primitive with positive leading coefficient.
// Throws FactorSplitError when no rational split is found.
std::pair<Poly, Poly> split_by_modulus(const Poly &p, const Rational &xi, const RootOptions &opt = {});

} // namespace rexact
