#pragma once

#include "rexact/solver.hpp"

#include <random>

namespace rexact::testing {

using Rng = std::mt19937_64;

Rational random_rational(Rng &rng, int max_num = 5, int max_den = 3);
RationalMatrix random_matrix(Rng &rng, std::size_t rows, std::size_t cols, double density = 1.0);
Poly random_poly(Rng &rng, int max_degree, int max_coeff = 3);
PolyMatrix random_poly_matrix(Rng &rng, std::size_t s, int max_degree, double density = 0.7);
// Product of elementary row operations with polynomial multipliers.
PolyMatrix random_unimodular(Rng &rng, std::size_t s, int ops, int max_degree);

struct CorpusOptions {
  int max_s = 3, max_K = 2, max_H = 2;
  bool predetermined = false;
  int max_wold = 3;
};

// Model with unrestricted random coefficients; about a third of the draws
// make A_{0,H} rank deficient so that zeros at z = 0 appear.
REModel generic_model(Rng &rng, const CorpusOptions &opt);
// Model whose pi(z) is U1 diag(z^g_i prod (z - r)) U2 with rational roots r
// off the unit circle, so stable/unstable splits are rational.
REModel sandwich_model(Rng &rng, const CorpusOptions &opt);
// Distributes pi(z) = sum_i A*_i z^{J1-i} over the pairs (k, k+i).
REModel model_from_pi(Rng &rng, const PolyMatrix &pi, int K, int H, int J1);
void randomize_exogenous(Rng &rng, REModel &m, const CorpusOptions &opt);

// zeta coefficient blocks from the defining triple sum.
std::vector<RationalMatrix> zeta_oracle(const REModel &m);

// Constraint system [C | D w] derived by truncating
// alpha^{-1} P^{-1} (zeta_{t-J1} - u_{t-J1}) lag by lag, with P^{-1} = adj P / det P.
struct OracleSystem {
  RationalMatrix C;  // sH x sH, unknowns lag-major
  RationalMatrix Dw; // sH x q
};
OracleSystem constraint_oracle(const REModel &m, const SmithForm &sf, int J1);

// Row spaces of [A | a] and [B | b] agree.
bool same_affine_solution_set(const RationalMatrix &A, const RationalMatrix &a, const RationalMatrix &B,
                              const RationalMatrix &b);

// First-order model E_t y_{t+1} = B y_t + C eps_t with B = V diag(lambda) V^{-1};
// the first s0 components are forward-looking, the rest predetermined.
struct BKCase {
  REModel model;
  RationalMatrix B, C;
  int s0 = 0;
};
BKCase random_bk_case(Rng &rng, int s, int q, int n_unstable);

// Closed form K = -(T_{u,s0})^{-1} J_u^{-1} T_{u.} C from a floating-point
// eigendecomposition; returns k_0..k_{lags-1} as row-major doubles.
std::vector<std::vector<double>> bk_oracle_responses(const BKCase &c, int lags);

} // namespace rexact::testing
