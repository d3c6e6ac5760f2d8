#pragma once

#include "rexact/constraints.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rexact {

// pi = pi_u * pi_s, pi_u = P diag(z^{alpha_u} phi_u), pi_s = diag(z^{alpha_s} phi_s) Q.
struct Factorization {
  PolyMatrix pi_u, pi_s;
  std::vector<int> alpha_u, alpha_s;
  std::vector<Poly> phi_u, phi_s;
};

Factorization factor_stable_unstable(const SmithForm &sf, int J1, const Rational &xi, const RootOptions &opt = {});

// N(z; h) = base(z) + sum_r unit[r](z) h_stack(r, .), where h_stack is the
// lag-major sH x q stack (h_0; ...; h_{H-1}) and unit[r] is an s-vector.
// Equals pi(z) sum_j h_j z^j + (sum_i m_i z^{J1+i}) h_stack - w(z) z^{J1}.
struct RhsMap {
  PolyMatrix base;
  std::vector<std::vector<Poly>> unit;
  PolyMatrix apply(const RationalMatrix &h_stack) const;
};

RhsMap assemble_rhs(const REModel &model, const PiPolynomial &pi, const ZetaCoeffs &zc);

enum class Classification { no_causal_solution, determinate, indeterminate };
std::string to_string(Classification c);

struct SolveOptions {
  std::optional<Rational> xi;
  // Indeterminate models: nullopt selects the minimum-norm point; index i adds
  // kernel basis vector i / q to innovation column i % q.
  std::optional<std::size_t> kernel_index;
  RootOptions roots;
};

struct SolutionReport {
  Classification classification = Classification::no_causal_solution;
  Flavor flavor = Flavor::plain;
  int s = 0, H = 0, q = 0, J1 = 0;
  // Kernel of the combined (constraints + cancellation) system, per column.
  std::size_t kernel_dim = 0;
  std::size_t solution_dim = 0; // kernel_dim * q
  // Free parameters counted by the constraint system alone.
  std::size_t constraint_free_parameters = 0;
  // Unstable roots of det pi including excess zeros at zero.
  std::size_t unstable_root_count = 0;
  std::string naive_root_count_verdict;

  // MDS loadings (lag-major sH x q); inert predetermined slots are zeroed.
  RationalMatrix h;
  // Actual revision coefficients of the solution at horizons 0..H-1.
  RationalMatrix revisions;
  // Affine set: particular point per column plus kernel directions (sH vectors).
  RationalMatrix h_particular;
  std::vector<RationalVector> kernel_basis;
  std::string kernel_point;

  PolyMatrix A_theta;
  PolyMatrix transfer_num;
  Poly transfer_den;
  Factorization factorization;

  std::vector<std::pair<int, int>> free_slots;  // (horizon j, component c)
  std::vector<std::pair<int, int>> inert_slots; // predetermined but unobserved
  std::optional<std::size_t> inconsistent_column;
  std::vector<std::string> notes;
};

SolutionReport solve_causal(const REModel &model, const SolveOptions &opt = {});

// Power-series coefficients k_0..k_n of num(z)/den(z).
std::vector<RationalMatrix> expand_transfer(const PolyMatrix &num, const Poly &den, int n);

// Slot (j, c) is inert when column c of A_kh vanishes for every k and h > j,
// so the revision of y^c at horizon j never enters the model.
bool slot_is_inert(const REModel &model, int j, int c);

struct VerifyReport {
  bool ok = false;
  int max_lag = 0;
  bool residual_ok = false;
  std::optional<int> first_bad_lag;
  std::optional<std::pair<int, int>> first_bad_entry;
  std::optional<Rational> first_bad_value;
  bool predetermined_ok = true;
  int predetermined_checked = 0;
  int predetermined_inert = 0;
  bool first_coefficients_ok = true;
  bool denominator_stable = true;
  int wold_horizon = 0; // exogenous MA order used (exact only for this truncation)
  std::vector<std::string> messages;
};

VerifyReport verify_solution(const REModel &model, const SolutionReport &sr, int max_lag);

struct SimulationReport {
  int T = 0;
  std::uint64_t seed = 0;
  int lags = 0;
  int q = 0, s = 0;
  // Row-major s x s matrices for lags 0..lags.
  std::vector<std::vector<double>> sample_autocov;
  std::vector<std::vector<double>> std_error;
  std::vector<std::vector<double>> exact_autocov;
};

SimulationReport simulate(const SolutionReport &sr, int T, std::uint64_t seed, int lags = 4);

} // namespace rexact
