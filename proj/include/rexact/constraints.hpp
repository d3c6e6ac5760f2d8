#pragma once

#include "rexact/canon.hpp"
#include "rexact/model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rexact {

// zeta_t = sum_i m_i eps^._{t-i}, m_i of shape s x sH (block j acts on eps^j).
struct ZetaCoeffs {
  std::vector<RationalMatrix> m;
};

ZetaCoeffs zeta_coefficients(const REModel &model);

// Coefficients of P(z)^{-1} by power of z.
std::vector<RationalMatrix> p_inverse_coeffs(const SmithForm &sf);

struct PBlocks {
  std::vector<RationalMatrix> p_coeffs;
  // Block k is H x s(H + gamma_s): row l holds the coefficient pattern of
  // z^l in z^{J1-g_k} P^{-1}_k(z) applied to the stacked operator.
  std::vector<RationalMatrix> blocks;
  std::vector<std::optional<int>> delta;        // J1 - g_k when g_k <= J1
  std::vector<std::optional<int>> gamma_excess; // g_k - J1 when g_k > J1
  int gamma_s = 0;
  int column_blocks = 0; // H + gamma_s
};

PBlocks frak_p_blocks(const SmithForm &sf, int J1, int H);

struct Selectors {
  RationalMatrix U;      // sH x sH, component-major -> lag-major via U^T
  RationalMatrix R;      // P_dim x sH, lag-major non-trivial MDS components
  RationalMatrix S;      // P_dim x sH, block-diagonal pseudo-inverse rows
  RationalMatrix omega0; // zero-lag coefficient of Phi(z) Q(z)
  std::size_t p_dim = 0;
};

Selectors build_selectors(const REModel &model, const SmithForm &sf);

enum class Flavor { plain, predetermined };

struct ConstraintSystem {
  RationalMatrix C;
  RationalMatrix D;
  std::size_t rank_w = 0;
  std::vector<RationalVector> kernel;
  Flavor flavor = Flavor::plain;
  std::size_t effective_unknowns = 0;
  // Set when the constant-g simplified construction was cross-checked.
  bool simplified_checked = false;
};

// Rows i*s .. of the result hold m_i, for i < nblocks (zero past the list).
RationalMatrix m_stack(const ZetaCoeffs &zc, int nblocks, int s, int H);
// Stack of w_0 .. w_{nblocks-1}, shape (s nblocks) x q.
RationalMatrix wold_stack(const REModel &model, int nblocks);

ConstraintSystem build_plain_system(const REModel &model, const SmithForm &sf, const ZetaCoeffs &zc,
                                    const PBlocks &pb, int J1);
ConstraintSystem build_predetermined_system(const REModel &model, const SmithForm &sf, const ZetaCoeffs &zc,
                                            const PBlocks &pb, const Selectors &sel, int J1);

struct RankBoundReport {
  std::size_t rank_w = 0;
  std::size_t upper_bound = 0;
  // stack(m_0 .. m_{H-1}) nonsingular at this parameter point.
  bool full_rank_hypothesis = false;
  std::size_t lower_bound = 0; // meaningful when full_rank_hypothesis
  std::optional<std::size_t> generic_rank; // all g_i <= J1
  bool upper_ok = true;
  bool lower_ok = true;
  bool generic_ok = true;
};

RankBoundReport check_rank_bounds(const ConstraintSystem &cs, const SmithForm &sf, const ZetaCoeffs &zc, int J1,
                                  int H);

// Everything the constraint stage produces for one model.
struct ConstraintPipeline {
  PiPolynomial pi;
  SmithForm sf;
  ZetaCoeffs zc;
  PBlocks pb;
  Selectors sel;
  ConstraintSystem plain;
  std::optional<ConstraintSystem> predetermined;
  const ConstraintSystem &applicable() const { return predetermined ? *predetermined : plain; }
};

ConstraintPipeline run_constraints(const REModel &model);
ConstraintPipeline run_constraints(const REModel &model, const SmithForm &sf);

} // namespace rexact
