#include "rexact/constraints.hpp"

#include <algorithm>

namespace rexact {

ZetaCoeffs zeta_coefficients(const REModel &model) {
  ZetaCoeffs zc;
  const int s = model.s, H = model.H, K = model.K;
  if (H == 0) return zc;
  for (int i = 0; i < H + K; ++i) {
    RationalMatrix mi(s, s * H);
    for (int j = 0; j < H; ++j) {
      RationalMatrix blk(s, s);
      for (int k = std::max(0, i - j); k <= std::min(K, i); ++k) {
        auto it = model.A.find({k, k + j - i});
        if (it != model.A.end()) blk -= it->second;
      }
      mi.set_block(0, static_cast<std::size_t>(j * s), blk);
    }
    zc.m.push_back(std::move(mi));
  }
  return zc;
}

std::vector<RationalMatrix> p_inverse_coeffs(const SmithForm &sf) { return coefficients(sf.P_inv); }

PBlocks frak_p_blocks(const SmithForm &sf, int J1, int H) {
  PBlocks pb;
  pb.p_coeffs = p_inverse_coeffs(sf);
  const int s = static_cast<int>(sf.size());
  const int g_max = sf.g.empty() ? 0 : *std::max_element(sf.g.begin(), sf.g.end());
  pb.gamma_s = std::max(g_max - J1, 0);
  pb.column_blocks = H + pb.gamma_s;
  for (int k = 0; k < s; ++k) {
    const int gk = sf.g[static_cast<std::size_t>(k)];
    if (gk <= J1) {
      pb.delta.push_back(J1 - gk);
      pb.gamma_excess.push_back(std::nullopt);
    } else {
      pb.delta.push_back(std::nullopt);
      pb.gamma_excess.push_back(gk - J1);
    }
    RationalMatrix blk(static_cast<std::size_t>(H), static_cast<std::size_t>(s * pb.column_blocks));
    for (int l = 0; l < H; ++l) {
      const int n = l + gk - J1;
      for (int c = 0; c <= n; ++c) {
        const int idx = n - c;
        if (idx >= static_cast<int>(pb.p_coeffs.size())) continue;
        const RationalMatrix &pc = pb.p_coeffs[static_cast<std::size_t>(idx)];
        for (int col = 0; col < s; ++col)
          blk(static_cast<std::size_t>(l), static_cast<std::size_t>(c * s + col)) = pc(static_cast<std::size_t>(k), static_cast<std::size_t>(col));
      }
    }
    pb.blocks.push_back(std::move(blk));
  }
  return pb;
}

Selectors build_selectors(const REModel &model, const SmithForm &sf) {
  const std::size_t s = static_cast<std::size_t>(model.s), H = static_cast<std::size_t>(model.H);
  Selectors sel;
  sel.omega0 = sf.omega0();
  if (determinant(sel.omega0) == 0) throw InternalError("omega0 is singular although Phi(0) and Q(0) are invertible");

  sel.U = RationalMatrix(s * H, s * H);
  for (std::size_t k = 0; k < s; ++k)
    for (std::size_t l = 0; l < H; ++l) sel.U(k * H + l, l * s + k) = 1;

  for (std::size_t j = 0; j < H; ++j) sel.p_dim += static_cast<std::size_t>(model.free_components(static_cast<int>(j)));
  sel.R = RationalMatrix(sel.p_dim, s * H);
  sel.S = RationalMatrix(sel.p_dim, s * H);
  std::size_t row = 0;
  for (std::size_t j = 0; j < H; ++j) {
    const std::size_t nj = static_cast<std::size_t>(model.free_components(static_cast<int>(j)));
    for (std::size_t c = 0; c < nj; ++c) sel.R(row + c, j * s + c) = 1;
    if (nj > 0) sel.S.set_block(row, j * s, pseudo_inverse_columns(sel.omega0, nj));
    row += nj;
  }
  return sel;
}

RationalMatrix m_stack(const ZetaCoeffs &zc, int nblocks, int s, int H) {
  RationalMatrix out(static_cast<std::size_t>(s * nblocks), static_cast<std::size_t>(s * H));
  for (int i = 0; i < nblocks && i < static_cast<int>(zc.m.size()); ++i)
    out.set_block(static_cast<std::size_t>(i * s), 0, zc.m[static_cast<std::size_t>(i)]);
  return out;
}

RationalMatrix wold_stack(const REModel &model, int nblocks) {
  RationalMatrix out(static_cast<std::size_t>(model.s * nblocks), static_cast<std::size_t>(model.q));
  for (int i = 0; i < nblocks; ++i) out.set_block(static_cast<std::size_t>(i * model.s), 0, model.w(i));
  return out;
}

namespace {

RationalMatrix stacked_blocks(const PBlocks &pb, int s, int H) {
  return vstack(pb.blocks, static_cast<std::size_t>(s * pb.column_blocks)).block(
      0, 0, static_cast<std::size_t>(s * H), static_cast<std::size_t>(s * pb.column_blocks));
}

// Lag-major Toeplitz form valid when every g_k equals one value <= J1:
// row block l holds P^{-1} coefficients l-delta, ..., 0.
std::optional<RationalMatrix> constant_g_toeplitz(const SmithForm &sf, const PBlocks &pb, int J1, int s, int H) {
  if (sf.g.empty()) return std::nullopt;
  const int g0 = sf.g.front();
  for (int g : sf.g)
    if (g != g0) return std::nullopt;
  if (g0 > J1) return std::nullopt;
  const int delta = J1 - g0;
  RationalMatrix T(static_cast<std::size_t>(s * H), static_cast<std::size_t>(s * pb.column_blocks));
  for (int l = delta; l < H; ++l)
    for (int c = 0; c <= l - delta; ++c) {
      const int idx = l - delta - c;
      if (idx < static_cast<int>(pb.p_coeffs.size()))
        T.set_block(static_cast<std::size_t>(l * s), static_cast<std::size_t>(c * s), pb.p_coeffs[static_cast<std::size_t>(idx)]);
    }
  return T;
}

void finish(ConstraintSystem &cs) {
  RankKernel rk = rank_kernel(cs.C);
  cs.rank_w = rk.rank;
  cs.kernel = std::move(rk.kernel);
  cs.effective_unknowns = cs.C.cols();
}

} // namespace

ConstraintSystem build_plain_system(const REModel &model, const SmithForm &sf, const ZetaCoeffs &zc,
                                    const PBlocks &pb, int J1) {
  const int s = model.s, H = model.H;
  ConstraintSystem cs;
  cs.flavor = Flavor::plain;
  RationalMatrix E = stacked_blocks(pb, s, H);
  cs.C = E * m_stack(zc, pb.column_blocks, s, H);
  cs.D = E;
  if (H > 0) {
    if (auto T = constant_g_toeplitz(sf, pb, J1, s, H)) {
      RationalMatrix Ut = build_selectors(model, sf).U.transpose();
      if (Ut * E != *T) throw InternalError("plain constraints: general and constant-g constructions disagree");
      cs.simplified_checked = true;
    }
  }
  finish(cs);
  return cs;
}

ConstraintSystem build_predetermined_system(const REModel &model, const SmithForm &sf, const ZetaCoeffs &zc,
                                            const PBlocks &pb, const Selectors &sel, int J1) {
  const int s = model.s, H = model.H;
  ConstraintSystem cs;
  cs.flavor = Flavor::predetermined;
  RationalMatrix E = stacked_blocks(pb, s, H);
  RationalMatrix M = m_stack(zc, pb.column_blocks, s, H);
  RationalMatrix SUt = sel.S * sel.U.transpose();
  RationalMatrix Rt = sel.R.transpose();
  cs.D = SUt * E;
  cs.C = cs.D * M * Rt;

  if (H > 0) {
    if (auto T = constant_g_toeplitz(sf, pb, J1, s, H)) {
      // S_2 form: only lags >= delta carry constraints.
      const int delta = J1 - sf.g.front();
      std::size_t skip = 0, keep = 0;
      for (int l = 0; l < H; ++l) (l < delta ? skip : keep) += static_cast<std::size_t>(model.free_components(l));
      RationalMatrix S2 = sel.S.block(skip, static_cast<std::size_t>(delta * s), keep,
                                      static_cast<std::size_t>((H - delta) * s));
      RationalMatrix T2 = T->block(static_cast<std::size_t>(delta * s), 0, static_cast<std::size_t>((H - delta) * s), T->cols());
      RationalMatrix C2 = S2 * T2 * M * Rt;
      if (!cs.C.block(0, 0, skip, cs.C.cols()).is_zero() || cs.C.block(skip, 0, keep, cs.C.cols()) != C2)
        throw InternalError("predetermined constraints: general and S_2 constructions disagree");
      cs.simplified_checked = true;
    }
  }
  finish(cs);
  return cs;
}

RankBoundReport check_rank_bounds(const ConstraintSystem &cs, const SmithForm &sf, const ZetaCoeffs &zc, int J1,
                                  int H) {
  RankBoundReport r;
  r.rank_w = cs.rank_w;
  const int s = static_cast<int>(sf.size());
  bool all_le = true;
  std::size_t upper = 0, lower = 0, gsum = 0;
  for (int gk : sf.g) {
    upper += static_cast<std::size_t>(std::clamp(H - J1 + gk, 0, H));
    if (gk <= J1) {
      lower += static_cast<std::size_t>(std::clamp(H - J1 + gk, 0, H));
    } else {
      all_le = false;
      lower += static_cast<std::size_t>(std::max(H - gk + J1, 0));
    }
    gsum += static_cast<std::size_t>(gk);
  }
  r.upper_bound = upper;
  r.lower_bound = lower;
  if (H > 0) {
    RationalMatrix mh = m_stack(zc, H, s, H);
    r.full_rank_hypothesis = rank(mh) == static_cast<std::size_t>(s * H);
  } else {
    r.full_rank_hypothesis = true;
  }
  if (all_le && J1 >= 0) r.generic_rank = static_cast<std::size_t>((H - J1) * s) + gsum;
  r.upper_ok = r.rank_w <= r.upper_bound;
  r.lower_ok = !r.full_rank_hypothesis || r.rank_w >= r.lower_bound;
  r.generic_ok = !r.generic_rank || !r.full_rank_hypothesis || r.rank_w == *r.generic_rank;
  return r;
}

ConstraintPipeline run_constraints(const REModel &model) {
  PiPolynomial pi = build_pi(model);
  SmithForm sf = smith_form(pi.pi);
  ConstraintPipeline p = run_constraints(model, sf);
  return p;
}

ConstraintPipeline run_constraints(const REModel &model, const SmithForm &sf) {
  ConstraintPipeline p;
  p.pi = build_pi(model);
  p.sf = sf;
  p.zc = zeta_coefficients(model);
  p.pb = frak_p_blocks(sf, p.pi.J1, model.H);
  p.sel = build_selectors(model, sf);
  p.plain = build_plain_system(model, sf, p.zc, p.pb, p.pi.J1);
  if (model.has_predetermined()) p.predetermined = build_predetermined_system(model, sf, p.zc, p.pb, p.sel, p.pi.J1);
  return p;
}

} // namespace rexact
