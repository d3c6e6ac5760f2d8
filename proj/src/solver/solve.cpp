#include "rexact/solver.hpp"

#include <sstream>

namespace rexact {

std::string to_string(Classification c) {
  switch (c) {
  case Classification::no_causal_solution:
    return "no_causal_solution";
  case Classification::determinate:
    return "determinate";
  case Classification::indeterminate:
    return "indeterminate";
  }
  return "unknown";
}

bool slot_is_inert(const REModel &model, int j, int c) {
  for (const auto &[key, mat] : model.A) {
    if (key.second <= j) continue;
    for (std::size_t r = 0; r < mat.rows(); ++r)
      if (mat(r, static_cast<std::size_t>(c)) != 0) return false;
  }
  return true;
}

namespace {

std::vector<Poly> mat_vec(const PolyMatrix &m, const std::vector<Poly> &v) {
  std::vector<Poly> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t k = 0; k < m.cols(); ++k)
      if (!m(i, k).is_zero() && !v[k].is_zero()) out[i] += m(i, k) * v[k];
  return out;
}

std::vector<Poly> column(const PolyMatrix &m, std::size_t c) {
  std::vector<Poly> v(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) v[i] = m(i, c);
  return v;
}

struct Divided {
  std::vector<Poly> quot, rem;
};

Divided divide_all(const std::vector<Poly> &v, const Poly &d) {
  Divided out;
  for (const auto &p : v) {
    auto [q, r] = divmod(p, d);
    out.quot.push_back(std::move(q));
    out.rem.push_back(std::move(r));
  }
  return out;
}

} // namespace

SolutionReport solve_causal(const REModel &model, const SolveOptions &opt) {
  const Rational xi = opt.xi ? *opt.xi : model.growth_bound();
  PiPolynomial pi = build_pi(model);
  if (pi.J1 < 0) throw UnsupportedModel("J1 < 0: the model only involves lagged information; no causal solve");
  SmithForm sf = smith_form(pi.pi);
  ConstraintPipeline cp = run_constraints(model, sf);
  Factorization fac = factor_stable_unstable(sf, pi.J1, xi, opt.roots);
  RhsMap rhs = assemble_rhs(model, cp.pi, cp.zc);

  const int s = model.s, H = model.H, q = model.q;
  const std::size_t sH = static_cast<std::size_t>(s * H);
  SolutionReport sr;
  sr.s = s;
  sr.H = H;
  sr.q = q;
  sr.J1 = pi.J1;
  sr.flavor = cp.applicable().flavor;
  sr.constraint_free_parameters = cp.applicable().kernel.size() * static_cast<std::size_t>(q);
  sr.factorization = fac;

  std::vector<std::size_t> slot_row;
  for (int j = 0; j < H; ++j)
    for (int c = 0; c < s; ++c) {
      const bool predetermined = model.group_of(c) > j;
      if (predetermined && !slot_is_inert(model, j, c)) continue;
      sr.free_slots.emplace_back(j, c);
      if (predetermined) sr.inert_slots.emplace_back(j, c);
      slot_row.push_back(static_cast<std::size_t>(j * s + c));
    }
  const std::size_t nu = slot_row.size();

  std::vector<RationalVector> rows;
  std::vector<RationalVector> rhs_rows; // one entry per innovation column

  // Revision consistency: C h = D w on the free slots.
  {
    const ConstraintSystem &pl = cp.plain;
    RationalMatrix DW = pl.D * wold_stack(model, cp.pb.column_blocks);
    for (std::size_t i = 0; i < pl.C.rows(); ++i) {
      RationalVector row(nu);
      for (std::size_t u = 0; u < nu; ++u) row[u] = pl.C(i, slot_row[u]);
      RationalVector b(static_cast<std::size_t>(q));
      for (int c = 0; c < q; ++c) b[static_cast<std::size_t>(c)] = DW(i, static_cast<std::size_t>(c));
      rows.push_back(std::move(row));
      rhs_rows.push_back(std::move(b));
    }
  }

  // Cancellation of unstable roots and excess zeros at zero.
  auto [det_u, adj_u] = det_adjugate(fac.pi_u);
  auto [det_s, adj_s] = det_adjugate(fac.pi_s);
  const int m_s = det_s.valuation();
  const int deg_u = det_u.degree();
  sr.unstable_root_count = static_cast<std::size_t>(deg_u);

  std::vector<Divided> unit_div;
  std::vector<std::vector<Poly>> unit_y;
  for (std::size_t u = 0; u < nu; ++u) {
    unit_div.push_back(divide_all(mat_vec(adj_u, rhs.unit[slot_row[u]]), det_u));
    unit_y.push_back(mat_vec(adj_s, unit_div.back().quot));
  }
  std::vector<Divided> base_div;
  std::vector<std::vector<Poly>> base_y;
  for (int c = 0; c < q; ++c) {
    base_div.push_back(divide_all(mat_vec(adj_u, column(rhs.base, static_cast<std::size_t>(c))), det_u));
    base_y.push_back(mat_vec(adj_s, base_div.back().quot));
  }
  for (int e = 0; e < s; ++e) {
    const std::size_t ei = static_cast<std::size_t>(e);
    for (int i = 0; i < deg_u; ++i) {
      RationalVector row(nu);
      for (std::size_t u = 0; u < nu; ++u) row[u] = unit_div[u].rem[ei].coeff(i);
      RationalVector b(static_cast<std::size_t>(q));
      for (int c = 0; c < q; ++c) b[static_cast<std::size_t>(c)] = -base_div[static_cast<std::size_t>(c)].rem[ei].coeff(i);
      rows.push_back(std::move(row));
      rhs_rows.push_back(std::move(b));
    }
    for (int i = 0; i < m_s; ++i) {
      RationalVector row(nu);
      for (std::size_t u = 0; u < nu; ++u) row[u] = unit_y[u][ei].coeff(i);
      RationalVector b(static_cast<std::size_t>(q));
      for (int c = 0; c < q; ++c) b[static_cast<std::size_t>(c)] = -base_y[static_cast<std::size_t>(c)][ei].coeff(i);
      rows.push_back(std::move(row));
      rhs_rows.push_back(std::move(b));
    }
  }

  RationalMatrix G(rows.size(), nu);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t u = 0; u < nu; ++u) G(i, u) = rows[i][u];

  RankKernel rk = rank_kernel(G);
  std::vector<RationalVector> xs;
  for (int c = 0; c < q; ++c) {
    RationalVector b(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) b[i] = rhs_rows[i][static_cast<std::size_t>(c)];
    auto xp = solve_particular(G, b);
    if (!xp) {
      sr.classification = Classification::no_causal_solution;
      sr.inconsistent_column = static_cast<std::size_t>(c);
      sr.notes.push_back("constraint and cancellation equations are inconsistent for innovation column " +
                         std::to_string(c));
      break;
    }
    xs.push_back(std::move(*xp));
  }

  const std::size_t k_param = cp.applicable().kernel.size();
  if (static_cast<std::size_t>(deg_u) == k_param)
    sr.naive_root_count_verdict = "determinate";
  else if (static_cast<std::size_t>(deg_u) < k_param)
    sr.naive_root_count_verdict = "indeterminate";
  else
    sr.naive_root_count_verdict = "no_causal_solution";

  if (sr.inconsistent_column) {
    if (sr.naive_root_count_verdict != "no_causal_solution")
      sr.notes.push_back("naive root-count heuristic would have said " + sr.naive_root_count_verdict);
    return sr;
  }

  sr.kernel_dim = rk.kernel.size();
  sr.solution_dim = sr.kernel_dim * static_cast<std::size_t>(q);
  sr.classification = sr.kernel_dim == 0 ? Classification::determinate : Classification::indeterminate;
  if (sr.naive_root_count_verdict != to_string(sr.classification))
    sr.notes.push_back("naive root-count heuristic would have said " + sr.naive_root_count_verdict);

  auto embed = [&](const RationalVector &x) {
    RationalVector full(sH, Rational(0));
    for (std::size_t u = 0; u < nu; ++u) full[slot_row[u]] = x[u];
    return full;
  };
  for (const auto &k : rk.kernel) sr.kernel_basis.push_back(embed(k));
  sr.h_particular = RationalMatrix(sH, static_cast<std::size_t>(q));
  for (int c = 0; c < q; ++c) {
    RationalVector full = embed(xs[static_cast<std::size_t>(c)]);
    for (std::size_t r = 0; r < sH; ++r) sr.h_particular(r, static_cast<std::size_t>(c)) = full[r];
  }

  if (sr.kernel_dim == 0) {
    sr.kernel_point = "unique";
  } else {
    for (auto &x : xs) x = min_norm_point(x, rk.kernel);
    sr.kernel_point = "min-norm";
    if (opt.kernel_index) {
      const std::size_t idx = *opt.kernel_index;
      if (idx >= sr.solution_dim)
        throw std::out_of_range("kernel point index " + std::to_string(idx) + " out of range (solution dimension " +
                                std::to_string(sr.solution_dim) + ")");
      const auto &dir = rk.kernel[idx / static_cast<std::size_t>(q)];
      auto &x = xs[idx % static_cast<std::size_t>(q)];
      for (std::size_t u = 0; u < nu; ++u) x[u] += dir[u];
      sr.kernel_point = "min-norm + basis " + std::to_string(idx / static_cast<std::size_t>(q)) + " in column " +
                        std::to_string(idx % static_cast<std::size_t>(q));
    }
  }

  sr.revisions = RationalMatrix(sH, static_cast<std::size_t>(q));
  sr.A_theta = PolyMatrix(static_cast<std::size_t>(s), static_cast<std::size_t>(q));
  PolyMatrix Y(static_cast<std::size_t>(s), static_cast<std::size_t>(q));
  for (int c = 0; c < q; ++c) {
    const std::size_t cc = static_cast<std::size_t>(c);
    const auto &x = xs[cc];
    for (std::size_t u = 0; u < nu; ++u) sr.revisions(slot_row[u], cc) = x[u];
    for (int e = 0; e < s; ++e) {
      const std::size_t ei = static_cast<std::size_t>(e);
      Poly a = base_div[cc].quot[ei];
      Poly y = base_y[cc][ei];
      for (std::size_t u = 0; u < nu; ++u) {
        if (x[u] == 0) continue;
        a += unit_div[u].quot[ei] * x[u];
        y += unit_y[u][ei] * x[u];
      }
      sr.A_theta(ei, cc) = std::move(a);
      Y(ei, cc) = std::move(y);
    }
  }
  sr.h = sr.revisions;
  for (auto [j, c] : sr.inert_slots)
    for (int cc = 0; cc < q; ++cc) sr.h(static_cast<std::size_t>(j * s + c), static_cast<std::size_t>(cc)) = 0;

  Poly den = det_s.unshifted(m_s);
  PolyMatrix num(static_cast<std::size_t>(s), static_cast<std::size_t>(q));
  for (std::size_t e = 0; e < num.rows(); ++e)
    for (std::size_t c = 0; c < num.cols(); ++c) {
      if (!Y(e, c).is_zero() && Y(e, c).valuation() < m_s)
        throw InternalError("transfer numerator keeps a pole at z = 0 after cancellation");
      num(e, c) = Y(e, c).unshifted(m_s);
    }
  Poly common = den;
  for (const auto &p : num.data()) common = poly_gcd(common, p);
  if (common.degree() > 0) {
    den = exact_div(den, common);
    for (std::size_t e = 0; e < num.rows(); ++e)
      for (std::size_t c = 0; c < num.cols(); ++c) num(e, c) = exact_div(num(e, c), common);
  }
  const Rational d0 = den.coeff(0);
  if (d0 == 0) throw InternalError("transfer denominator vanishes at z = 0");
  den *= Rational(1 / d0);
  for (std::size_t e = 0; e < num.rows(); ++e)
    for (std::size_t c = 0; c < num.cols(); ++c) num(e, c) *= Rational(1 / d0);
  sr.transfer_num = std::move(num);
  sr.transfer_den = std::move(den);

  if (sr.flavor == Flavor::predetermined) {
    std::ostringstream os;
    os << "predetermined system: " << sr.inert_slots.size() << " inert predetermined slot(s) solved for exactly; "
       << "constraint-system free parameters " << sr.constraint_free_parameters;
    sr.notes.push_back(os.str());
  }
  return sr;
}

} // namespace rexact
