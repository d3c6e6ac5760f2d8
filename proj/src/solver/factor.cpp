#include "rexact/solver.hpp"

#include <algorithm>

namespace rexact {

Factorization factor_stable_unstable(const SmithForm &sf, int J1, const Rational &xi, const RootOptions &opt) {
  if (J1 < 0) throw UnsupportedModel("J1 < 0: stable/unstable split of zeros at zero is undefined");
  Factorization f;
  std::vector<Poly> du, ds;
  for (std::size_t i = 0; i < sf.size(); ++i) {
    const int g = sf.g[i];
    f.alpha_u.push_back(std::max(g - J1, 0));
    f.alpha_s.push_back(std::min(g, J1));
    auto [st, un] = split_by_modulus(sf.phi[i], xi, opt);
    f.phi_s.push_back(st);
    f.phi_u.push_back(un);
    du.push_back(un.shifted(f.alpha_u.back()));
    ds.push_back(st.shifted(f.alpha_s.back()));
  }
  f.pi_u = sf.P * diagonal(du);
  f.pi_s = diagonal(ds) * sf.Q;
  if (f.pi_u * f.pi_s != sf.reconstruct()) throw InternalError("pi_u * pi_s does not reproduce pi");
  return f;
}

PolyMatrix RhsMap::apply(const RationalMatrix &h_stack) const {
  PolyMatrix n = base;
  for (std::size_t r = 0; r < unit.size(); ++r)
    for (std::size_t c = 0; c < n.cols(); ++c) {
      const Rational &x = h_stack(r, c);
      if (x == 0) continue;
      for (std::size_t e = 0; e < n.rows(); ++e) n(e, c) += unit[r][e] * x;
    }
  return n;
}

RhsMap assemble_rhs(const REModel &model, const PiPolynomial &pi, const ZetaCoeffs &zc) {
  if (pi.J1 < 0) throw UnsupportedModel("J1 < 0: N(z; h) is not a polynomial");
  const int s = model.s, H = model.H, q = model.q;
  RhsMap map;
  map.base = PolyMatrix(static_cast<std::size_t>(s), static_cast<std::size_t>(q));
  for (int j = 0; j < static_cast<int>(model.wold.size()); ++j)
    for (int e = 0; e < s; ++e)
      for (int c = 0; c < q; ++c) {
        const Rational &v = model.wold[static_cast<std::size_t>(j)](static_cast<std::size_t>(e), static_cast<std::size_t>(c));
        if (v != 0) map.base(static_cast<std::size_t>(e), static_cast<std::size_t>(c)) -= Poly::monomial(v, j + pi.J1);
      }
  for (int j = 0; j < H; ++j)
    for (int i = 0; i < s; ++i) {
      const std::size_t r = static_cast<std::size_t>(j * s + i);
      std::vector<Poly> v(static_cast<std::size_t>(s));
      for (int e = 0; e < s; ++e) {
        Poly p = pi.pi(static_cast<std::size_t>(e), static_cast<std::size_t>(i)).shifted(j);
        for (std::size_t l = 0; l < zc.m.size(); ++l) {
          const Rational &x = zc.m[l](static_cast<std::size_t>(e), r);
          if (x != 0) p += Poly::monomial(x, pi.J1 + static_cast<int>(l));
        }
        v[static_cast<std::size_t>(e)] = std::move(p);
      }
      map.unit.push_back(std::move(v));
    }
  return map;
}

} // namespace rexact
