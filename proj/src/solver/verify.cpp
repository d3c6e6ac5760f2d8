#include "rexact/solver.hpp"

#include <sstream>

namespace rexact {

std::vector<RationalMatrix> expand_transfer(const PolyMatrix &num, const Poly &den, int n) {
  const Rational d0 = den.coeff(0);
  if (d0 == 0) throw std::invalid_argument("transfer denominator vanishes at z = 0");
  std::vector<RationalMatrix> k;
  for (int i = 0; i <= n; ++i) {
    RationalMatrix ki = coefficient(num, i);
    for (int l = 1; l <= i && l <= den.degree(); ++l) {
      const Rational &dl = den.coeff(l);
      if (dl != 0) ki -= k[static_cast<std::size_t>(i - l)].scaled(dl);
    }
    k.push_back(ki.scaled(Rational(1 / d0)));
  }
  return k;
}

VerifyReport verify_solution(const REModel &model, const SolutionReport &sr, int max_lag) {
  VerifyReport v;
  v.max_lag = max_lag;
  v.wold_horizon = model.wold.empty() ? 0 : static_cast<int>(model.wold.size()) - 1;
  if (sr.classification == Classification::no_causal_solution) {
    v.messages.push_back("no causal solution to verify");
    return v;
  }
  if (max_lag < model.H) throw std::invalid_argument("max_lag must be at least H");
  const int s = model.s, q = model.q;
  auto k = expand_transfer(sr.transfer_num, sr.transfer_den, max_lag + model.H);

  v.residual_ok = true;
  for (int l = 0; l <= max_lag && v.residual_ok; ++l) {
    RationalMatrix res = model.w(l);
    for (const auto &[key, a] : model.A) {
      const auto [kk, hh] = key;
      if (l < kk) continue;
      res += a * k[static_cast<std::size_t>(l - kk + hh)];
    }
    for (int e = 0; e < s && v.residual_ok; ++e)
      for (int c = 0; c < q; ++c) {
        const Rational &x = res(static_cast<std::size_t>(e), static_cast<std::size_t>(c));
        if (x != 0) {
          v.residual_ok = false;
          v.first_bad_lag = l;
          v.first_bad_entry = std::make_pair(e, c);
          v.first_bad_value = x;
          std::ostringstream os;
          os << "residual at lag " << l << " entry (" << e << "," << c << ") = " << to_string(x);
          v.messages.push_back(os.str());
          break;
        }
      }
  }
  if (max_lag < v.wold_horizon)
    v.messages.push_back("max_lag is below the exogenous MA order; residuals beyond it were not checked");

  for (int j = 0; j < model.H; ++j)
    for (int c = 0; c < s; ++c) {
      const std::size_t r = static_cast<std::size_t>(j * s + c);
      const bool predetermined = model.group_of(c) > j;
      const bool inert = predetermined && slot_is_inert(model, j, c);
      if (inert) {
        ++v.predetermined_inert;
        continue;
      }
      for (int cc = 0; cc < q; ++cc) {
        const Rational &kx = k[static_cast<std::size_t>(j)](static_cast<std::size_t>(c), static_cast<std::size_t>(cc));
        if (kx != sr.h(r, static_cast<std::size_t>(cc))) v.first_coefficients_ok = false;
        if (predetermined && kx != 0) v.predetermined_ok = false;
      }
      if (predetermined) ++v.predetermined_checked;
    }
  if (!v.predetermined_ok) v.messages.push_back("a predetermined variable responds to a current innovation");
  if (!v.first_coefficients_ok) v.messages.push_back("leading transfer coefficients differ from h");

  if (sr.transfer_den.degree() > 0)
    for (auto r : poly_roots(sr.transfer_den))
      if (std::abs(r) <= 1.0) v.denominator_stable = false;
  if (!v.denominator_stable) v.messages.push_back("transfer denominator has a root inside the unit disc");

  v.ok = v.residual_ok && v.predetermined_ok && v.first_coefficients_ok && v.denominator_stable;
  return v;
}

} // namespace rexact
