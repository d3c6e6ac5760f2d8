#include "rexact/canon.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rexact {

namespace {

using cld = std::complex<long double>;

std::vector<long double> to_long_double(const Poly &p) {
  std::vector<long double> c;
  for (const auto &x : p.coeffs()) c.push_back(static_cast<long double>(x.get_d()));
  return c;
}

cld horner(const std::vector<long double> &c, cld x) {
  cld acc(0);
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

cld polish(const std::vector<long double> &c, const std::vector<long double> &dc, cld x) {
  for (int it = 0; it < 8; ++it) {
    cld fx = horner(c, x);
    cld dfx = horner(dc, x);
    if (std::abs(dfx) == 0) break;
    cld nx = x - fx / dfx;
    if (!(std::abs(horner(c, nx)) < std::abs(fx))) break;
    x = nx;
  }
  return x;
}

// Best rational approximation of x within tol (continued fractions).
std::optional<Rational> rationalize(long double x, long double tol) {
  if (!std::isfinite(static_cast<double>(x))) return std::nullopt;
  long double a = x;
  mpz_class h0(1), h1(0), k0(0), k1(1);
  for (int it = 0; it < 64; ++it) {
    long double fl = std::floor(a);
    mpz_class ai(static_cast<double>(fl));
    mpz_class h = ai * h0 + h1, k = ai * k0 + k1;
    h1 = h0;
    h0 = h;
    k1 = k0;
    k0 = k;
    Rational r(h, k);
    r.canonicalize();
    if (std::fabs(static_cast<long double>(r.get_d()) - x) <= tol) return r;
    long double frac = a - fl;
    if (frac < 1e-30L) break;
    a = 1 / frac;
  }
  return std::nullopt;
}

enum class Side { stable, unstable };

Side locate(std::complex<double> r, const Rational &xi, const RootOptions &opt) {
  const double mod = std::abs(r);
  const double inner = 1.0 / xi.get_d();
  if (mod > 1.0 + opt.boundary_tol) return Side::stable;
  if (mod < inner - opt.boundary_tol) return Side::unstable;
  std::ostringstream os;
  os.precision(12);
  os << "root " << r.real() << (r.imag() < 0 ? " - " : " + ") << std::abs(r.imag()) << "i of modulus " << mod
     << " lies in the boundary ring [1/xi, 1] (assumption violated: no zeros of det pi(z) on the unit circle)";
  throw BoundaryRoot(os.str());
}

// Monic real polynomial with the given roots, coefficients lowest first.
std::vector<long double> from_roots(const std::vector<std::complex<double>> &roots) {
  std::vector<cld> c{cld(1)};
  for (const auto &r : roots) {
    std::vector<cld> n(c.size() + 1, cld(0));
    for (std::size_t i = 0; i < c.size(); ++i) {
      n[i + 1] += c[i];
      n[i] -= c[i] * cld(r);
    }
    c = std::move(n);
  }
  std::vector<long double> out;
  for (auto &x : c) out.push_back(x.real());
  return out;
}

std::optional<Poly> exact_factor_candidate(const Poly &p, const std::vector<std::complex<double>> &roots) {
  if (roots.empty()) return Poly(1);
  std::vector<long double> approx = from_roots(roots);
  const Poly prim = primitive_part(p);
  const long double lead = static_cast<long double>(prim.lead().get_d());

  // A rational monic factor of an integer polynomial has lead(p) * factor integral.
  {
    std::vector<Rational> c;
    bool ok = true;
    for (long double a : approx) {
      long double v = std::round(a * lead);
      if (!std::isfinite(static_cast<double>(v))) {
        ok = false;
        break;
      }
      c.push_back(Rational(mpz_class(static_cast<double>(v))));
    }
    if (ok) {
      Poly cand = primitive_part(Poly(c));
      if (cand.degree() == static_cast<int>(roots.size()) && divides(cand, p)) return cand;
    }
  }
  for (long double tol : {1e-13L, 1e-11L, 1e-9L, 1e-7L}) {
    std::vector<Rational> c;
    bool ok = true;
    for (long double a : approx) {
      auto r = rationalize(a, tol * std::max(1.0L, std::fabs(a)));
      if (!r) {
        ok = false;
        break;
      }
      c.push_back(*r);
    }
    if (!ok) continue;
    Poly cand = primitive_part(Poly(c));
    if (cand.degree() == static_cast<int>(roots.size()) && divides(cand, p)) return cand;
  }
  return std::nullopt;
}

} // namespace

std::vector<std::complex<double>> poly_roots(const Poly &p) {
  if (p.is_zero()) throw std::domain_error("roots of the zero polynomial");
  std::vector<std::complex<double>> roots;
  const int m = p.valuation();
  for (int i = 0; i < m; ++i) roots.emplace_back(0.0, 0.0);
  Poly f = p.unshifted(m).monic();
  const int n = f.degree();
  if (n <= 0) return roots;
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -f.coeff(i).get_d();
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
  if (es.info() != Eigen::Success) throw std::runtime_error("companion eigenvalue computation failed");
  const auto c = to_long_double(f);
  const auto dc = to_long_double(f.derivative());
  for (int i = 0; i < n; ++i) {
    std::complex<double> r = es.eigenvalues()(i);
    cld pr = polish(c, dc, cld(r.real(), r.imag()));
    roots.emplace_back(static_cast<double>(pr.real()), static_cast<double>(pr.imag()));
  }
  std::sort(roots.begin(), roots.end(), [](auto a, auto b) {
    if (std::abs(a) != std::abs(b)) return std::abs(a) < std::abs(b);
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return roots;
}

std::pair<Poly, Poly> split_by_modulus(const Poly &p, const Rational &xi, const RootOptions &opt) {
  if (p.is_zero() || p.coeff(0) == 0) throw std::domain_error("split_by_modulus requires p(0) != 0");
  std::vector<std::complex<double>> st, un;
  for (auto r : poly_roots(p)) (locate(r, xi, opt) == Side::stable ? st : un).push_back(r);
  if (un.empty()) return {p, Poly(1)};
  if (st.empty()) {
    Poly u = primitive_part(p);
    return {exact_div(p, u), u};
  }
  const bool use_unstable = un.size() <= st.size();
  auto cand = exact_factor_candidate(p, use_unstable ? un : st);
  if (!cand) {
    std::ostringstream os;
    os << "cannot split " << p.str() << " into rational stable/unstable factors ("
       << un.size() << " unstable, " << st.size()
       << " stable roots); an irreducible factor has roots on both sides of the circle";
    throw FactorSplitError(os.str());
  }
  Poly unstable = primitive_part(use_unstable ? *cand : exact_div(p, *cand));
  Poly stable = exact_div(p, unstable);
  for (auto r : poly_roots(unstable))
    if (locate(r, xi, opt) != Side::unstable) throw FactorSplitError("unstable factor check failed for " + p.str());
  for (auto r : poly_roots(stable))
    if (locate(r, xi, opt) != Side::stable) throw FactorSplitError("stable factor check failed for " + p.str());
  return {stable, unstable};
}

RootClassification classify_roots(const Poly &p, const Rational &xi, const RootOptions &opt) {
  if (p.is_zero()) throw std::domain_error("classify_roots of the zero polynomial");
  if (xi < 1) throw std::invalid_argument("xi must be >= 1");
  RootClassification rc;
  rc.xi = xi;
  rc.zero_multiplicity = p.valuation();
  Poly f = p.unshifted(rc.zero_multiplicity);
  for (auto r : poly_roots(f)) (locate(r, xi, opt) == Side::stable ? rc.stable_roots : rc.unstable_roots).push_back(r);
  try {
    auto [s, u] = split_by_modulus(f, xi, opt);
    rc.stable_factor = s;
    rc.unstable_factor = u;
  } catch (const FactorSplitError &) {
  }
  return rc;
}

} // namespace rexact
