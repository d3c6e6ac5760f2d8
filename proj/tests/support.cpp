#include "support.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <complex>

namespace rexact::testing {

namespace {

int uniform(Rng &rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
bool coin(Rng &rng, double p) { return std::bernoulli_distribution(p)(rng); }

const std::vector<Rational> &root_pool() {
  static const std::vector<Rational> pool = {Rational(2),    Rational(-2),   Rational(3),    Rational(-3),
                                             Rational(1, 2), Rational(-1, 2), Rational(1, 3), Rational(-2, 3),
                                             Rational(3, 2), Rational(-3, 2), Rational(5, 2), Rational(2, 5)};
  return pool;
}

} // namespace

Rational random_rational(Rng &rng, int max_num, int max_den) {
  Rational r(uniform(rng, -max_num, max_num), uniform(rng, 1, max_den));
  r.canonicalize();
  return r;
}

RationalMatrix random_matrix(Rng &rng, std::size_t rows, std::size_t cols, double density) {
  RationalMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (coin(rng, density)) m(i, j) = random_rational(rng);
  return m;
}

Poly random_poly(Rng &rng, int max_degree, int max_coeff) {
  std::vector<Rational> c(static_cast<std::size_t>(uniform(rng, 0, max_degree) + 1));
  for (auto &x : c) x = uniform(rng, -max_coeff, max_coeff);
  return Poly(c);
}

PolyMatrix random_poly_matrix(Rng &rng, std::size_t s, int max_degree, double density) {
  PolyMatrix m(s, s);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j)
      if (coin(rng, density)) m(i, j) = random_poly(rng, max_degree);
  return m;
}

PolyMatrix random_unimodular(Rng &rng, std::size_t s, int ops, int max_degree) {
  PolyMatrix u = PolyMatrix::identity(s);
  if (s < 2) {
    u(0, 0) = Poly(Rational(uniform(rng, 1, 3)));
    return u;
  }
  for (int o = 0; o < ops; ++o) {
    const std::size_t i = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(s) - 1));
    std::size_t j = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(s) - 2));
    if (j >= i) ++j;
    const Poly p = random_poly(rng, max_degree, 2);
    for (std::size_t c = 0; c < s; ++c) u(i, c) += p * u(j, c);
    if (coin(rng, 0.3))
      for (std::size_t c = 0; c < s; ++c) std::swap(u(i, c), u(j, c));
  }
  return u;
}

void randomize_exogenous(Rng &rng, REModel &m, const CorpusOptions &opt) {
  m.q = uniform(rng, 1, m.s);
  m.wold.clear();
  const int len = uniform(rng, 1, opt.max_wold);
  for (int j = 0; j < len; ++j) m.wold.push_back(random_matrix(rng, static_cast<std::size_t>(m.s), static_cast<std::size_t>(m.q), 0.7));
  m.wold.back()(0, 0) = random_rational(rng) + 7;
  m.gamma.assign(static_cast<std::size_t>(m.H) + 1, 0);
  if (opt.predetermined && m.H > 0) {
    for (int c = 0; c < m.s; ++c) ++m.gamma[static_cast<std::size_t>(uniform(rng, 0, m.H))];
  } else {
    m.gamma[0] = m.s;
  }
}

REModel model_from_pi(Rng &rng, const PolyMatrix &pi, int K, int H, int J1) {
  const std::size_t s = pi.rows();
  REModel m;
  m.s = static_cast<int>(s);
  for (int i = -K; i <= H; ++i) {
    const RationalMatrix star = coefficient(pi, J1 - i);
    const int k_lo = std::max(0, -i), k_hi = std::min(K, H - i);
    RationalMatrix rest = star;
    for (int k = k_lo; k <= k_hi; ++k) {
      RationalMatrix part = k == k_hi ? rest : (coin(rng, 0.5) ? random_matrix(rng, s, s, 0.6) : RationalMatrix(s, s));
      rest -= part;
      if (!part.is_zero()) m.A[{k, k + i}] = part;
    }
  }
  m.K = 0;
  m.H = 0;
  for (const auto &[key, a] : m.A) {
    m.K = std::max(m.K, key.first);
    m.H = std::max(m.H, key.second);
  }
  return m;
}

REModel generic_model(Rng &rng, const CorpusOptions &opt) {
  for (;;) {
    REModel m;
    m.s = uniform(rng, 1, opt.max_s);
    m.K = uniform(rng, 0, opt.max_K);
    m.H = uniform(rng, 1, opt.max_H);
    const std::size_t s = static_cast<std::size_t>(m.s);
    for (int k = 0; k <= m.K; ++k)
      for (int h = 0; h <= m.H; ++h)
        if (coin(rng, 0.6)) m.A[{k, h}] = random_matrix(rng, s, s, 0.7);
    RationalMatrix lead = random_matrix(rng, s, s);
    if (s > 1 && coin(rng, 0.35)) {
      const std::size_t r = static_cast<std::size_t>(uniform(rng, 1, m.s - 1));
      lead = random_matrix(rng, s, r) * random_matrix(rng, r, s);
    }
    m.A[{0, m.H}] = lead;
    m.A[{m.K, uniform(rng, 0, m.H)}] = random_matrix(rng, s, s);
    for (auto it = m.A.begin(); it != m.A.end();) it = it->second.is_zero() ? m.A.erase(it) : std::next(it);
    randomize_exogenous(rng, m, opt);
    try {
      REModel norm = parse_model(serialize_model(m));
      if (build_pi(norm).J1 >= 0) return norm;
    } catch (const ModelError &) {
    }
  }
}

REModel sandwich_model(Rng &rng, const CorpusOptions &opt) {
  for (;;) {
    const int s = uniform(rng, 1, opt.max_s);
    const int K = uniform(rng, 0, opt.max_K), H = uniform(rng, 1, opt.max_H);
    std::vector<Poly> diag;
    for (int i = 0; i < s; ++i) {
      Poly d = Poly::monomial(Rational(1), uniform(rng, 0, 3) == 0 ? uniform(rng, 1, 2) : 0);
      const int nroots = uniform(rng, 0, 2);
      for (int r = 0; r < nroots; ++r) {
        const auto &pool = root_pool();
        const Rational root = pool[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(pool.size()) - 1))];
        d = d * Poly(std::vector<Rational>{-root, Rational(1)});
      }
      diag.push_back(d * Rational(uniform(rng, 1, 3)));
    }
    PolyMatrix pi = random_unimodular(rng, static_cast<std::size_t>(s), s, 1) * diagonal(diag) *
                    random_unimodular(rng, static_cast<std::size_t>(s), s, 1);
    const int d = degree(pi);
    if (d > H + K) continue;
    const int J1 = uniform(rng, std::max(d - K, 0), H);
    REModel m = model_from_pi(rng, pi, K, H, J1);
    if (m.H == 0) continue;
    randomize_exogenous(rng, m, opt);
    try {
      REModel norm = parse_model(serialize_model(m));
      if (build_pi(norm).J1 >= 0) return norm;
    } catch (const ModelError &) {
    }
  }
}

std::vector<RationalMatrix> zeta_oracle(const REModel &m) {
  const std::size_t s = static_cast<std::size_t>(m.s), sH = static_cast<std::size_t>(m.s * m.H);
  std::vector<RationalMatrix> out(static_cast<std::size_t>(m.K + m.H), RationalMatrix(s, sH));
  for (const auto &[key, a] : m.A) {
    const auto [k, h] = key;
    for (int j = 0; j < m.H; ++j) {
      if (h > j) continue;
      const std::size_t lag = static_cast<std::size_t>(k + j - h);
      for (std::size_t r = 0; r < s; ++r)
        for (std::size_t c = 0; c < s; ++c) out[lag](r, static_cast<std::size_t>(j) * s + c) -= a(r, c);
    }
  }
  return out;
}

OracleSystem constraint_oracle(const REModel &m, const SmithForm &sf, int J1) {
  const std::size_t s = static_cast<std::size_t>(m.s), H = static_cast<std::size_t>(m.H);
  auto [detP, adjP] = det_adjugate(sf.P);
  if (detP.degree() != 0) throw std::logic_error("P is not unimodular");
  const Rational inv = 1 / detP.coeff(0);
  std::vector<RationalMatrix> pinv = coefficients(adjP);
  for (auto &c : pinv) c = c.scaled(inv);
  const auto zeta = zeta_oracle(m);

  OracleSystem o{RationalMatrix(s * H, s * H), RationalMatrix(s * H, static_cast<std::size_t>(m.q))};
  for (std::size_t k = 0; k < s; ++k)
    for (int l = 0; l < m.H; ++l) {
      const std::size_t row = k * H + static_cast<std::size_t>(l);
      for (std::size_t n = 0; n < pinv.size(); ++n) {
        // Innovations of zeta_{t-J1} / u_{t-J1} at lag i land at lag n + J1 + i - g_k.
        const int i = l - static_cast<int>(n) - J1 + sf.g[k];
        if (i < 0) continue;
        RationalMatrix prow = pinv[n].block(k, 0, 1, s);
        if (static_cast<std::size_t>(i) < zeta.size()) {
          RationalMatrix c = prow * zeta[static_cast<std::size_t>(i)];
          for (std::size_t u = 0; u < s * H; ++u) o.C(row, u) += c(0, u);
        }
        RationalMatrix w = prow * m.w(i);
        for (std::size_t c = 0; c < o.Dw.cols(); ++c) o.Dw(row, c) += w(0, c);
      }
    }
  return o;
}

bool same_affine_solution_set(const RationalMatrix &A, const RationalMatrix &a, const RationalMatrix &B,
                              const RationalMatrix &b) {
  RationalMatrix left = hstack({A, a}, A.rows());
  RationalMatrix right = hstack({B, b}, B.rows());
  const std::size_t rl = rank(left), rr = rank(right);
  return rl == rr && rank(vstack({left, right}, left.cols())) == rl;
}

BKCase random_bk_case(Rng &rng, int s, int q, int n_unstable) {
  static const std::vector<Rational> unstable = {Rational(2), Rational(-2), Rational(3, 2), Rational(-5, 2),
                                                 Rational(3), Rational(4, 3)};
  static const std::vector<Rational> stable = {Rational(1, 2), Rational(-1, 3), Rational(2, 5), Rational(-3, 4),
                                               Rational(1, 4), Rational(3, 5)};
  const std::size_t n = static_cast<std::size_t>(s);
  for (;;) {
    std::vector<Rational> lam;
    std::vector<Rational> u = unstable, st = stable;
    std::shuffle(u.begin(), u.end(), rng);
    std::shuffle(st.begin(), st.end(), rng);
    for (int i = 0; i < n_unstable; ++i) lam.push_back(u[static_cast<std::size_t>(i)]);
    for (int i = n_unstable; i < s; ++i) lam.push_back(st[static_cast<std::size_t>(i - n_unstable)]);
    RationalMatrix V(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) V(i, j) = uniform(rng, -3, 3);
    if (determinant(V) == 0) continue;
    RationalMatrix T = inverse(V);
    RationalMatrix Tus(static_cast<std::size_t>(n_unstable), static_cast<std::size_t>(n_unstable));
    for (int i = 0; i < n_unstable; ++i)
      for (int j = 0; j < n_unstable; ++j) Tus(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = T(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    if (n_unstable > 0 && determinant(Tus) == 0) continue;
    RationalMatrix L(n, n);
    for (std::size_t i = 0; i < n; ++i) L(i, i) = lam[i];
    BKCase c;
    c.B = V * L * T;
    c.C = random_matrix(rng, n, static_cast<std::size_t>(q));
    c.C(0, 0) += 5;
    c.s0 = n_unstable;
    REModel &m = c.model;
    m.s = s;
    m.K = 0;
    m.H = 1;
    m.q = q;
    m.gamma = {n_unstable, s - n_unstable};
    m.A[{0, 0}] = -c.B;
    m.A[{0, 1}] = RationalMatrix::identity(n);
    m.wold = {-c.C};
    c.model = parse_model(serialize_model(m));
    return c;
  }
}

std::vector<std::vector<double>> bk_oracle_responses(const BKCase &c, int lags) {
  const Eigen::Index n = static_cast<Eigen::Index>(c.B.rows()), q = static_cast<Eigen::Index>(c.C.cols());
  Eigen::MatrixXd B(n, n), C(n, q);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) B(i, j) = c.B(static_cast<std::size_t>(i), static_cast<std::size_t>(j)).get_d();
    for (Eigen::Index j = 0; j < q; ++j) C(i, j) = c.C(static_cast<std::size_t>(i), static_cast<std::size_t>(j)).get_d();
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXd> es(B);
  Eigen::MatrixXcd T = es.eigenvectors().inverse();
  std::vector<Eigen::Index> urows;
  for (Eigen::Index i = 0; i < n; ++i)
    if (std::abs(es.eigenvalues()(i)) > 1.0) urows.push_back(i);
  const Eigen::Index nu = static_cast<Eigen::Index>(urows.size());
  Eigen::MatrixXcd Tu(nu, n);
  Eigen::VectorXcd inv_lam(nu);
  for (Eigen::Index r = 0; r < nu; ++r) {
    Tu.row(r) = T.row(urows[static_cast<std::size_t>(r)]);
    inv_lam(r) = 1.0 / es.eigenvalues()(urows[static_cast<std::size_t>(r)]);
  }
  Eigen::MatrixXd k0 = Eigen::MatrixXd::Zero(n, q);
  if (nu > 0) {
    Eigen::MatrixXcd Kc = -Tu.leftCols(c.s0).inverse() * inv_lam.asDiagonal() * Tu * C.cast<std::complex<double>>();
    k0.topRows(c.s0) = Kc.real();
  }
  // From lag 1 on the response lies in the stable eigenspace; propagating only
  // those coordinates avoids amplifying rounding along unstable directions.
  const Eigen::MatrixXcd k1 = (B * k0 + C).cast<std::complex<double>>();
  Eigen::MatrixXcd coords = T * k1;
  for (Eigen::Index r : urows) coords.row(r).setZero();
  std::vector<std::vector<double>> out;
  for (int l = 0; l < lags; ++l) {
    Eigen::MatrixXd k = k0;
    if (l >= 1) {
      k = (es.eigenvectors() * coords).real();
      coords = es.eigenvalues().asDiagonal() * coords;
    }
    std::vector<double> flat;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < q; ++j) flat.push_back(k(i, j));
    out.push_back(std::move(flat));
  }
  return out;
}

} // namespace rexact::testing
