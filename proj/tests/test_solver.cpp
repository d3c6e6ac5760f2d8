#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "support.hpp"

#include <cmath>

using namespace rexact;
using namespace rexact::testing;

namespace {

REModel sims() { return load_model(std::string(REXACT_MODELS_DIR) + "/sims.json"); }

// y_t = a E_t y_{t+1} + u_t, u_t = eps_t + rho eps_{t-1}; gamma = (1,0) or (0,1).
REModel scalar(const std::string &a, const std::string &rho, bool predetermined = false) {
  return parse_model_text(std::string(R"({"s":1,"K":0,"H":1,"q":1,"gamma":)") + (predetermined ? "[0,1]" : "[1,0]") +
                          R"(,"A":[{"k":0,"h":0,"matrix":[["-1"]]},{"k":0,"h":1,"matrix":[[")" + a +
                          R"("]]}],"wold":[[["1"]],[[")" + rho + R"("]]]})");
}

Poly poly(std::vector<Rational> c) { return Poly(std::move(c)); }

} // namespace

TEST_CASE("forward-looking scalar model with MA(1) shock") {
  // Forward iteration gives y_t = (1 + a rho) eps_t + rho eps_{t-1}.
  SolutionReport sr = solve_causal(scalar("1/2", "1/3"));
  CHECK(sr.classification == Classification::determinate);
  CHECK(sr.transfer_den == Poly(1));
  CHECK(sr.transfer_num(0, 0) == poly({Rational(7, 6), Rational(1, 3)}));
  CHECK(sr.h(0, 0) == Rational(7, 6));
  CHECK(sr.naive_root_count_verdict == "determinate");
  CHECK(verify_solution(scalar("1/2", "1/3"), sr, 20).ok);
}

TEST_CASE("scalar indeterminacy: index option moves along the kernel") {
  REModel m = scalar("2", "0");
  SolveOptions opt;
  SolutionReport a = solve_causal(m, opt);
  CHECK(a.classification == Classification::indeterminate);
  CHECK(a.kernel_dim == 1);
  CHECK(a.solution_dim == 1);
  CHECK(a.kernel_point == "min-norm");
  opt.kernel_index = 0;
  SolutionReport b = solve_causal(m, opt);
  CHECK(b.h(0, 0) == a.h(0, 0) + a.kernel_basis[0][0]);
  CHECK(verify_solution(m, a, 30).ok);
  CHECK(verify_solution(m, b, 30).ok);
  opt.kernel_index = 1;
  CHECK_THROWS_AS(solve_causal(m, opt), std::out_of_range);
}

TEST_CASE("predetermined scalar with a stable forward root has no causal solution") {
  SolutionReport sr = solve_causal(scalar("1/2", "0", true));
  CHECK(sr.classification == Classification::no_causal_solution);
  REQUIRE(sr.inconsistent_column);
  CHECK(*sr.inconsistent_column == 0);
  CHECK(sr.naive_root_count_verdict == "no_causal_solution");
}

TEST_CASE("predetermined scalar with an unstable forward root is determinate") {
  // y_t known at t-1: y_t = (1/a) y_{t-1} - (1/a) u_{t-1}.
  REModel m = scalar("2", "0", true);
  SolutionReport sr = solve_causal(m);
  CHECK(sr.classification == Classification::determinate);
  CHECK(sr.h(0, 0) == 0);
  CHECK(sr.transfer_den == poly({1, Rational(-1, 2)}));
  CHECK(sr.transfer_num(0, 0) == poly({0, Rational(-1, 2)}));
  CHECK(verify_solution(m, sr, 40).ok);
}

TEST_CASE("sims solution in detail") {
  REModel m = sims();
  SolutionReport sr = solve_causal(m);
  CHECK(sr.classification == Classification::determinate);
  CHECK(sr.flavor == Flavor::predetermined);
  REQUIRE(sr.inert_slots.size() == 1);
  CHECK(sr.inert_slots[0] == std::pair<int, int>{0, 1});
  CHECK(sr.h(1, 0) == 0);
  CHECK(sr.h(1, 1) == 0);
  CHECK(sr.revisions(1, 0) == Rational(1, 110000));
  CHECK(sr.revisions(1, 1) == Rational(9, 11));
  // First-coefficient property: k_0 rows of the non-inert slots equal h.
  auto k = expand_transfer(sr.transfer_num, sr.transfer_den, 3);
  CHECK(k[0](0, 0) == sr.h(0, 0));
  CHECK(k[0](0, 1) == sr.h(0, 1));
  VerifyReport v = verify_solution(m, sr, 50);
  CHECK(v.ok);
  CHECK(v.predetermined_inert == 1);
}

TEST_CASE("factorization reproduces pi and separates roots") {
  Rng rng(61);
  int checked = 0;
  for (int t = 0; t < 40; ++t) {
    REModel m = sandwich_model(rng, CorpusOptions{});
    PiPolynomial pi = build_pi(m);
    SmithForm sf = smith_form(pi.pi);
    Factorization f = factor_stable_unstable(sf, pi.J1, Rational(1));
    CHECK(f.pi_u * f.pi_s == pi.pi);
    for (std::size_t i = 0; i < sf.size(); ++i) {
      CHECK(f.alpha_u[i] + f.alpha_s[i] == sf.g[i]);
      CHECK(f.alpha_s[i] <= pi.J1);
      for (auto r : poly_roots(f.phi_u[i])) CHECK(std::abs(r) < 1.0);
      for (auto r : poly_roots(f.phi_s[i])) CHECK(std::abs(r) > 1.0);
    }
    ++checked;
  }
  CHECK(checked == 40);
}

TEST_CASE("assembled right-hand side matches the z^J1 (sum_j L_j h_j - w) identity") {
  Rng rng(62);
  for (int t = 0; t < 30; ++t) {
    REModel m = t % 2 ? sandwich_model(rng, CorpusOptions{}) : generic_model(rng, CorpusOptions{});
    PiPolynomial pi = build_pi(m);
    if (pi.J1 < 0) continue;
    RhsMap rhs = assemble_rhs(m, pi, zeta_coefficients(m));
    const std::size_t s = static_cast<std::size_t>(m.s), q = static_cast<std::size_t>(m.q);
    RationalMatrix h = random_matrix(rng, s * static_cast<std::size_t>(m.H), q);
    // Individual L_j terms may carry negative powers that cancel in the sum,
    // so both sides are compared after multiplying by z^offset.
    const int offset = m.H + m.K + 2;
    PolyMatrix n = scale(rhs.apply(h), Poly::monomial(Rational(1), offset));
    PolyMatrix expect(s, q);
    for (std::size_t e = 0; e < s; ++e)
      for (std::size_t c = 0; c < q; ++c) {
        Poly acc;
        for (int j = 0; j < m.H; ++j)
          for (const auto &[key, a] : m.A) {
            const auto [kk, hh] = key;
            if (hh <= j) continue;
            for (std::size_t i = 0; i < s; ++i)
              acc += Poly::monomial(a(e, i) * h(static_cast<std::size_t>(j) * s + i, c), kk + j - hh + pi.J1 + offset);
          }
        for (int j = 0; j < static_cast<int>(m.wold.size()); ++j)
          acc -= Poly::monomial(m.wold[static_cast<std::size_t>(j)](e, c), j + pi.J1 + offset);
        expect(e, c) = acc;
      }
    CHECK(n == expect);
  }
}

TEST_CASE("solutions on the randomized corpus verify exactly") {
  Rng rng(63);
  int solved = 0;
  for (int t = 0; t < 60; ++t) {
    CorpusOptions opt;
    opt.predetermined = t % 2 == 0;
    REModel m = sandwich_model(rng, opt);
    SolutionReport sr = solve_causal(m);
    if (sr.classification == Classification::no_causal_solution) continue;
    ++solved;
    VerifyReport v = verify_solution(m, sr, 50);
    CHECK(v.ok);
    for (const auto &b : sr.kernel_basis) CHECK(b.size() == static_cast<std::size_t>(m.s * m.H));
  }
  CHECK(solved > 20);
}

TEST_CASE("verification detects a wrong solution") {
  REModel m = sims();
  SolutionReport sr = solve_causal(m);
  sr.transfer_num(1, 1) = sr.transfer_num(1, 1) + Poly(Rational(1, 3));
  VerifyReport v = verify_solution(m, sr, 50);
  CHECK_FALSE(v.ok);
  CHECK_FALSE(v.residual_ok);
  REQUIRE(v.first_bad_lag);
  CHECK(*v.first_bad_lag == 0);
  CHECK_THROWS_AS(verify_solution(m, solve_causal(m), 0), std::invalid_argument);
}

TEST_CASE("expand_transfer computes power-series coefficients") {
  PolyMatrix num{{poly({1, 1})}};
  auto k = expand_transfer(num, poly({1, Rational(-1, 2)}), 4);
  // (1 + z) / (1 - z/2) = 1 + 3/2 z + 3/4 z^2 + 3/8 z^3 + 3/16 z^4
  CHECK(k[0](0, 0) == 1);
  CHECK(k[1](0, 0) == Rational(3, 2));
  CHECK(k[4](0, 0) == Rational(3, 16));
}

TEST_CASE("lag-only models are rejected by the solver") {
  REModel m = parse_model_text(R"({"s":1,"K":1,"H":0,"q":1,"gamma":[1],
    "A":[{"k":1,"h":0,"matrix":[["-1"]]}],"wold":[[["1"]]]})");
  CHECK(build_pi(m).J1 == -1);
  CHECK_THROWS_AS(solve_causal(m), UnsupportedModel);
}

TEST_CASE("simulated autocovariances agree with the exact ones") {
  REModel m = scalar("1/2", "1/3");
  // AR part via a lag: y_t = 1/2 y_{t-1} + eps_t.
  REModel ar = parse_model_text(R"({"s":1,"K":1,"H":0,"q":1,"gamma":[1],
    "A":[{"k":0,"h":0,"matrix":[["-1"]]},{"k":1,"h":0,"matrix":[["1/2"]]}],"wold":[[["1"]]]})");
  for (const REModel *mm : {&m, &ar}) {
    SolutionReport sr = solve_causal(*mm);
    SimulationReport a = simulate(sr, 20000, 5, 3), b = simulate(sr, 20000, 5, 3);
    CHECK(a.sample_autocov == b.sample_autocov);
    for (int l = 0; l <= 3; ++l) {
      const double diff = std::abs(a.sample_autocov[static_cast<std::size_t>(l)][0] - a.exact_autocov[static_cast<std::size_t>(l)][0]);
      CHECK(diff < 5.0 * a.std_error[static_cast<std::size_t>(l)][0] + 1e-3);
    }
  }
  SolutionReport ar_sr = solve_causal(ar);
  SimulationReport r = simulate(ar_sr, 100, 1, 2);
  CHECK(r.exact_autocov[0][0] == doctest::Approx(4.0 / 3.0));
  CHECK(r.exact_autocov[1][0] == doctest::Approx(2.0 / 3.0));
}
