#include "rexact/solver.hpp"

#include <cmath>
#include <random>

namespace rexact {

namespace {

std::vector<double> autocov(const std::vector<std::vector<double>> &y, std::size_t from, std::size_t to, int lag,
                            int s) {
  std::vector<double> g(static_cast<std::size_t>(s * s), 0.0);
  const std::size_t L = static_cast<std::size_t>(lag);
  for (std::size_t t = from + L; t < to; ++t)
    for (int a = 0; a < s; ++a)
      for (int b = 0; b < s; ++b)
        g[static_cast<std::size_t>(a * s + b)] += y[t][static_cast<std::size_t>(a)] * y[t - L][static_cast<std::size_t>(b)];
  for (auto &x : g) x /= static_cast<double>(to - from);
  return g;
}

} // namespace

SimulationReport simulate(const SolutionReport &sr, int T, std::uint64_t seed, int lags) {
  if (sr.classification == Classification::no_causal_solution)
    throw std::invalid_argument("cannot simulate a model without a causal solution");
  if (T < 40 || lags < 0) throw std::invalid_argument("simulate needs T >= 40 and lags >= 0");
  const int s = sr.s, q = sr.q;
  SimulationReport rep;
  rep.T = T;
  rep.seed = seed;
  rep.lags = lags;
  rep.q = q;
  rep.s = s;

  const int dn = sr.transfer_den.degree();
  const int nn = degree(sr.transfer_num);
  std::vector<double> den(static_cast<std::size_t>(dn + 1));
  const double d0 = sr.transfer_den.coeff(0).get_d();
  for (int i = 0; i <= dn; ++i) den[static_cast<std::size_t>(i)] = sr.transfer_den.coeff(i).get_d() / d0;
  std::vector<std::vector<double>> num;
  for (int i = 0; i <= std::max(nn, 0); ++i) {
    RationalMatrix c = coefficient(sr.transfer_num, i);
    std::vector<double> m(static_cast<std::size_t>(s * q));
    for (int a = 0; a < s; ++a)
      for (int b = 0; b < q; ++b)
        m[static_cast<std::size_t>(a * q + b)] = c(static_cast<std::size_t>(a), static_cast<std::size_t>(b)).get_d() / d0;
    num.push_back(std::move(m));
  }

  const int burn = 500;
  const std::size_t total = static_cast<std::size_t>(T + burn);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<std::vector<double>> eps(total, std::vector<double>(static_cast<std::size_t>(q)));
  std::vector<std::vector<double>> y(total, std::vector<double>(static_cast<std::size_t>(s), 0.0));
  for (std::size_t t = 0; t < total; ++t) {
    for (auto &e : eps[t]) e = normal(rng);
    for (int a = 0; a < s; ++a) {
      double v = 0.0;
      for (std::size_t i = 0; i < num.size() && i <= t; ++i)
        for (int b = 0; b < q; ++b) v += num[i][static_cast<std::size_t>(a * q + b)] * eps[t - i][static_cast<std::size_t>(b)];
      for (std::size_t i = 1; i < den.size() && i <= t; ++i) v -= den[i] * y[t - i][static_cast<std::size_t>(a)];
      y[t][static_cast<std::size_t>(a)] = v;
    }
  }
  std::vector<std::vector<double>> sample(y.begin() + burn, y.end());

  const int batches = 20;
  const std::size_t bl = sample.size() / batches;
  for (int l = 0; l <= lags; ++l) {
    rep.sample_autocov.push_back(autocov(sample, 0, sample.size(), l, s));
    std::vector<std::vector<double>> per;
    for (int b = 0; b < batches; ++b)
      per.push_back(autocov(sample, static_cast<std::size_t>(b) * bl, static_cast<std::size_t>(b + 1) * bl, l, s));
    std::vector<double> se(static_cast<std::size_t>(s * s), 0.0);
    for (std::size_t e = 0; e < se.size(); ++e) {
      double mean = 0.0, var = 0.0;
      for (const auto &p : per) mean += p[e];
      mean /= batches;
      for (const auto &p : per) var += (p[e] - mean) * (p[e] - mean);
      se[e] = std::sqrt(var / (batches - 1) / batches);
    }
    rep.std_error.push_back(std::move(se));
  }

  // Exact autocovariances from the impulse response, truncated once the tail is negligible.
  std::vector<std::vector<double>> k;
  std::vector<double> prev_norms;
  for (std::size_t i = 0; i < 20000; ++i) {
    std::vector<double> ki(static_cast<std::size_t>(s * q), 0.0);
    if (i < num.size()) ki = num[i];
    for (std::size_t l = 1; l < den.size() && l <= i; ++l)
      for (std::size_t e = 0; e < ki.size(); ++e) ki[e] -= den[l] * k[i - l][e];
    double norm = 0.0;
    for (double x : ki) norm += x * x;
    k.push_back(std::move(ki));
    prev_norms.push_back(norm);
    if (i > num.size() + den.size() + 50) {
      double tail = 0.0;
      for (std::size_t j = prev_norms.size() - 50; j < prev_norms.size(); ++j) tail += prev_norms[j];
      if (tail < 1e-30) break;
    }
  }
  for (int l = 0; l <= lags; ++l) {
    std::vector<double> g(static_cast<std::size_t>(s * s), 0.0);
    for (std::size_t i = 0; i + static_cast<std::size_t>(l) < k.size(); ++i)
      for (int a = 0; a < s; ++a)
        for (int b = 0; b < s; ++b)
          for (int c = 0; c < q; ++c)
            g[static_cast<std::size_t>(a * s + b)] += k[i + static_cast<std::size_t>(l)][static_cast<std::size_t>(a * q + c)] *
                                                       k[i][static_cast<std::size_t>(b * q + c)];
    rep.exact_autocov.push_back(std::move(g));
  }
  return rep;
}

} // namespace rexact
