#pragma once

#include "rexact/errors.hpp"
#include "rexact/exactalg.hpp"

#include "json.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rexact {

using json = nlohmann::json;

// sum_{k<=K} sum_{h<=H} A_kh E_{t-k}(y_{t+h-k}) = -u_t,  u_t = sum_j w_j eps_{t-j}.
struct REModel {
  int s = 0, K = 0, H = 0, q = 0;
  // (s_0, ..., s_H): components are ordered by group; group i is known i
  // periods in advance.
  std::vector<int> gamma;
  std::map<std::pair<int, int>, RationalMatrix> A;
  std::vector<RationalMatrix> wold;
  std::optional<Rational> xi;
  std::optional<int> r_hint;

  // A_kh, or the zero matrix when absent.
  RationalMatrix a(int k, int h) const;
  // Group index of component c (0-based).
  int group_of(int c) const;
  // Number of components in groups 0..j (those with a free revision at horizon j).
  int free_components(int j) const;
  bool has_predetermined() const;
  Rational growth_bound() const { return xi.value_or(Rational(1)); }
  // w_j, or zero for j beyond the Wold list.
  RationalMatrix w(int j) const;
};

REModel parse_model(const json &doc);
REModel parse_model_text(const std::string &text);
REModel load_model(const std::string &path);
// Normalized form: lowest terms, zero matrices dropped, (k,h) sorted, gamma
// padded to H+1 entries.
json serialize_model(const REModel &m);

// Exact conversions shared by every file format.
json rational_to_json(const Rational &r);
Rational rational_from_json(const json &j);
json matrix_to_json(const RationalMatrix &m);
RationalMatrix matrix_from_json(const json &j, std::size_t rows, std::size_t cols, const std::string &what);
json poly_to_json(const Poly &p);
json poly_matrix_to_json(const PolyMatrix &m);

struct PiPolynomial {
  PolyMatrix pi;
  std::map<int, RationalMatrix> A_star;
  int J0 = 0, J1 = 0;
  Poly det;
};

// A*_i = sum_k A_{k,k+i};  pi(z) = sum_i A*_i z^{J1-i}.
// Throws RedundantEquations when det pi is identically zero.
PiPolynomial build_pi(const REModel &m);

struct ValidationCheck {
  std::string name;
  bool passed = true;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  std::vector<std::string> notes;
  std::vector<std::string> warnings;
  bool ok() const;
};

ValidationReport validate_semantics(const REModel &m);

} // namespace rexact
