#include "rexact/model.hpp"

#include "rexact/canon.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace rexact {

RationalMatrix REModel::a(int k, int h) const {
  auto it = A.find({k, h});
  if (it == A.end()) return RationalMatrix(s, s);
  return it->second;
}

int REModel::group_of(int c) const {
  int acc = 0;
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    acc += gamma[i];
    if (c < acc) return static_cast<int>(i);
  }
  throw std::out_of_range("component index outside gamma partition");
}

int REModel::free_components(int j) const {
  int acc = 0;
  for (int i = 0; i <= j && i < static_cast<int>(gamma.size()); ++i) acc += gamma[i];
  return acc;
}

bool REModel::has_predetermined() const { return gamma.empty() ? false : gamma[0] != s; }

RationalMatrix REModel::w(int j) const {
  if (j < 0 || j >= static_cast<int>(wold.size())) return RationalMatrix(s, q);
  return wold[static_cast<std::size_t>(j)];
}

json rational_to_json(const Rational &r) { return to_string(r); }

Rational rational_from_json(const json &j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(mpz_class(std::to_string(j.get<long long>())));
  if (j.is_number_unsigned()) return Rational(mpz_class(std::to_string(j.get<unsigned long long>())));
  throw ParseError("rational must be a string \"p/q\" or an integer, got " + j.dump());
}

json matrix_to_json(const RationalMatrix &m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(rational_to_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

RationalMatrix matrix_from_json(const json &j, std::size_t rows, std::size_t cols, const std::string &what) {
  auto bad = [&](const std::string &msg) {
    std::ostringstream os;
    os << what << ": " << msg << " (expected " << rows << "x" << cols << ")";
    throw InvalidModel(os.str());
  };
  if (!j.is_array() || j.size() != rows) bad("wrong number of rows");
  RationalMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const json &row = j[i];
    if (!row.is_array() || row.size() != cols) bad("row " + std::to_string(i) + " has wrong length");
    for (std::size_t c = 0; c < cols; ++c) {
      try {
        m(i, c) = rational_from_json(row[c]);
      } catch (const ParseError &e) {
        throw InvalidModel(what + ": " + e.what());
      }
    }
  }
  return m;
}

json poly_to_json(const Poly &p) {
  json a = json::array();
  for (const auto &c : p.coeffs()) a.push_back(rational_to_json(c));
  return a;
}

json poly_matrix_to_json(const PolyMatrix &m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(poly_to_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

namespace {

int get_count(const json &doc, const char *key, int min_value) {
  if (!doc.contains(key)) throw InvalidModel(std::string("missing field '") + key + "'");
  const json &v = doc.at(key);
  if (!v.is_number_integer()) throw InvalidModel(std::string("field '") + key + "' must be an integer");
  long long x = v.get<long long>();
  if (x < min_value || x > 1000000) throw InvalidModel(std::string("field '") + key + "' out of range");
  return static_cast<int>(x);
}

} // namespace

REModel parse_model(const json &doc) {
  if (!doc.is_object()) throw InvalidModel("model file must be a JSON object");
  static const std::set<std::string> known{"s", "K", "H", "q", "gamma", "A", "wold", "xi", "r_hint"};
  for (auto it = doc.begin(); it != doc.end(); ++it)
    if (!known.count(it.key())) throw InvalidModel("unknown field '" + it.key() + "'");

  REModel m;
  m.s = get_count(doc, "s", 1);
  m.K = get_count(doc, "K", 0);
  m.H = get_count(doc, "H", 0);
  m.q = get_count(doc, "q", 1);
  if (m.q > m.s) throw InvalidModel("q > s: innovation dimension exceeds endogenous dimension");

  if (doc.contains("gamma") && !doc.at("gamma").is_null()) {
    const json &g = doc.at("gamma");
    if (!g.is_array() || g.empty()) throw InvalidModel("gamma must be a non-empty array");
    if (g.size() > static_cast<std::size_t>(m.H) + 1) throw InvalidModel("gamma has more than H+1 entries");
    int sum = 0;
    for (const auto &x : g) {
      if (!x.is_number_integer() || x.get<long long>() < 0) throw InvalidModel("gamma entries must be non-negative integers");
      m.gamma.push_back(static_cast<int>(x.get<long long>()));
      sum += m.gamma.back();
    }
    if (sum != m.s) throw InvalidModel("gamma sum mismatch: entries sum to " + std::to_string(sum) + ", s = " + std::to_string(m.s));
  } else {
    m.gamma = {m.s};
  }
  m.gamma.resize(static_cast<std::size_t>(m.H) + 1, 0);

  if (!doc.contains("A") || !doc.at("A").is_array()) throw InvalidModel("field 'A' must be an array");
  std::set<std::pair<int, int>> seen;
  for (const auto &entry : doc.at("A")) {
    if (!entry.is_object() || !entry.contains("k") || !entry.contains("h") || !entry.contains("matrix"))
      throw InvalidModel("each A entry needs k, h and matrix");
    for (auto it = entry.begin(); it != entry.end(); ++it)
      if (it.key() != "k" && it.key() != "h" && it.key() != "matrix")
        throw InvalidModel("unknown field '" + it.key() + "' in A entry");
    if (!entry.at("k").is_number_integer() || !entry.at("h").is_number_integer())
      throw InvalidModel("A entry k and h must be integers");
    long long k = entry.at("k").get<long long>(), h = entry.at("h").get<long long>();
    if (k < 0 || k > m.K || h < 0 || h > m.H)
      throw InvalidModel("A entry (k=" + std::to_string(k) + ", h=" + std::to_string(h) + ") outside 0..K x 0..H");
    std::string what = "A(" + std::to_string(k) + "," + std::to_string(h) + ")";
    RationalMatrix a = matrix_from_json(entry.at("matrix"), m.s, m.s, what);
    auto key = std::make_pair(static_cast<int>(k), static_cast<int>(h));
    if (!seen.insert(key).second) throw InvalidModel("duplicate entry " + what);
    if (!a.is_zero()) m.A.emplace(key, std::move(a));
  }

  if (!doc.contains("wold") || !doc.at("wold").is_array()) throw InvalidModel("field 'wold' must be an array");
  for (std::size_t j = 0; j < doc.at("wold").size(); ++j)
    m.wold.push_back(matrix_from_json(doc.at("wold")[j], m.s, m.q, "wold[" + std::to_string(j) + "]"));
  while (!m.wold.empty() && m.wold.back().is_zero()) m.wold.pop_back();

  if (doc.contains("xi") && !doc.at("xi").is_null()) {
    try {
      m.xi = rational_from_json(doc.at("xi"));
    } catch (const ParseError &e) {
      throw InvalidModel(std::string("xi: ") + e.what());
    }
    if (*m.xi < 1) throw InvalidModel("xi must be >= 1");
  }
  if (doc.contains("r_hint") && !doc.at("r_hint").is_null()) {
    if (!doc.at("r_hint").is_number_integer()) throw InvalidModel("r_hint must be an integer");
    long long r = doc.at("r_hint").get<long long>();
    if (r < m.q || r > m.s) throw InvalidModel("r_hint must satisfy q <= r <= s");
    m.r_hint = static_cast<int>(r);
  }

  bool k_realized = false, h_realized = false;
  for (const auto &[key, mat] : m.A) {
    if (key.first == m.K) k_realized = true;
    if (key.second == m.H) h_realized = true;
  }
  if (!k_realized) throw InvalidModel("K = " + std::to_string(m.K) + " is not realized by any nonzero A_{K,h}");
  if (!h_realized) throw InvalidModel("H = " + std::to_string(m.H) + " is not realized by any nonzero A_{k,H}");
  return m;
}

REModel parse_model_text(const std::string &text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error &e) {
    throw InvalidModel(std::string("malformed JSON: ") + e.what());
  }
  return parse_model(doc);
}

REModel load_model(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot read model file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_model_text(ss.str());
}

json serialize_model(const REModel &m) {
  json doc;
  doc["s"] = m.s;
  doc["K"] = m.K;
  doc["H"] = m.H;
  doc["q"] = m.q;
  std::vector<int> g = m.gamma;
  g.resize(static_cast<std::size_t>(m.H) + 1, 0);
  doc["gamma"] = g;
  json a = json::array();
  for (const auto &[key, mat] : m.A) {
    if (mat.is_zero()) continue;
    a.push_back({{"k", key.first}, {"h", key.second}, {"matrix", matrix_to_json(mat)}});
  }
  doc["A"] = a;
  json w = json::array();
  std::size_t len = m.wold.size();
  while (len > 0 && m.wold[len - 1].is_zero()) --len;
  for (std::size_t j = 0; j < len; ++j) w.push_back(matrix_to_json(m.wold[j]));
  doc["wold"] = w;
  if (m.xi) doc["xi"] = rational_to_json(*m.xi);
  if (m.r_hint) doc["r_hint"] = *m.r_hint;
  return doc;
}

PiPolynomial build_pi(const REModel &m) {
  PiPolynomial out;
  for (int i = -m.K; i <= m.H; ++i) {
    RationalMatrix acc(m.s, m.s);
    for (int k = std::max(0, -i); k <= std::min(m.K, m.H - i); ++k) {
      auto it = m.A.find({k, k + i});
      if (it != m.A.end()) acc += it->second;
    }
    if (!acc.is_zero()) out.A_star.emplace(i, std::move(acc));
  }
  if (out.A_star.empty()) throw RedundantEquations();
  out.J0 = out.A_star.begin()->first;
  out.J1 = out.A_star.rbegin()->first;
  out.pi = PolyMatrix(m.s, m.s);
  for (const auto &[i, mat] : out.A_star)
    for (int r = 0; r < m.s; ++r)
      for (int c = 0; c < m.s; ++c)
        if (mat(r, c) != 0) out.pi(r, c) += Poly::monomial(mat(r, c), out.J1 - i);
  out.det = determinant(out.pi);
  if (out.det.is_zero()) throw RedundantEquations();
  return out;
}

bool ValidationReport::ok() const {
  for (const auto &c : checks)
    if (!c.passed) return false;
  return true;
}

ValidationReport validate_semantics(const REModel &m) {
  ValidationReport rep;
  bool k_ok = false, h_ok = false;
  for (const auto &[key, mat] : m.A) {
    if (mat.is_zero()) continue;
    if (key.first == m.K) k_ok = true;
    if (key.second == m.H) h_ok = true;
  }
  rep.checks.push_back({"K realized by a nonzero A_{K,h}", k_ok, ""});
  rep.checks.push_back({"H realized by a nonzero A_{k,H}", h_ok, ""});
  rep.checks.push_back({"q <= s", m.q <= m.s, "q = " + std::to_string(m.q) + ", s = " + std::to_string(m.s)});
  int gsum = 0;
  for (int x : m.gamma) gsum += x;
  rep.checks.push_back({"gamma sums to s", gsum == m.s, ""});

  try {
    PiPolynomial pp = build_pi(m);
    rep.checks.push_back({"det pi(z) not identically zero", true, "det pi(z) = " + pp.det.str()});
    SmithForm sf = smith_form(pp.pi);
    std::ostringstream g;
    g << "G = " << sf.total_zero_order() << " zero" << (sf.total_zero_order() == 1 ? "" : "s") << " at zero, g = (";
    for (std::size_t i = 0; i < sf.g.size(); ++i) g << (i ? "," : "") << sf.g[i];
    g << "), J0 = " << pp.J0 << ", J1 = " << pp.J1;
    rep.notes.push_back(g.str());
    for (int gi : sf.g)
      if (gi > pp.J1) {
        rep.warnings.push_back("partial multiplicity g_i > J1 present: zeros at zero that must be cancelled (finite non-causality)");
        break;
      }
    if (pp.J1 < 0) rep.warnings.push_back("J1 < 0: the model only involves lagged information; solving is unsupported");
  } catch (const RedundantEquations &e) {
    rep.checks.push_back({"det pi(z) not identically zero", false, e.what()});
  }
  if (!m.has_predetermined())
    rep.notes.push_back("no predetermined variables (gamma = (s,0,...,0))");
  if (m.H == 0) rep.notes.push_back("H = 0: no expectations; the constraint machinery is empty");
  return rep;
}

} // namespace rexact
