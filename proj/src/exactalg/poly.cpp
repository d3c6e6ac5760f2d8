#include "rexact/exactalg.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace rexact {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto not_space = [](unsigned char ch) { return !std::isspace(ch); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  if (s.empty()) throw ParseError("empty rational literal");

  auto valid_int = [](const std::string &t, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && i < t.size() && (t[i] == '-' || t[i] == '+')) ++i;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };

  auto slash = s.find('/');
  std::string num = slash == std::string::npos ? s : s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num, true) || !valid_int(den, false))
    throw ParseError("malformed rational literal '" + s + "'");
  if (num[0] == '+') num.erase(0, 1);

  mpz_class n(num, 10), d(den, 10);
  if (d == 0) throw ParseError("zero denominator in '" + s + "'");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational &r) { return r.get_str(10); }

std::size_t bit_size(const Rational &r) {
  return mpz_sizeinbase(r.get_num_mpz_t(), 2) + mpz_sizeinbase(r.get_den_mpz_t(), 2);
}

namespace {
const Rational &zero_rational() {
  static const Rational z(0);
  return z;
}
} // namespace

Poly::Poly(long c) : Poly(Rational(c)) {}

Poly::Poly(const Rational &c) {
  if (c != 0) c_.push_back(c);
}

Poly::Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::monomial(const Rational &c, int power) {
  if (power < 0) throw std::domain_error("negative monomial power");
  Poly p;
  if (c == 0) return p;
  p.c_.assign(static_cast<std::size_t>(power) + 1, Rational(0));
  p.c_.back() = c;
  return p;
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

int Poly::degree() const {
  return c_.empty() ? neg_inf_degree : static_cast<int>(c_.size()) - 1;
}

const Rational &Poly::coeff(int i) const {
  if (i < 0 || static_cast<std::size_t>(i) >= c_.size()) return zero_rational();
  return c_[static_cast<std::size_t>(i)];
}

const Rational &Poly::lead() const { return c_.empty() ? zero_rational() : c_.back(); }

int Poly::valuation() const {
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != 0) return static_cast<int>(i);
  return neg_inf_degree;
}

std::size_t Poly::bits() const {
  std::size_t b = 0;
  for (const auto &x : c_) b += bit_size(x);
  return b;
}

Poly Poly::operator-() const {
  Poly p = *this;
  for (auto &x : p.c_) x = -x;
  return p;
}

Poly &Poly::operator+=(const Poly &o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

Poly &Poly::operator-=(const Poly &o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

Poly operator*(const Poly &a, const Poly &b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  std::vector<Rational> r(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  }
  return Poly(std::move(r));
}

Poly &Poly::operator*=(const Poly &o) { return *this = *this * o; }

Poly &Poly::operator*=(const Rational &c) {
  if (c == 0) {
    c_.clear();
    return *this;
  }
  for (auto &x : c_) x *= c;
  return *this;
}

Poly Poly::shifted(int k) const {
  if (k < 0) throw std::domain_error("negative shift");
  if (is_zero() || k == 0) return *this;
  std::vector<Rational> r(static_cast<std::size_t>(k), Rational(0));
  r.insert(r.end(), c_.begin(), c_.end());
  return Poly(std::move(r));
}

Poly Poly::unshifted(int k) const {
  if (k < 0) throw std::domain_error("negative shift");
  if (is_zero() || k == 0) return *this;
  if (valuation() < k) throw std::domain_error("z^k does not divide polynomial");
  return Poly(std::vector<Rational>(c_.begin() + k, c_.end()));
}

Poly Poly::truncated(int n) const {
  if (n <= 0) return Poly();
  if (static_cast<std::size_t>(n) >= c_.size()) return *this;
  return Poly(std::vector<Rational>(c_.begin(), c_.begin() + n));
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  Poly p = *this;
  Rational inv = 1 / lead();
  return p *= inv;
}

Rational Poly::eval(const Rational &x) const {
  Rational acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::complex<long double> Poly::eval(std::complex<long double> x) const {
  std::complex<long double> acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    mpq_class q = *it;
    long double v = static_cast<long double>(q.get_d());
    acc = acc * x + v;
  }
  return acc;
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly();
  std::vector<Rational> r(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * static_cast<long>(i);
  return Poly(std::move(r));
}

std::string Poly::str(const char *var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    Rational a = c_[i];
    bool neg = a < 0;
    if (neg) a = -a;
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    if (i == 0 || a != 1) os << to_string(a);
    if (i > 0) {
      if (a != 1) os << ' ';
      os << var;
      if (i > 1) os << '^' << i;
    }
  }
  return os.str();
}

std::pair<Poly, Poly> divmod(const Poly &a, const Poly &b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  if (a.degree() < b.degree()) return {Poly(), a};
  std::vector<Rational> rem = a.coeffs();
  const int db = b.degree();
  const int dq = a.degree() - db;
  std::vector<Rational> q(static_cast<std::size_t>(dq) + 1, Rational(0));
  const Rational inv_lead = 1 / b.lead();
  for (int k = dq; k >= 0; --k) {
    Rational &top = rem[static_cast<std::size_t>(k + db)];
    if (top == 0) continue;
    Rational f = top * inv_lead;
    q[static_cast<std::size_t>(k)] = f;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k + j)] -= f * b.coeff(j);
  }
  rem.resize(static_cast<std::size_t>(db));
  return {Poly(std::move(q)), Poly(std::move(rem))};
}

Poly exact_div(const Poly &a, const Poly &b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw std::domain_error("inexact polynomial division");
  return q;
}

bool divides(const Poly &b, const Poly &a) {
  if (b.is_zero()) return a.is_zero();
  return divmod(a, b).second.is_zero();
}

Poly poly_gcd(const Poly &a, const Poly &b) {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = divmod(x, y).second;
    x = std::move(y);
    // Keep remainders monic to limit coefficient growth.
    y = r.monic();
  }
  return x.monic();
}

Poly primitive_part(const Poly &p) {
  if (p.is_zero()) return p;
  mpz_class l(1), g(0);
  for (const auto &x : p.coeffs()) {
    if (x == 0) continue;
    mpz_class d = x.get_den();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
  }
  std::vector<Rational> c;
  c.reserve(p.coeffs().size());
  for (const auto &x : p.coeffs()) {
    Rational y = x * Rational(l);
    c.push_back(y);
    mpz_class n = y.get_num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
  }
  Rational s(mpz_class(1), g);
  s.canonicalize();
  if (p.lead() < 0) s = -s;
  return Poly(std::move(c)) * s;
}

} // namespace rexact
