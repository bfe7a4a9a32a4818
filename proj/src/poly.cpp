#include "nichols/poly.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace nichols {

namespace {

std::int16_t checked(int v) {
  if (v > std::numeric_limits<std::int16_t>::max() ||
      v < std::numeric_limits<std::int16_t>::min())
    throw std::overflow_error("monomial exponent overflow");
  return static_cast<std::int16_t>(v);
}

bool term_greater(const Term& a, const Term& b) {
  return grlex_compare(a.m, b.m) > 0;
}

}  // namespace

int Monomial::degree() const {
  int d = 0;
  for (auto x : e) d += x;
  return d;
}

bool Monomial::is_one() const {
  for (auto x : e)
    if (x != 0) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  for (int i = 0; i < kMaxParams; ++i) r.e[i] = checked(e[i] + o.e[i]);
  return r;
}

Monomial Monomial::operator/(const Monomial& o) const {
  Monomial r;
  for (int i = 0; i < kMaxParams; ++i) r.e[i] = checked(e[i] - o.e[i]);
  return r;
}

bool Monomial::divides(const Monomial& o) const {
  for (int i = 0; i < kMaxParams; ++i)
    if (e[i] > o.e[i]) return false;
  return true;
}

int grlex_compare(const Monomial& a, const Monomial& b) {
  int da = a.degree(), db = b.degree();
  if (da != db) return da < db ? -1 : 1;
  for (int i = 0; i < kMaxParams; ++i)
    if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? -1 : 1;
  return 0;
}

Poly::Poly(const mpq_class& c) {
  if (c != 0) terms_.push_back({Monomial{}, c});
}

Poly Poly::monomial(const Monomial& m, const mpq_class& c) {
  Poly p;
  if (c != 0) p.terms_.push_back({m, c});
  return p;
}

Poly Poly::variable(int index) {
  Monomial m;
  m.e[index] = 1;
  return monomial(m);
}

bool Poly::is_one() const {
  return terms_.size() == 1 && terms_[0].m.is_one() && terms_[0].c == 1;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].m.is_one());
}

unsigned Poly::variables() const {
  unsigned mask = 0;
  for (const auto& t : terms_)
    for (int i = 0; i < kMaxParams; ++i)
      if (t.m.e[i] != 0) mask |= 1u << i;
  return mask;
}

Monomial Poly::min_exponents() const {
  Monomial r;
  if (terms_.empty()) return r;
  r = terms_[0].m;
  for (const auto& t : terms_)
    for (int i = 0; i < kMaxParams; ++i) r.e[i] = std::min(r.e[i], t.m.e[i]);
  return r;
}

int Poly::degree_in(int v) const {
  int d = std::numeric_limits<int>::min();
  for (const auto& t : terms_) d = std::max<int>(d, t.m.e[v]);
  return d;
}

bool Poly::has_negative_exponents() const {
  for (const auto& t : terms_)
    for (auto x : t.m.e)
      if (x < 0) return true;
  return false;
}

void Poly::canonicalize() {
  std::sort(terms_.begin(), terms_.end(), term_greater);
  std::size_t out = 0;
  for (std::size_t i = 0; i < terms_.size();) {
    std::size_t j = i + 1;
    mpq_class c = terms_[i].c;
    while (j < terms_.size() && terms_[j].m == terms_[i].m) c += terms_[j++].c;
    if (c != 0) {
      terms_[out].m = terms_[i].m;
      terms_[out].c = c;
      ++out;
    }
    i = j;
  }
  terms_.resize(out);
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.terms_) t.c = -t.c;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.terms_.empty()) return *this;
  std::vector<Term> merged;
  merged.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size()) {
      merged.push_back(std::move(terms_[i++]));
    } else if (i == terms_.size()) {
      merged.push_back(o.terms_[j++]);
    } else {
      int c = grlex_compare(terms_[i].m, o.terms_[j].m);
      if (c > 0) {
        merged.push_back(std::move(terms_[i++]));
      } else if (c < 0) {
        merged.push_back(o.terms_[j++]);
      } else {
        mpq_class s = terms_[i].c + o.terms_[j].c;
        if (s != 0) merged.push_back({terms_[i].m, s});
        ++i;
        ++j;
      }
    }
  }
  terms_ = std::move(merged);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) { return *this += -o; }

Poly operator*(const Poly& a, const Poly& b) {
  Poly r;
  if (a.terms_.empty() || b.terms_.empty()) return r;
  if (a.terms_.size() == 1 || b.terms_.size() == 1) {
    const Poly& big = a.terms_.size() == 1 ? b : a;
    const Term& t = a.terms_.size() == 1 ? a.terms_[0] : b.terms_[0];
    r.terms_.reserve(big.terms_.size());
    for (const auto& u : big.terms_) r.terms_.push_back({u.m * t.m, u.c * t.c});
    return r;  // multiplication by a term keeps the order
  }
  r.terms_.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) r.terms_.push_back({x.m * y.m, x.c * y.c});
  r.canonicalize();
  return r;
}

Poly Poly::scaled(const mpq_class& c) const {
  if (c == 0) return Poly();
  Poly r = *this;
  for (auto& t : r.terms_) t.c *= c;
  return r;
}

Poly Poly::shifted(const Monomial& m) const {
  Poly r = *this;
  for (auto& t : r.terms_) t.m = t.m * m;
  return r;
}

Poly Poly::unshifted(const Monomial& m) const {
  Poly r = *this;
  for (auto& t : r.terms_) t.m = t.m / m;
  return r;
}

bool Poly::operator==(const Poly& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (!(terms_[i].m == o.terms_[i].m) || terms_[i].c != o.terms_[i].c)
      return false;
  return true;
}

std::string Poly::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    mpq_class c = t.c;
    bool neg = c < 0;
    if (neg) c = -c;
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    bool unit = t.m.is_one();
    if (unit || c != 1) {
      os << c.get_str();
      if (!unit) os << "*";
    }
    bool firstvar = true;
    for (int i = 0; i < kMaxParams; ++i) {
      if (t.m.e[i] == 0) continue;
      if (!firstvar) os << "*";
      firstvar = false;
      os << names.at(i);
      if (t.m.e[i] != 1) os << "^" << t.m.e[i];
    }
  }
  return os.str();
}

Poly exact_div(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  if (b.terms_.size() == 1) {
    Poly r;
    r.terms_.reserve(a.terms_.size());
    mpq_class inv = 1 / b.terms_[0].c;
    for (const auto& t : a.terms_) {
      if (!b.terms_[0].m.divides(t.m))
        throw std::logic_error("inexact polynomial division");
      r.terms_.push_back({t.m / b.terms_[0].m, t.c * inv});
    }
    return r;
  }
  Poly rem = a, quot;
  const Term& lb = b.terms_[0];
  mpq_class inv = 1 / lb.c;
  while (!rem.is_zero()) {
    const Term& lr = rem.terms_[0];
    if (!lb.m.divides(lr.m)) throw std::logic_error("inexact polynomial division");
    Poly t = Poly::monomial(lr.m / lb.m, lr.c * inv);
    quot += t;
    rem -= t * b;
  }
  return quot;
}

mpq_class unit_normalize(const Poly& p, Poly& q) {
  if (p.is_zero()) {
    q = Poly();
    return 1;
  }
  mpz_class den = 1, num = 0;
  for (const auto& t : p.terms()) {
    mpz_class d = t.c.get_den();
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
  }
  for (const auto& t : p.terms()) {
    mpz_class n = t.c.get_num() * (den / t.c.get_den());
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), n.get_mpz_t());
  }
  mpq_class u(num, den);
  u.canonicalize();
  if (p.leading().c < 0) u = -u;
  q = p.scaled(1 / u);
  return u;
}

namespace {

using UPoly = std::vector<Poly>;  // coefficients in one variable, index = degree

UPoly to_univariate(const Poly& p, int v) {
  UPoly r;
  for (const auto& t : p.terms()) {
    int d = t.m.e[v];
    if (static_cast<int>(r.size()) <= d) r.resize(d + 1);
    Monomial m = t.m;
    m.e[v] = 0;
    r[d] += Poly::monomial(m, t.c);
  }
  return r;
}

Poly from_univariate(const UPoly& u, int v) {
  Poly r;
  for (std::size_t d = 0; d < u.size(); ++d) {
    if (u[d].is_zero()) continue;
    Monomial m;
    m.e[v] = static_cast<std::int16_t>(d);
    r += u[d].shifted(m);
  }
  return r;
}

void trim(UPoly& u) {
  while (!u.empty() && u.back().is_zero()) u.pop_back();
}

Poly content(const UPoly& u) {
  Poly g;
  for (const auto& c : u) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? c : gcd(g, c);
    if (g.is_constant()) return Poly(1);
  }
  Poly n;
  unit_normalize(g, n);
  return n;
}

UPoly primitive_part(const UPoly& u) {
  Poly c = content(u);
  UPoly r(u.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    r[i] = c.is_one() ? u[i] : exact_div(u[i], c);
  return r;
}

// Pseudo-remainder of a by b (deg a >= deg b >= 1).
UPoly prem(UPoly a, const UPoly& b) {
  const int db = static_cast<int>(b.size()) - 1;
  const Poly& lc = b.back();
  trim(a);
  while (static_cast<int>(a.size()) - 1 >= db) {
    int da = static_cast<int>(a.size()) - 1;
    Poly t = a.back();
    for (auto& c : a) c = c * lc;
    for (int j = 0; j <= db; ++j) a[j + da - db] -= t * b[j];
    trim(a);
  }
  return a;
}

UPoly unit_normalize_u(const UPoly& u, int v) {
  Poly q;
  unit_normalize(from_univariate(u, v), q);
  return to_univariate(q, v);
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) {
  Poly out;
  if (a.is_zero()) {
    unit_normalize(b, out);
    return out;
  }
  if (b.is_zero()) {
    unit_normalize(a, out);
    return out;
  }
  if (a.is_constant() || b.is_constant()) return Poly(1);
  unsigned va = a.variables(), vb = b.variables();
  int v = 0;
  while (!(((va | vb) >> v) & 1u)) ++v;
  if (!((va >> v) & 1u)) return gcd(a, content(to_univariate(b, v)));
  if (!((vb >> v) & 1u)) return gcd(content(to_univariate(a, v)), b);

  UPoly ua = to_univariate(a, v), ub = to_univariate(b, v);
  Poly ca = content(ua), cb = content(ub);
  Poly g = gcd(ca, cb);
  for (auto& c : ua) c = ca.is_one() ? c : exact_div(c, ca);
  for (auto& c : ub) c = cb.is_one() ? c : exact_div(c, cb);
  if (ua.size() < ub.size()) std::swap(ua, ub);
  while (true) {
    UPoly r = prem(ua, ub);
    if (r.empty()) break;
    if (r.size() == 1) {
      ub = {Poly(1)};
      break;
    }
    ua = std::move(ub);
    ub = unit_normalize_u(primitive_part(r), v);
  }
  ub = primitive_part(ub);
  unit_normalize(g * from_univariate(ub, v), out);
  return out;
}

}  // namespace nichols
