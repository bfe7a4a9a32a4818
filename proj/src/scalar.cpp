#include "nichols/scalar.hpp"

#include <cctype>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <set>

namespace nichols {

namespace {

using QPoly = std::vector<mpq_class>;  // dense univariate, low to high

void qtrim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

QPoly qmul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  qtrim(r);
  return r;
}

QPoly qsub(QPoly a, const QPoly& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  qtrim(a);
  return a;
}

// quotient and remainder of a by b
void qdivmod(const QPoly& a, const QPoly& b, QPoly& quo, QPoly& rem) {
  rem = a;
  qtrim(rem);
  quo.clear();
  if (rem.size() < b.size()) return;
  quo.assign(rem.size() - b.size() + 1, 0);
  mpq_class inv = 1 / b.back();
  while (!rem.empty() && rem.size() >= b.size()) {
    std::size_t shift = rem.size() - b.size();
    mpq_class c = rem.back() * inv;
    quo[shift] = c;
    for (std::size_t j = 0; j < b.size(); ++j) rem[j + shift] -= c * b[j];
    rem.pop_back();
    qtrim(rem);
  }
  qtrim(quo);
}

QPoly cyclotomic_poly(int n) {
  static std::map<int, QPoly> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  QPoly p(n + 1, 0);
  p[0] = -1;
  p[n] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d) continue;
    QPoly q, r;
    qdivmod(p, cyclotomic_poly(d), q, r);
    p = q;
  }
  cache[n] = p;
  return p;
}

std::mutex& registry_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

const ScalarContext* ScalarContext::cyclotomic(int order) {
  if (order < 1) throw std::invalid_argument("cyclotomic order must be >= 1");
  static std::map<int, std::unique_ptr<ScalarContext>> reg;
  std::lock_guard<std::mutex> lock(registry_mutex());
  auto& slot = reg[order];
  if (!slot) {
    slot.reset(new ScalarContext());
    slot->backend_ = Backend::Cyclotomic;
    slot->order_ = order;
    slot->phi_ = cyclotomic_poly(order);
    slot->names_ = {"z"};
    int d = slot->degree();
    for (int k = d; k <= 2 * d - 2; ++k) {
      QPoly xk(k + 1, 0), q, r;
      xk[k] = 1;
      qdivmod(xk, slot->phi_, q, r);
      r.resize(d);
      slot->xpow_.push_back(r);
    }
  }
  return slot.get();
}

const ScalarContext* ScalarContext::parameters(const std::vector<std::string>& names) {
  if (names.empty()) throw std::invalid_argument("parameter list is empty");
  if (static_cast<int>(names.size()) > kMaxParams)
    throw std::invalid_argument("at most " + std::to_string(kMaxParams) + " parameters");
  std::set<std::string> seen;
  for (const auto& n : names) {
    if (n.empty() || !std::isalpha(static_cast<unsigned char>(n[0])))
      throw std::invalid_argument("bad parameter name '" + n + "'");
    for (char c : n)
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
        throw std::invalid_argument("bad parameter name '" + n + "'");
    if (!seen.insert(n).second) throw std::invalid_argument("duplicate parameter '" + n + "'");
  }
  static std::map<std::vector<std::string>, std::unique_ptr<ScalarContext>> reg;
  std::lock_guard<std::mutex> lock(registry_mutex());
  auto& slot = reg[names];
  if (!slot) {
    slot.reset(new ScalarContext());
    slot->backend_ = Backend::Parameters;
    slot->names_ = names;
    slot->phi_ = {0, 1};
  }
  return slot.get();
}

std::string ScalarContext::describe() const {
  if (is_cyclotomic()) return "cyclotomic(" + std::to_string(order_) + ")";
  std::string s = "parameters(";
  for (std::size_t i = 0; i < names_.size(); ++i) s += (i ? "," : "") + names_[i];
  return s + ")";
}

// ---------------------------------------------------------------------------

Scalar Scalar::from_cyclo(const ScalarContext* ctx, std::vector<mpq_class> v) {
  qtrim(v);
  if (v.size() <= 1) return Scalar(v.empty() ? mpq_class(0) : v[0]);
  Scalar s;
  s.rep_ = Rep::Cyclo;
  s.ctx_ = ctx;
  s.q_ = 0;
  s.cyc_ = std::move(v);
  return s;
}

Scalar Scalar::from_poly(const ScalarContext* ctx, Poly n) {
  if (n.is_constant()) return Scalar(n.is_zero() ? mpq_class(0) : n.leading().c);
  Scalar s;
  s.rep_ = Rep::RatFun;
  s.ctx_ = ctx;
  s.q_ = 0;
  s.num_ = std::move(n);
  return s;
}

Scalar Scalar::from_fraction(const ScalarContext* ctx, const Poly& n, const Poly& d) {
  if (d.is_zero()) throw std::domain_error("division by zero");
  if (n.is_zero()) return Scalar();
  if (d.is_monomial()) {
    const Term& t = d.leading();
    return from_poly(ctx, n.unshifted(t.m).scaled(1 / t.c));
  }
  Monomial a = n.min_exponents(), b = d.min_exponents();
  Poly n0 = n.unshifted(a), d0 = d.unshifted(b);
  Poly g = gcd(n0, d0);
  if (!g.is_constant()) {
    n0 = exact_div(n0, g);
    d0 = exact_div(d0, g);
  }
  Poly d1;
  mpq_class u = unit_normalize(d0, d1);
  Poly num = n0.scaled(1 / u).shifted(a / b);
  if (d1.is_one()) return from_poly(ctx, std::move(num));
  Scalar s;
  s.rep_ = Rep::RatFun;
  s.ctx_ = ctx;
  s.q_ = 0;
  s.num_ = std::move(num);
  s.den_ = std::move(d1);
  return s;
}

Scalar Scalar::zeta(const ScalarContext* ctx, int k) {
  if (!ctx || !ctx->is_cyclotomic()) throw std::invalid_argument("zeta needs a cyclotomic context");
  int n = ctx->order();
  k %= n;
  if (k < 0) k += n;
  std::vector<mpq_class> x(ctx->degree(), 0);
  if (ctx->degree() == 1) return Scalar(-ctx->phi()[0]).pow(k);
  x[1] = 1;
  return from_cyclo(ctx, x).pow(k);
}

Scalar Scalar::param(const ScalarContext* ctx, int index) {
  if (!ctx || ctx->is_cyclotomic()) throw std::invalid_argument("param needs a parameter context");
  if (index < 0 || index >= static_cast<int>(ctx->names().size()))
    throw std::out_of_range("parameter index");
  return from_poly(ctx, Poly::variable(index));
}

const ScalarContext* Scalar::common_context(const Scalar& o) const {
  if (!ctx_) return o.ctx_;
  if (!o.ctx_) return ctx_;
  if (ctx_ != o.ctx_) throw std::invalid_argument("scalars from different contexts");
  return ctx_;
}

std::vector<mpq_class> Scalar::cyc_vector() const {
  if (rep_ == Rep::Cyclo) return cyc_;
  if (q_ == 0) return {};
  return {q_};
}

Poly Scalar::num_poly() const { return rep_ == Rep::RatFun ? num_ : Poly(q_); }
Poly Scalar::den_poly() const {
  return rep_ == Rep::RatFun && !den_.is_zero() ? den_ : Poly(1);
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  r.q_ = -r.q_;
  for (auto& c : r.cyc_) c = -c;
  if (r.rep_ == Rep::RatFun) r.num_ = -r.num_;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (rep_ == Rep::Rational && o.rep_ == Rep::Rational) {
    q_ += o.q_;
    return *this;
  }
  const ScalarContext* ctx = common_context(o);
  if (ctx->is_cyclotomic()) {
    auto a = cyc_vector();
    auto b = o.cyc_vector();
    if (a.size() < b.size()) a.resize(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
    return *this = from_cyclo(ctx, std::move(a));
  }
  Poly da = den_poly(), db = o.den_poly();
  if (da.is_one() && db.is_one()) return *this = from_poly(ctx, num_poly() + o.num_poly());
  if (da == db) return *this = from_fraction(ctx, num_poly() + o.num_poly(), da);
  return *this = from_fraction(ctx, num_poly() * db + o.num_poly() * da, da * db);
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  if (rep_ == Rep::Rational && o.rep_ == Rep::Rational) {
    q_ *= o.q_;
    return *this;
  }
  if (is_zero() || o.is_zero()) return *this = Scalar();
  const ScalarContext* ctx = common_context(o);
  if (o.rep_ == Rep::Rational || rep_ == Rep::Rational) {
    const Scalar& c = rep_ == Rep::Rational ? *this : o;
    Scalar r = rep_ == Rep::Rational ? o : *this;
    for (auto& x : r.cyc_) x *= c.q_;
    if (r.rep_ == Rep::RatFun) r.num_ = r.num_.scaled(c.q_);
    return *this = std::move(r);
  }
  if (ctx->is_cyclotomic()) {
    auto p = qmul(cyc_, o.cyc_);
    const int d = ctx->degree();
    std::vector<mpq_class> r(d, 0);
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (p[k] == 0) continue;
      if (static_cast<int>(k) < d) {
        r[k] += p[k];
      } else {
        const auto& red = ctx->xpow_[k - d];
        for (int j = 0; j < d; ++j)
          if (red[j] != 0) r[j] += p[k] * red[j];
      }
    }
    return *this = from_cyclo(ctx, std::move(r));
  }
  Poly da = den_poly(), db = o.den_poly();
  if (da.is_one() && db.is_one()) return *this = from_poly(ctx, num_ * o.num_);
  return *this = from_fraction(ctx, num_poly() * o.num_poly(), da * db);
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero");
  if (rep_ == Rep::Rational) return Scalar(mpq_class(1 / q_));
  if (rep_ == Rep::RatFun) return from_fraction(ctx_, den_poly(), num_);
  // extended Euclid: s*a + t*phi = 1
  QPoly r0 = ctx_->phi(), r1 = cyc_;
  QPoly s0, s1 = {1};
  while (r1.size() > 1) {
    QPoly q, r;
    qdivmod(r0, r1, q, r);
    QPoly s = qsub(s0, qmul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  mpq_class c = 1 / r1[0];
  for (auto& x : s1) x *= c;
  QPoly q, rem;
  qdivmod(s1, ctx_->phi(), q, rem);
  return from_cyclo(ctx_, rem);
}

Scalar Scalar::pow(long k) const {
  if (k < 0) return inverse().pow(-k);
  Scalar result(1), base = *this;
  while (k) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k) base *= base;
  }
  return result;
}

bool Scalar::operator==(const Scalar& o) const {
  if (rep_ != o.rep_) return false;
  switch (rep_) {
    case Rep::Rational:
      return q_ == o.q_;
    case Rep::Cyclo:
      return ctx_ == o.ctx_ && cyc_ == o.cyc_;
    case Rep::RatFun:
      return ctx_ == o.ctx_ && num_ == o.num_ && den_ == o.den_;
  }
  return false;
}

std::optional<int> Scalar::root_of_unity_order() const {
  if (rep_ == Rep::Rational) {
    if (q_ == 1) return 1;
    if (q_ == -1) return 2;
    return std::nullopt;
  }
  if (rep_ == Rep::RatFun) return std::nullopt;
  int n = ctx_->order();
  int bound = n % 2 ? 2 * n : n;
  for (int k = 1; k <= bound; ++k)
    if (bound % k == 0 && pow(k).is_one()) return k;
  return std::nullopt;
}

bool Scalar::as_laurent_monomial(mpq_class& c, Monomial& m) const {
  if (rep_ == Rep::Rational) {
    c = q_;
    m = Monomial{};
    return true;
  }
  if (rep_ == Rep::RatFun && den_.is_zero() && num_.is_monomial()) {
    c = num_.leading().c;
    m = num_.leading().m;
    return true;
  }
  return false;
}

std::string Scalar::to_string() const {
  switch (rep_) {
    case Rep::Rational:
      return q_.get_str();
    case Rep::Cyclo: {
      Poly p;
      for (std::size_t k = 0; k < cyc_.size(); ++k) {
        Monomial m;
        m.e[0] = static_cast<std::int16_t>(k);
        p += Poly::monomial(m, cyc_[k]);
      }
      return p.to_string(ctx_->names());
    }
    case Rep::RatFun:
      if (den_.is_zero()) return num_.to_string(ctx_->names());
      return "(" + num_.to_string(ctx_->names()) + ")/(" + den_.to_string(ctx_->names()) + ")";
  }
  return "?";
}

std::size_t Scalar::hash() const {
  std::size_t h = static_cast<std::size_t>(rep_);
  auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
  auto hq = [&](const mpq_class& x) {
    mix(mpz_get_ui(x.get_num_mpz_t()) ^ (mpz_sgn(x.get_num_mpz_t()) < 0 ? 0x5555u : 0u));
    mix(mpz_get_ui(x.get_den_mpz_t()));
  };
  auto hp = [&](const Poly& p) {
    for (const auto& t : p.terms()) {
      for (auto e : t.m.e) mix(static_cast<std::size_t>(e + 40000));
      hq(t.c);
    }
    mix(0xabcdef);
  };
  switch (rep_) {
    case Rep::Rational:
      hq(q_);
      break;
    case Rep::Cyclo:
      for (const auto& c : cyc_) hq(c);
      break;
    case Rep::RatFun:
      hp(num_);
      hp(den_);
      break;
  }
  return h;
}

// ---------------------------------------------------------------------------
// literal parser

namespace {

class Parser {
 public:
  Parser(const ScalarContext* ctx, std::string_view s) : ctx_(ctx), s_(s) {}

  Scalar run() {
    skip();
    if (pos_ == s_.size()) throw ParseError("empty scalar literal", pos_);
    Scalar v = expr();
    skip();
    if (pos_ != s_.size()) throw ParseError("unexpected character '" + std::string(1, s_[pos_]) + "'", pos_);
    return v;
  }

 private:
  const ScalarContext* ctx_;
  std::string_view s_;
  std::size_t pos_ = 0;

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Scalar expr() {
    Scalar v = term();
    while (true) {
      if (eat('+'))
        v += term();
      else if (eat('-'))
        v -= term();
      else
        return v;
    }
  }

  Scalar term() {
    Scalar v = unary();
    while (true) {
      if (eat('*')) {
        v *= unary();
      } else if (eat('/')) {
        std::size_t at = pos_;
        Scalar d = unary();
        if (d.is_zero()) throw ParseError("division by zero", at);
        v /= d;
      } else {
        return v;
      }
    }
  }

  Scalar unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  long integer() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError("expected integer", start);
    if (pos_ - start > 9) throw ParseError("exponent too large", start);
    return std::stol(std::string(s_.substr(start, pos_ - start)));
  }

  Scalar power() {
    std::size_t at = pos_;
    Scalar base = atom();
    if (eat('^')) {
      long sign = 1;
      if (eat('-'))
        sign = -1;
      else
        eat('+');
      long k = integer() * sign;
      if (k < 0 && base.is_zero()) throw ParseError("zero to a negative power", at);
      return base.pow(k);
    }
    return base;
  }

  Scalar atom() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of literal", pos_);
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Scalar v = expr();
      if (!eat(')')) throw ParseError("expected ')'", pos_);
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return Scalar(mpq_class(mpz_class(std::string(s_.substr(start, pos_ - start)))));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      if (!ctx_) throw ParseError("symbol '" + name + "' without a scalar context", start);
      if (ctx_->is_cyclotomic()) {
        if (name != "z") throw ParseError("unknown symbol '" + name + "' (cyclotomic generator is z)", start);
        return Scalar::zeta(ctx_, 1);
      }
      const auto& names = ctx_->names();
      for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return Scalar::param(ctx_, static_cast<int>(i));
      throw ParseError("undeclared parameter '" + name + "'", start);
    }
    throw ParseError("unexpected character '" + std::string(1, c) + "'", pos_);
  }
};

}  // namespace

Scalar Scalar::parse(const ScalarContext* ctx, std::string_view text) {
  return Parser(ctx, text).run();
}

// ---------------------------------------------------------------------------

Scalar q_int(long m, const Scalar& q) {
  if (q.is_zero()) throw std::domain_error("q-number at q = 0");
  if (m == 0) return Scalar();
  if (m < 0) return -q_int(-m, q);
  Scalar s, p(1);
  for (long i = 0; i < m; ++i) {
    s += p;
    p *= q;
  }
  return s;
}

Scalar q_factorial(long m, const Scalar& q) {
  if (m < 0) throw std::domain_error("q-factorial of a negative integer");
  if (q.is_zero()) throw std::domain_error("q-factorial at q = 0");
  Scalar r(1);
  for (long n = 1; n <= m; ++n) r *= q_int(n, q);
  return r;
}

Scalar q_binomial(long m, long n, const Scalar& q) {
  if (m < 0) throw std::domain_error("q-binomial with negative top entry");
  if (q.is_zero()) throw std::domain_error("q-binomial at q = 0");
  if (n < 0 || n > m) return Scalar();
  // Pascal rows: C(k+1, j) = C(k, j-1) + q^j C(k, j)
  std::vector<Scalar> row{Scalar(1)};
  std::vector<Scalar> qpow{Scalar(1)};
  for (long k = 0; k < m; ++k) {
    qpow.push_back(qpow.back() * q);
    std::vector<Scalar> next(row.size() + 1);
    for (std::size_t j = 0; j < next.size(); ++j) {
      Scalar v;
      if (j >= 1) v += row[j - 1];
      if (j < row.size()) v += qpow[j] * row[j];
      next[j] = v;
    }
    row = std::move(next);
  }
  return row[n];
}

}  // namespace nichols
