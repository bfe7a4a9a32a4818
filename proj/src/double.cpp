#include "nichols/double.hpp"

#include <algorithm>
#include <stdexcept>

namespace nichols {

bool DoubleKeyLess::operator()(const DoubleKey& a, const DoubleKey& b) const {
  WordLess wl;
  if (a.f != b.f) return wl(a.f, b.f);
  if (a.k != b.k) return a.k < b.k;
  if (a.l != b.l) return a.l < b.l;
  return wl(a.e, b.e);
}

namespace {

Lattice zero(int n) { return Lattice(n, 0); }

bool is_zero_lattice(const Lattice& v) {
  return std::all_of(v.begin(), v.end(), [](int x) { return x == 0; });
}

}  // namespace

Lattice term_degree(const DoubleKey& key, int n) { return word_degree(key.e, n) - word_degree(key.f, n); }

DoubleElement DoubleElement::scalar(int n, const Scalar& c) {
  return monomial(n, DoubleKey{Word(), zero(n), zero(n), Word()}, c);
}

DoubleElement DoubleElement::E(int n, int i) { return monomial(n, DoubleKey{Word(), zero(n), zero(n), letter(i)}); }

DoubleElement DoubleElement::F(int n, int i) { return monomial(n, DoubleKey{letter(i), zero(n), zero(n), Word()}); }

DoubleElement DoubleElement::K(int n, int i, int power) {
  return group_like(n, power * unit(n, i), zero(n));
}

DoubleElement DoubleElement::L(int n, int i, int power) {
  return group_like(n, zero(n), power * unit(n, i));
}

DoubleElement DoubleElement::group_like(int n, const Lattice& k, const Lattice& l, const Scalar& c) {
  return monomial(n, DoubleKey{Word(), k, l, Word()}, c);
}

DoubleElement DoubleElement::monomial(int n, DoubleKey key, const Scalar& c) {
  DoubleElement r(n);
  r.add_term(key, c);
  return r;
}

DoubleElement DoubleElement::from_free(int n, const FreeElement& a) {
  DoubleElement r(n);
  for (const auto& [w, c] : a.terms()) {
    if (a.side() == Side::E)
      r.add_term(DoubleKey{Word(), zero(n), zero(n), w}, c);
    else
      r.add_term(DoubleKey{w, zero(n), zero(n), Word()}, c);
  }
  return r;
}

Scalar DoubleElement::coeff(const DoubleKey& key) const {
  auto it = terms_.find(key);
  return it == terms_.end() ? Scalar(0) : it->second;
}

void DoubleElement::add_term(const DoubleKey& key, const Scalar& c) {
  if (c.is_zero()) return;
  if (static_cast<int>(key.k.size()) != n_ || static_cast<int>(key.l.size()) != n_)
    throw std::invalid_argument("group-like exponent has the wrong rank");
  auto [it, fresh] = terms_.emplace(key, c);
  if (fresh) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

DoubleElement DoubleElement::operator-() const {
  DoubleElement r(n_);
  for (const auto& [k, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), k, -c);
  return r;
}

static void check_rank(int a, int b) {
  if (a != b) throw std::invalid_argument("elements of doubles of different rank");
}

DoubleElement& DoubleElement::operator+=(const DoubleElement& o) {
  check_rank(n_, o.n_);
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

DoubleElement& DoubleElement::operator-=(const DoubleElement& o) {
  check_rank(n_, o.n_);
  for (const auto& [k, c] : o.terms_) add_term(k, -c);
  return *this;
}

DoubleElement DoubleElement::scaled(const Scalar& c) const {
  DoubleElement r(n_);
  if (c.is_zero()) return r;
  for (const auto& [k, x] : terms_) r.terms_.emplace_hint(r.terms_.end(), k, x * c);
  return r;
}

std::optional<Lattice> DoubleElement::degree() const {
  if (terms_.empty()) return std::nullopt;
  const Lattice d = term_degree(terms_.begin()->first, n_);
  for (const auto& [k, c] : terms_)
    if (term_degree(k, n_) != d) return std::nullopt;
  return d;
}

std::map<Lattice, DoubleElement> DoubleElement::graded_components() const {
  std::map<Lattice, DoubleElement> r;
  for (const auto& [k, c] : terms_) {
    auto it = r.try_emplace(term_degree(k, n_), n_).first;
    it->second.terms_.emplace_hint(it->second.terms_.end(), k, c);
  }
  return r;
}

std::optional<FreeElement> DoubleElement::as_E() const {
  FreeElement r(Side::E);
  for (const auto& [k, c] : terms_) {
    if (!k.f.empty() || !is_zero_lattice(k.k) || !is_zero_lattice(k.l)) return std::nullopt;
    r.add_term(k.e, c);
  }
  return r;
}

std::optional<FreeElement> DoubleElement::as_F() const {
  FreeElement r(Side::F);
  for (const auto& [k, c] : terms_) {
    if (!k.e.empty() || !is_zero_lattice(k.k) || !is_zero_lattice(k.l)) return std::nullopt;
    r.add_term(k.f, c);
  }
  return r;
}

namespace {

std::string key_string(const DoubleKey& k) {
  std::vector<std::string> parts;
  if (!k.f.empty()) parts.push_back(word_to_string(k.f, Side::F));
  std::string kl;
  if (!is_zero_lattice(k.k)) kl = "K^" + to_string(k.k);
  if (!is_zero_lattice(k.l)) kl += (kl.empty() ? "" : " ") + ("L^" + to_string(k.l));
  if (!kl.empty()) parts.push_back(kl);
  if (!k.e.empty()) parts.push_back(word_to_string(k.e, Side::E));
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? " * " : "") + parts[i];
  return s;
}

nlohmann::json word_json(const Word& w) {
  nlohmann::json a = nlohmann::json::array();
  for (char c : w) a.push_back(static_cast<int>(c) + 1);
  return a;
}

}  // namespace

std::string DoubleElement::to_string() const {
  std::vector<std::string> parts;
  for (const auto& [k, c] : terms_) parts.push_back(term_string(c, key_string(k)));
  return join_terms(parts);
}

nlohmann::json DoubleElement::to_json() const {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [k, c] : terms_)
    terms.push_back({{"F", word_json(k.f)}, {"K", k.k}, {"L", k.l}, {"E", word_json(k.e)}, {"coeff", c.to_string()}});
  return {{"rank", n_}, {"terms", terms}};
}

// ---------------------------------------------------------------------------

DoubleAlgebra::DoubleAlgebra(Bicharacter chi) : chi_(std::move(chi)) {}

std::shared_ptr<DoubleAlgebra> DoubleAlgebra::shared(const Bicharacter& chi) {
  static std::mutex m;
  static std::unordered_map<std::string, std::shared_ptr<DoubleAlgebra>> registry;
  std::lock_guard<std::mutex> lock(m);
  auto& slot = registry[chi.key()];
  if (!slot) slot = std::make_shared<DoubleAlgebra>(chi);
  return slot;
}

Scalar DoubleAlgebra::chi_value(const Lattice& mu, const Lattice& nu) {
  if (is_zero_lattice(mu) || is_zero_lattice(nu)) return Scalar(1);
  std::lock_guard<std::recursive_mutex> lock(mu_);
  std::string key = to_string(mu) + to_string(nu);
  auto it = chi_cache_.find(key);
  if (it != chi_cache_.end()) return it->second;
  Scalar v = chi_.eval(mu, nu);
  chi_cache_.emplace(std::move(key), v);
  return v;
}

const DoubleElement& DoubleAlgebra::straighten(const Word& e, const Word& f) {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto key = std::make_pair(e, f);
  auto it = memo_.find(key);
  if (it != memo_.end()) return *it->second;

  const int n = rank();
  auto r = std::make_unique<DoubleElement>(n);
  if (e.empty() || f.empty()) {
    r->add_term(DoubleKey{f, zero(n), zero(n), e}, Scalar(1));
  } else {
    // E F_j = F_j E + derK_j(E) K_j - L_j derL_j(E)
    const int j = f[0];
    const Word rest = f.substr(1);
    const Lattice aj = unit(n, j);
    const Lattice drest = word_degree(rest, n);
    for (const auto& [k, c] : straighten(e, rest).terms())
      r->add_term(DoubleKey{letter(j) + k.f, k.k, k.l, k.e}, c);
    const FreeElement ee = FreeElement::monomial(Side::E, e);
    const Scalar krest = chi_value(aj, drest).inverse();
    const FreeElement dk = derK(chi_, j, ee), dl = derL(chi_, j, ee);
    for (const auto& [w, c] : dk.terms())
      for (const auto& [k, d] : straighten(w, rest).terms())
        r->add_term(DoubleKey{k.f, k.k + aj, k.l, k.e},
                    c * d * krest * chi_value(aj, word_degree(k.e, n)).inverse());
    for (const auto& [w, c] : dl.terms())
      for (const auto& [k, d] : straighten(w, rest).terms())
        r->add_term(DoubleKey{k.f, k.k, k.l + aj, k.e}, -c * d * chi_value(word_degree(k.f, n), aj));
  }
  return *memo_.emplace(std::move(key), std::move(r)).first->second;
}

void DoubleAlgebra::mul_terms(const DoubleKey& a, const Scalar& ca, const DoubleKey& b, const Scalar& cb,
                              DoubleElement& out) {
  const int n = rank();
  const Scalar cab = ca * cb;
  for (const auto& [k, c] : straighten(a.e, b.f).terms()) {
    const Lattice df = word_degree(k.f, n), de = word_degree(k.e, n);
    // K^a.k L^a.l moves right past F_{k.f}; E_{k.e} moves right past K^b.k L^b.l
    Scalar s = cab * c;
    s *= chi_value(a.k, df).inverse();
    s *= chi_value(df, a.l);
    s *= chi_value(b.k, de).inverse();
    s *= chi_value(de, b.l);
    out.add_term(DoubleKey{a.f + k.f, a.k + k.k + b.k, a.l + k.l + b.l, k.e + b.e}, s);
  }
}

DoubleElement DoubleAlgebra::mul(const DoubleElement& a, const DoubleElement& b) {
  if (a.rank() != rank() || b.rank() != rank()) throw std::invalid_argument("rank mismatch in dmul");
  std::lock_guard<std::recursive_mutex> lock(mu_);
  DoubleElement out(rank());
  for (const auto& [ka, ca] : a.terms())
    for (const auto& [kb, cb] : b.terms()) mul_terms(ka, ca, kb, cb, out);
  return out;
}

DoubleElement dmul(const Bicharacter& chi, const DoubleElement& a, const DoubleElement& b) {
  return DoubleAlgebra::shared(chi)->mul(a, b);
}

DoubleElement dpow(const Bicharacter& chi, const DoubleElement& a, int m) {
  if (m < 0) throw std::invalid_argument("negative power of a general element");
  DoubleElement r = DoubleElement::one(chi.rank());
  for (int k = 0; k < m; ++k) r = dmul(chi, r, a);
  return r;
}

DoubleElement commutator(const Bicharacter& chi, const DoubleElement& a, const DoubleElement& b) {
  auto alg = DoubleAlgebra::shared(chi);
  return alg->mul(a, b) - alg->mul(b, a);
}

DoubleElement product(const Bicharacter& chi, const std::vector<DoubleElement>& factors) {
  auto alg = DoubleAlgebra::shared(chi);
  DoubleElement r = DoubleElement::one(chi.rank());
  for (const auto& x : factors) r = alg->mul(r, x);
  return r;
}

DoubleElement conj_K(const Bicharacter& chi, const Lattice& mu, const DoubleElement& a) {
  auto alg = DoubleAlgebra::shared(chi);
  DoubleElement r(a.rank());
  for (const auto& [k, c] : a.terms()) r.add_term(k, c * alg->chi_value(mu, term_degree(k, a.rank())));
  return r;
}

DoubleElement conj_L(const Bicharacter& chi, const Lattice& mu, const DoubleElement& a) {
  auto alg = DoubleAlgebra::shared(chi);
  DoubleElement r(a.rank());
  for (const auto& [k, c] : a.terms()) r.add_term(k, c * alg->chi_value(term_degree(k, a.rank()), mu).inverse());
  return r;
}

DoubleElement ad_E(const Bicharacter& chi, int p, const DoubleElement& a) {
  const int n = chi.rank();
  const DoubleElement ep = DoubleElement::E(n, p);
  return dmul(chi, ep, a) - dmul(chi, conj_K(chi, unit(n, p), a), ep);
}

DoubleElement ad_prime_E(const Bicharacter& chi, int p, const DoubleElement& a) {
  const int n = chi.rank();
  const DoubleElement ep = DoubleElement::E(n, p);
  return dmul(chi, ep, a) - dmul(chi, conj_L(chi, unit(n, p), a), ep);
}

// ---------------------------------------------------------------------------

namespace {

class PairingTable {
 public:
  explicit PairingTable(const Bicharacter& chi) : chi_(chi) {}

  // eta(E_{w_1} x', F_v) = - sum_{t: v_t = w_1} chi(alpha_{w_1}, deg v_{<t}) eta(x', F_{v without t})
  Scalar eta(const Word& w, const Word& v) {
    if (w.size() != v.size()) return Scalar(0);
    if (w.empty()) return Scalar(1);
    auto key = std::make_pair(w, v);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    Scalar r(0), f(1);
    const Word rest = w.substr(1);
    for (std::size_t t = 0; t < v.size(); ++t) {
      if (v[t] == w[0]) r -= f * eta(rest, v.substr(0, t) + v.substr(t + 1));
      f *= chi_.q(w[0], v[t]);
    }
    memo_.emplace(std::move(key), r);
    return r;
  }

 private:
  const Bicharacter& chi_;
  std::map<std::pair<Word, Word>, Scalar> memo_;
};

}  // namespace

Scalar pairing(const Bicharacter& chi, const FreeElement& e, const Lattice& mu, const FreeElement& f,
               const Lattice& nu) {
  if (e.side() != Side::E || f.side() != Side::F)
    throw std::invalid_argument("pairing takes an E-side and an F-side element");
  PairingTable t(chi);
  Scalar r(0);
  for (const auto& [w, c] : e.terms())
    for (const auto& [v, d] : f.terms()) r += c * d * t.eta(w, v);
  return r * chi.eval(mu, nu);
}

Scalar pairing(const Bicharacter& chi, const FreeElement& e, const FreeElement& f) {
  const Lattice z(chi.rank(), 0);
  return pairing(chi, e, z, f, z);
}

int pairing_rank(const Bicharacter& chi, const Lattice& mu) {
  const std::vector<Word> ws = words_of_degree(mu);
  PairingTable t(chi);
  Mat m;
  for (const Word& w : ws) {
    Vec row;
    for (const Word& v : ws) row.push_back(t.eta(w, v));
    m.push_back(std::move(row));
  }
  return rank(m);
}

// ---------------------------------------------------------------------------

namespace {

FreeElement reduce_graded(const FreeElement& x, const SideReducer& red, int n) {
  FreeElement r(x.side());
  for (const auto& [mu, part] : x.graded_components(n)) r += red(part);
  return r;
}

}  // namespace

DoubleElement reduce_modulo(const DoubleElement& a, const SideReducer& re, const SideReducer& rf) {
  const int n = a.rank();
  struct Outer {
    Word w;
    Lattice k, l;
    bool operator<(const Outer& o) const {
      if (w != o.w) return WordLess()(w, o.w);
      return std::tie(k, l) < std::tie(o.k, o.l);
    }
  };
  std::map<Outer, FreeElement> by_f;
  for (const auto& [k, c] : a.terms())
    by_f.try_emplace(Outer{k.f, k.k, k.l}, Side::E).first->second.add_term(k.e, c);
  std::map<Outer, FreeElement> by_e;
  for (const auto& [o, x] : by_f) {
    const FreeElement rx = reduce_graded(x, re, n);
    for (const auto& [w, c] : rx.terms())
      by_e.try_emplace(Outer{w, o.k, o.l}, Side::F).first->second.add_term(o.w, c);
  }
  DoubleElement r(n);
  for (const auto& [o, y] : by_e) {
    const FreeElement ry = reduce_graded(y, rf, n);
    for (const auto& [v, c] : ry.terms()) r.add_term(DoubleKey{v, o.k, o.l, o.w}, c);
  }
  return r;
}

namespace {

void check_caps(const DoubleElement& a, int cap) {
  for (const auto& [k, c] : a.terms()) {
    const int d = static_cast<int>(std::max(k.e.size(), k.f.size()));
    if (d > cap) throw DegreeCapExceeded(d, cap);
  }
}

}  // namespace

DoubleElement reduce_in_U(const Bicharacter& chi, const DoubleElement& a, int cap) {
  check_caps(a, cap);
  auto re = NicholsReducer::shared(chi, cap);
  auto rf = NicholsReducer::shared(chi.op(), cap);
  return reduce_modulo(
      a, [&](const FreeElement& x) { return re->normal_form(x); },
      [&](const FreeElement& y) { return rf->normal_form(y); });
}

bool double_is_zero_in_U(const Bicharacter& chi, const DoubleElement& a, int cap) {
  return reduce_in_U(chi, a, cap).is_zero();
}

// ---------------------------------------------------------------------------

namespace {

GroupLike gl(const Lattice& k, const Lattice& l, const Scalar& c = Scalar(1)) { return GroupLike{c, k, l}; }

bool gl_equal(const GroupLike& a, const GroupLike& b) { return a.c == b.c && a.k == b.k && a.l == b.l; }

// g(c K^k L^l) for a map whose group-like images are known
GroupLike image_of(const AlgebraMap& g, const GroupLike& x) {
  const int n = g.target.rank();
  GroupLike r{x.c, Lattice(n, 0), Lattice(n, 0)};
  for (int i = 0; i < g.rank(); ++i) {
    if (x.k[i]) {
      r.c *= g.K[i].c.pow(x.k[i]);
      r.k = r.k + x.k[i] * g.K[i].k;
      r.l = r.l + x.k[i] * g.K[i].l;
    }
    if (x.l[i]) {
      r.c *= g.L[i].c.pow(x.l[i]);
      r.k = r.k + x.l[i] * g.L[i].k;
      r.l = r.l + x.l[i] * g.L[i].l;
    }
  }
  return r;
}

AlgebraMap skeleton(const std::string& name, const Bicharacter& source, const Bicharacter& target) {
  if (source.rank() != target.rank()) throw std::invalid_argument("source and target ranks differ");
  AlgebraMap f;
  f.name = name;
  f.source = source;
  f.target = target;
  const int n = source.rank();
  for (int i = 0; i < n; ++i) {
    f.K.push_back(gl(unit(n, i), zero(n)));
    f.L.push_back(gl(zero(n), unit(n, i)));
    f.E.push_back(DoubleElement::E(n, i));
    f.F.push_back(DoubleElement::F(n, i));
  }
  return f;
}

}  // namespace

AlgebraMap identity_map(const Bicharacter& chi) { return skeleton("id", chi, chi); }

AlgebraMap phi_diag(const Bicharacter& chi, const std::vector<Scalar>& a) {
  if (static_cast<int>(a.size()) != chi.rank()) throw std::invalid_argument("twist vector has the wrong length");
  AlgebraMap f = skeleton("phi_a", chi, chi);
  for (int i = 0; i < chi.rank(); ++i) {
    if (a[i].is_zero()) throw std::invalid_argument("twist entries must be nonzero");
    f.E[i] = f.E[i].scaled(a[i]);
    f.F[i] = f.F[i].scaled(a[i].inverse());
  }
  return f;
}

AlgebraMap phi_perm(const Bicharacter& chi, const std::vector<int>& tau) {
  const int n = chi.rank();
  if (static_cast<int>(tau.size()) != n) throw std::invalid_argument("permutation has the wrong length");
  std::vector<int> seen(n, 0);
  for (int t : tau) {
    if (t < 0 || t >= n || seen[t]++) throw std::invalid_argument("not a permutation");
  }
  IntMatrix m(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) m[tau[i]][i] = 1;
  AlgebraMap f = skeleton("phi_tau", chi, chi.pullback(m));
  for (int i = 0; i < n; ++i) {
    f.K[i] = gl(unit(n, tau[i]), zero(n));
    f.L[i] = gl(zero(n), unit(n, tau[i]));
    f.E[i] = DoubleElement::E(n, tau[i]);
    f.F[i] = DoubleElement::F(n, tau[i]);
  }
  return f;
}

AlgebraMap phi_shift(const Bicharacter& chi, int m) {
  const int n = chi.rank();
  AlgebraMap f = skeleton("phi_m", chi, chi);
  for (int i = 0; i < n; ++i) {
    const Lattice u = unit(n, i);
    f.E[i] = DoubleElement::monomial(n, DoubleKey{Word(), m * u, -m * u, letter(i)});
    f.F[i] = DoubleElement::monomial(n, DoubleKey{letter(i), -m * u, m * u, Word()});
  }
  return f;
}

AlgebraMap phi_1(const Bicharacter& chi) {
  const int n = chi.rank();
  AlgebraMap f = skeleton("phi1", chi, chi);
  for (int i = 0; i < n; ++i) {
    const Lattice u = unit(n, i);
    f.K[i] = gl(-1 * u, zero(n));
    f.L[i] = gl(zero(n), -1 * u);
    f.E[i] = DoubleElement::monomial(n, DoubleKey{letter(i), zero(n), -1 * u, Word()});
    f.F[i] = DoubleElement::monomial(n, DoubleKey{Word(), -1 * u, zero(n), letter(i)});
  }
  return f;
}

AlgebraMap phi_2(const Bicharacter& chi) {
  const int n = chi.rank();
  AlgebraMap f = skeleton("phi2", chi, chi.inverse());
  for (int i = 0; i < n; ++i) {
    f.E[i] = DoubleElement::F(n, i);
    f.F[i] = -DoubleElement::E(n, i);
  }
  return f;
}

AlgebraMap phi_3(const Bicharacter& chi) {
  const int n = chi.rank();
  AlgebraMap f = skeleton("phi3", chi, chi.op());
  for (int i = 0; i < n; ++i) {
    std::swap(f.K[i], f.L[i]);
    f.E[i] = DoubleElement::F(n, i);
    f.F[i] = DoubleElement::E(n, i);
  }
  return f;
}

AlgebraMap phi_4(const Bicharacter& chi) {
  const int n = chi.rank();
  AlgebraMap f = skeleton("phi4", chi, chi);
  f.anti = true;
  for (int i = 0; i < n; ++i) {
    f.E[i] = DoubleElement::F(n, i);
    f.F[i] = DoubleElement::E(n, i);
  }
  return f;
}

AlgebraMap antipode(const Bicharacter& chi) {
  AlgebraMap s = compose(phi_1(chi), compose(phi_4(chi), phi_diag(chi, std::vector<Scalar>(chi.rank(), Scalar(-1)))));
  s.name = "S";
  return s;
}

DoubleElement apply(const AlgebraMap& f, const DoubleElement& a, const ElementReducer& reduce) {
  if (a.rank() != f.rank()) throw std::invalid_argument("element does not live over the map's source");
  const int n = f.target.rank();
  auto alg = DoubleAlgebra::shared(f.target);
  auto red = [&](DoubleElement x) { return reduce ? reduce(x) : x; };

  std::map<Word, DoubleElement, WordLess> fimg, eimg;
  fimg.emplace(Word(), DoubleElement::one(n));
  eimg.emplace(Word(), DoubleElement::one(n));
  // image of a word, built from the image of its prefix
  std::function<const DoubleElement&(std::map<Word, DoubleElement, WordLess>&, const std::vector<DoubleElement>&,
                                     const Word&)>
      word_image = [&](auto& cache, const auto& gens, const Word& w) -> const DoubleElement& {
    auto it = cache.find(w);
    if (it != cache.end()) return it->second;
    const DoubleElement& pre = word_image(cache, gens, w.substr(0, w.size() - 1));
    const DoubleElement& g = gens[static_cast<unsigned char>(w.back())];
    DoubleElement x = f.anti ? alg->mul(g, pre) : alg->mul(pre, g);
    return cache.emplace(w, red(std::move(x))).first->second;
  };

  DoubleElement out(n);
  for (const auto& [k, c] : a.terms()) {
    const GroupLike g = image_of(f, GroupLike{c, k.k, k.l});
    const DoubleElement mid = DoubleElement::group_like(n, g.k, g.l, g.c);
    const DoubleElement& fi = word_image(fimg, f.F, k.f);
    const DoubleElement& ei = word_image(eimg, f.E, k.e);
    out += f.anti ? alg->mul(alg->mul(ei, mid), fi) : alg->mul(alg->mul(fi, mid), ei);
  }
  return red(std::move(out));
}

AlgebraMap compose(const AlgebraMap& g, const AlgebraMap& f, const ElementReducer& reduce) {
  if (f.target != g.source) throw std::invalid_argument("cannot compose " + g.name + " after " + f.name);
  AlgebraMap h;
  h.name = g.name + "*" + f.name;
  h.source = f.source;
  h.target = g.target;
  h.anti = f.anti != g.anti;
  for (int i = 0; i < f.rank(); ++i) {
    h.K.push_back(image_of(g, f.K[i]));
    h.L.push_back(image_of(g, f.L[i]));
    h.E.push_back(apply(g, f.E[i], reduce));
    h.F.push_back(apply(g, f.F[i], reduce));
  }
  return h;
}

bool maps_equal(const AlgebraMap& f, const AlgebraMap& g) {
  if (f.source != g.source || f.target != g.target || f.anti != g.anti) return false;
  for (int i = 0; i < f.rank(); ++i)
    if (!gl_equal(f.K[i], g.K[i]) || !gl_equal(f.L[i], g.L[i]) || f.E[i] != g.E[i] || f.F[i] != g.F[i])
      return false;
  return true;
}

bool maps_equal_in_U(const AlgebraMap& f, const AlgebraMap& g, int cap) {
  if (f.source != g.source || f.target != g.target || f.anti != g.anti) return false;
  for (int i = 0; i < f.rank(); ++i) {
    if (!gl_equal(f.K[i], g.K[i]) || !gl_equal(f.L[i], g.L[i])) return false;
    if (!double_is_zero_in_U(f.target, f.E[i] - g.E[i], cap)) return false;
    if (!double_is_zero_in_U(f.target, f.F[i] - g.F[i], cap)) return false;
  }
  return true;
}

}  // namespace nichols
