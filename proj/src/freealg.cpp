#include "nichols/freealg.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace nichols {

Word letter(int i) { return Word(1, static_cast<char>(i)); }

Lattice word_degree(const Word& w, int n) {
  Lattice d(n, 0);
  for (char c : w) ++d.at(static_cast<unsigned char>(c));
  return d;
}

std::string word_to_string(const Word& w, Side side) {
  std::string s;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k) s += '*';
    s += side == Side::E ? 'E' : 'F';
    s += std::to_string(static_cast<int>(w[k]) + 1);
  }
  return s;
}

FreeElement FreeElement::scalar(Side side, const Scalar& c) {
  FreeElement r(side);
  r.add_term(Word(), c);
  return r;
}

FreeElement FreeElement::generator(Side side, int i) { return monomial(side, letter(i)); }

FreeElement FreeElement::monomial(Side side, const Word& w, const Scalar& c) {
  FreeElement r(side);
  r.add_term(w, c);
  return r;
}

Scalar FreeElement::coeff(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Scalar(0) : it->second;
}

void FreeElement::add_term(const Word& w, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.emplace(w, c);
  if (fresh) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

FreeElement FreeElement::operator-() const {
  FreeElement r(side_);
  for (const auto& [w, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), w, -c);
  return r;
}

static void check_side(Side a, Side b) {
  if (a != b) throw std::invalid_argument("E-side and F-side elements cannot be combined");
}

FreeElement& FreeElement::operator+=(const FreeElement& o) {
  check_side(side_, o.side_);
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

FreeElement& FreeElement::operator-=(const FreeElement& o) {
  check_side(side_, o.side_);
  for (const auto& [w, c] : o.terms_) add_term(w, -c);
  return *this;
}

FreeElement operator*(const FreeElement& a, const FreeElement& b) {
  check_side(a.side_, b.side_);
  FreeElement r(a.side_);
  for (const auto& [u, c] : a.terms_)
    for (const auto& [v, d] : b.terms_) r.add_term(u + v, c * d);
  return r;
}

FreeElement FreeElement::scaled(const Scalar& c) const {
  FreeElement r(side_);
  if (c.is_zero()) return r;
  for (const auto& [w, x] : terms_) r.terms_.emplace_hint(r.terms_.end(), w, x * c);
  return r;
}

bool FreeElement::operator==(const FreeElement& o) const {
  return side_ == o.side_ && terms_ == o.terms_;
}

std::optional<Lattice> FreeElement::degree(int n) const {
  if (terms_.empty()) return std::nullopt;
  Lattice d = word_degree(terms_.begin()->first, n);
  for (const auto& [w, c] : terms_)
    if (word_degree(w, n) != d) return std::nullopt;
  return d;
}

std::map<Lattice, FreeElement> FreeElement::graded_components(int n) const {
  std::map<Lattice, FreeElement> r;
  for (const auto& [w, c] : terms_) {
    auto it = r.try_emplace(word_degree(w, n), side_).first;
    it->second.terms_.emplace_hint(it->second.terms_.end(), w, c);
  }
  return r;
}

FreeElement FreeElement::with_side(Side s) const {
  FreeElement r(s);
  r.terms_ = terms_;
  return r;
}

namespace {

bool atomic(const std::string& s) {
  for (std::size_t k = 0; k < s.size(); ++k) {
    const char c = s[k];
    if ((c == '+' || c == '-') && k > 0 && s[k - 1] != '^' && s[k - 1] != '(') return false;
  }
  return s.find('/') == std::string::npos || s.find('(') == std::string::npos;
}

}  // namespace

std::string term_string(const Scalar& c, const std::string& word) {
  std::string cs = c.to_string();
  if (word.empty()) return cs;
  if (cs == "1") return word;
  if (cs == "-1") return "-" + word;
  if (!atomic(cs)) cs = "(" + cs + ")";
  return cs + "*" + word;
}

std::string join_terms(const std::vector<std::string>& parts) {
  if (parts.empty()) return "0";
  std::string s = parts[0];
  for (std::size_t k = 1; k < parts.size(); ++k) {
    if (parts[k][0] == '-')
      s += " - " + parts[k].substr(1);
    else
      s += " + " + parts[k];
  }
  return s;
}

std::string FreeElement::to_string() const {
  std::vector<std::string> parts;
  for (const auto& [w, c] : terms_) parts.push_back(term_string(c, word_to_string(w, side_)));
  return join_terms(parts);
}

namespace {

// chi(deg w, alpha_p)
Scalar chi_right(const Bicharacter& chi, const Word& w, int p) {
  Scalar r(1);
  for (char c : w) r *= chi.q(c, p);
  return r;
}

}  // namespace

FreeElement act_K(const Bicharacter& chi, const Lattice& mu, const FreeElement& a) {
  const int n = chi.rank();
  FreeElement r(a.side());
  for (const auto& [w, c] : a.terms()) {
    Lattice nu = word_degree(w, n);
    if (a.side() == Side::F) nu = -1 * nu;
    r.add_term(w, c * chi.eval(mu, nu));
  }
  return r;
}

FreeElement act_L(const Bicharacter& chi, const Lattice& mu, const FreeElement& a) {
  const int n = chi.rank();
  FreeElement r(a.side());
  for (const auto& [w, c] : a.terms()) {
    Lattice nu = word_degree(w, n);
    if (a.side() == Side::F) nu = -1 * nu;
    r.add_term(w, c * chi.eval(nu, mu).inverse());
  }
  return r;
}

FreeElement derK(const Bicharacter& chi, int p, const FreeElement& a) {
  if (a.side() != Side::E) throw std::invalid_argument("derK acts on the E-side only");
  FreeElement r(Side::E);
  for (const auto& [w, c] : a.terms()) {
    Scalar f(1);  // chi(alpha_p, deg of the suffix after position t)
    for (std::size_t t = w.size(); t-- > 0;) {
      if (w[t] == p) r.add_term(w.substr(0, t) + w.substr(t + 1), c * f);
      f *= chi.q(p, w[t]);
    }
  }
  return r;
}

FreeElement derL(const Bicharacter& chi, int p, const FreeElement& a) {
  if (a.side() != Side::E) throw std::invalid_argument("derL acts on the E-side only");
  FreeElement r(Side::E);
  for (const auto& [w, c] : a.terms()) {
    Scalar f(1);  // chi(deg of the prefix before t, alpha_p)
    for (std::size_t t = 0; t < w.size(); ++t) {
      if (w[t] == p) r.add_term(w.substr(0, t) + w.substr(t + 1), c * f);
      f *= chi.q(w[t], p);
    }
  }
  return r;
}

FreeElement ad_E(const Bicharacter& chi, int p, const FreeElement& x) {
  const FreeElement ep = FreeElement::generator(x.side(), p);
  return ep * x - act_K(chi, unit(chi.rank(), p), x) * ep;
}

Tensor braided_coproduct(const Bicharacter& chi, const FreeElement& a) {
  if (a.side() != Side::E) throw std::invalid_argument("braided coproduct is defined on the E-side");
  Tensor t;
  for (const auto& [w, c] : a.terms()) {
    const std::size_t k = w.size();
    if (k > 24) throw std::length_error("word too long for the subset expansion");
    for (unsigned long mask = 0; mask < (1ul << k); ++mask) {
      // bit set: letter goes to the right tensor factor
      Word left, right;
      Scalar f(1);
      for (std::size_t s = 0; s < k; ++s) {
        if (mask >> s & 1ul) {
          right += w[s];
        } else {
          left += w[s];
          f *= chi_right(chi, right, w[s]);
        }
      }
      auto key = std::make_pair(left, right);
      auto it = t.find(key);
      Scalar add = c * f;
      if (it == t.end()) {
        if (!add.is_zero()) t.emplace(std::move(key), std::move(add));
      } else {
        it->second += add;
        if (it->second.is_zero()) t.erase(it);
      }
    }
  }
  return t;
}

std::string tensor_to_string(const Tensor& t) {
  std::vector<std::string> parts;
  for (const auto& [lr, c] : t) {
    std::string l = lr.first.empty() ? "1" : word_to_string(lr.first, Side::E);
    std::string r = lr.second.empty() ? "1" : word_to_string(lr.second, Side::E);
    parts.push_back(term_string(c, l + " (x) " + r));
  }
  return join_terms(parts);
}

namespace {

void check_root_vector_args(const Bicharacter& chi, int p, int i, int m) {
  if (i == p) throw std::invalid_argument("root vector E_{i,m(p)} needs i != p");
  if (m < 0) throw std::invalid_argument("root vector index m must be nonnegative");
  if (p < 0 || i < 0 || p >= chi.rank() || i >= chi.rank()) throw std::out_of_range("index out of range");
}

FreeElement root_vector_recursive(const Bicharacter& chi, int p, int i, int m, bool plus) {
  check_root_vector_args(chi, p, i, m);
  const Lattice ap = unit(chi.rank(), p);
  const FreeElement ep = FreeElement::generator(Side::E, p);
  FreeElement x = FreeElement::generator(Side::E, i);
  for (int k = 0; k < m; ++k)
    x = ep * x - (plus ? act_K(chi, ap, x) : act_L(chi, ap, x)) * ep;
  return x;
}

FreeElement root_vector_closed(const Bicharacter& chi, int p, int i, int m, bool plus) {
  check_root_vector_args(chi, p, i, m);
  const Scalar& qpp = chi.q(p, p);
  const Scalar base = plus ? qpp : qpp.inverse();
  const Scalar lead = plus ? chi.q(p, i) : chi.q(i, p).inverse();
  FreeElement r(Side::E);
  Scalar sign_lead(1), qpow(1);  // (-1)^s lead^s, base^{s(s-1)/2}
  for (int s = 0; s <= m; ++s) {
    Word w(m - s, static_cast<char>(p));
    w += static_cast<char>(i);
    w += Word(s, static_cast<char>(p));
    r.add_term(w, sign_lead * qpow * q_binomial(m, s, base));
    sign_lead *= -lead;
    qpow *= base.pow(s);
  }
  return r;
}

}  // namespace

FreeElement E_plus(const Bicharacter& chi, int p, int i, int m) {
  FreeElement r = root_vector_recursive(chi, p, i, m, true);
  if (r != root_vector_closed(chi, p, i, m, true))
    throw std::logic_error("E^+ recursion disagrees with its closed form");
  return r;
}

FreeElement E_minus(const Bicharacter& chi, int p, int i, int m) {
  FreeElement r = root_vector_recursive(chi, p, i, m, false);
  if (r != root_vector_closed(chi, p, i, m, false))
    throw std::logic_error("E^- recursion disagrees with its closed form");
  return r;
}

FreeElement E_plus_closed(const Bicharacter& chi, int p, int i, int m) {
  return root_vector_closed(chi, p, i, m, true);
}

FreeElement E_minus_closed(const Bicharacter& chi, int p, int i, int m) {
  return root_vector_closed(chi, p, i, m, false);
}

FreeElement F_plus(const Bicharacter& chi, int p, int i, int m) {
  return E_plus(chi.op(), p, i, m).with_side(Side::F);
}

FreeElement F_minus(const Bicharacter& chi, int p, int i, int m) {
  return E_minus(chi.op(), p, i, m).with_side(Side::F);
}

DegreeCapExceeded::DegreeCapExceeded(int degree, int cap)
    : std::runtime_error("degree " + std::to_string(degree) + " exceeds the degree cap " +
                         std::to_string(cap)) {}

std::vector<Word> words_of_degree(const Lattice& mu) {
  std::vector<Word> out;
  Lattice left = mu;
  int total = 0;
  for (int x : mu) {
    if (x < 0) return out;
    total += x;
  }
  Word cur;
  std::function<void()> rec = [&]() {
    if (static_cast<int>(cur.size()) == total) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = 0; i < left.size(); ++i) {
      if (!left[i]) continue;
      --left[i];
      cur.push_back(static_cast<char>(i));
      rec();
      cur.pop_back();
      ++left[i];
    }
  };
  rec();
  return out;
}

NicholsReducer::NicholsReducer(Bicharacter chi, int degree_cap)
    : chi_(std::move(chi)), cap_(degree_cap) {}

std::shared_ptr<NicholsReducer> NicholsReducer::shared(const Bicharacter& chi, int degree_cap) {
  static std::mutex m;
  static std::unordered_map<std::string, std::shared_ptr<NicholsReducer>> registry;
  std::lock_guard<std::mutex> lock(m);
  auto& slot = registry[chi.key()];
  if (!slot) slot = std::make_shared<NicholsReducer>(chi, degree_cap);
  if (slot->cap_ < degree_cap) slot->cap_ = degree_cap;
  return slot;
}

const NicholsReducer::Component& NicholsReducer::component(const Lattice& mu) {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  auto it = memo_.find(mu);
  if (it != memo_.end()) return *it->second;
  int total = 0;
  for (int x : mu) {
    if (x < 0) throw std::invalid_argument("degree must lie in N_0^I");
    total += x;
  }
  if (total > cap_) throw DegreeCapExceeded(total, cap_);

  auto comp = std::make_unique<Component>();
  comp->words = words_of_degree(mu);
  const int nw = static_cast<int>(comp->words.size());
  for (int k = 0; k < nw; ++k) comp->index.emplace(comp->words[k], k);
  if (total == 0) {
    comp->pivots = {0};
    comp->rref = {Vec{Scalar(1)}};
  } else {
    const int n = chi_.rank();
    EchelonBasis eb(nw);
    for (int p = 0; p < n && eb.rank() < nw; ++p) {
      if (!mu[p]) continue;
      const Component& low = component(mu - unit(n, p));
      const int d = static_cast<int>(low.rref.size());
      Mat rows(d, Vec(nw));
      for (int k = 0; k < nw; ++k) {
        const Word& w = comp->words[k];
        Scalar f(1);
        for (std::size_t t = w.size(); t-- > 0;) {
          if (w[t] == p) {
            const int col = low.index.at(w.substr(0, t) + w.substr(t + 1));
            for (int r = 0; r < d; ++r)
              if (!low.rref[r][col].is_zero()) rows[r][k] += f * low.rref[r][col];
          }
          f *= chi_.q(p, w[t]);
        }
      }
      for (auto& row : rows) {
        if (eb.rank() == nw) break;
        if (!nichols::is_zero(row)) eb.insert(std::move(row));
      }
    }
    comp->pivots = eb.pivots();
    comp->rref = eb.rows();
    // order rows by pivot column so basis words come out in WordLess order
    std::vector<int> perm(comp->pivots.size());
    for (std::size_t k = 0; k < perm.size(); ++k) perm[k] = static_cast<int>(k);
    std::sort(perm.begin(), perm.end(), [&](int a, int b) { return comp->pivots[a] < comp->pivots[b]; });
    std::vector<int> piv;
    Mat rr;
    for (int k : perm) {
      piv.push_back(comp->pivots[k]);
      rr.push_back(std::move(comp->rref[k]));
    }
    comp->pivots = std::move(piv);
    comp->rref = std::move(rr);
  }
  return *memo_.emplace(mu, std::move(comp)).first->second;
}

int NicholsReducer::dim(const Lattice& mu) { return static_cast<int>(component(mu).pivots.size()); }

std::vector<Word> NicholsReducer::basis(const Lattice& mu) {
  const Component& c = component(mu);
  std::vector<Word> b;
  for (int k : c.pivots) b.push_back(c.words[k]);
  return b;
}

Vec NicholsReducer::coords(const Lattice& mu, const FreeElement& a) {
  if (a.side() != Side::E) throw std::invalid_argument("Nichols reduction works on the E-side");
  const Component& c = component(mu);
  Vec v(c.pivots.size());
  for (const auto& [w, x] : a.terms()) {
    auto it = c.index.find(w);
    if (it == c.index.end()) throw std::invalid_argument("element is not homogeneous of the given degree");
    for (std::size_t r = 0; r < v.size(); ++r)
      if (!c.rref[r][it->second].is_zero()) v[r] += x * c.rref[r][it->second];
  }
  return v;
}

bool NicholsReducer::is_zero(const FreeElement& a) {
  for (const auto& [mu, part] : a.graded_components(chi_.rank()))
    if (!nichols::is_zero(coords(mu, part))) return false;
  return true;
}

FreeElement NicholsReducer::normal_form(const FreeElement& a) {
  FreeElement r(a.side());
  const FreeElement e = a.with_side(Side::E);
  for (const auto& [mu, part] : e.graded_components(chi_.rank())) {
    const Vec v = coords(mu, part);
    const Component& c = component(mu);
    for (std::size_t k = 0; k < v.size(); ++k) r.add_term(c.words[c.pivots[k]], v[k]);
  }
  return r;
}

bool nichols_is_zero(const Bicharacter& chi, const FreeElement& a, int degree_cap) {
  auto red = NicholsReducer::shared(chi, degree_cap);
  for (const auto& [mu, part] : a.graded_components(chi.rank())) {
    int total = 0;
    for (int x : mu) total += x;
    if (total > degree_cap) throw DegreeCapExceeded(total, degree_cap);
  }
  return red->is_zero(a);
}

int nichols_dim(const Bicharacter& chi, const Lattice& mu, int degree_cap) {
  int total = 0;
  for (int x : mu) total += x;
  if (total > degree_cap) throw DegreeCapExceeded(total, degree_cap);
  return NicholsReducer::shared(chi, degree_cap)->dim(mu);
}

int nichols_dim_gram(const Bicharacter& chi, const Lattice& mu) {
  const std::vector<Word> ws = words_of_degree(mu);
  Mat m;
  for (const Word& w : ws) {
    Vec row;
    for (const Word& v : ws) {
      FreeElement x = FreeElement::monomial(Side::E, w);
      for (char c : v) x = derK(chi, c, x);
      row.push_back(x.counit());
    }
    m.push_back(std::move(row));
  }
  return rank(m);
}

bool uplus_membership(const Bicharacter& chi, int p, const FreeElement& a, int sign, int degree_cap) {
  const FreeElement d = sign > 0 ? derK(chi, p, a) : derL(chi, p, a);
  return nichols_is_zero(chi, d, degree_cap);
}

}  // namespace nichols
