#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "nichols/bicharacter.hpp"
#include "nichols/freealg.hpp"

namespace nichols {

// One PBW-type monomial F_f K^k L^l E_e of the double.
struct DoubleKey {
  Word f;
  Lattice k, l;
  Word e;
  bool operator==(const DoubleKey&) const = default;
};

struct DoubleKeyLess {
  bool operator()(const DoubleKey& a, const DoubleKey& b) const;
};

// Element of U(chi) in the normal form F * (K,L) * E.
class DoubleElement {
 public:
  using Terms = std::map<DoubleKey, Scalar, DoubleKeyLess>;

  explicit DoubleElement(int rank = 0) : n_(rank) {}
  static DoubleElement one(int n) { return scalar(n, Scalar(1)); }
  static DoubleElement scalar(int n, const Scalar& c);
  static DoubleElement E(int n, int i);
  static DoubleElement F(int n, int i);
  static DoubleElement K(int n, int i, int power = 1);
  static DoubleElement L(int n, int i, int power = 1);
  static DoubleElement group_like(int n, const Lattice& k, const Lattice& l, const Scalar& c = Scalar(1));
  static DoubleElement monomial(int n, DoubleKey key, const Scalar& c = Scalar(1));
  // E-side elements become F-free, F-side elements become E-free
  static DoubleElement from_free(int n, const FreeElement& a);

  int rank() const { return n_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Scalar coeff(const DoubleKey& key) const;
  void add_term(const DoubleKey& key, const Scalar& c);

  DoubleElement operator-() const;
  DoubleElement& operator+=(const DoubleElement& o);
  DoubleElement& operator-=(const DoubleElement& o);
  friend DoubleElement operator+(DoubleElement a, const DoubleElement& b) { return a += b; }
  friend DoubleElement operator-(DoubleElement a, const DoubleElement& b) { return a -= b; }
  DoubleElement scaled(const Scalar& c) const;
  bool operator==(const DoubleElement& o) const { return n_ == o.n_ && terms_ == o.terms_; }
  bool operator!=(const DoubleElement& o) const { return !(*this == o); }

  // Z^I-degree deg(E) - deg(F); nullopt if zero or inhomogeneous
  std::optional<Lattice> degree() const;
  std::map<Lattice, DoubleElement> graded_components() const;
  // the U^+ part when the element is a plain E-polynomial
  std::optional<FreeElement> as_E() const;
  std::optional<FreeElement> as_F() const;

  std::string to_string() const;
  nlohmann::json to_json() const;

 private:
  int n_;
  Terms terms_;
};

Lattice term_degree(const DoubleKey& key, int n);

// Multiplication in U(chi), with memoized straightening of E-words past F-words.
class DoubleAlgebra {
 public:
  explicit DoubleAlgebra(Bicharacter chi);
  static std::shared_ptr<DoubleAlgebra> shared(const Bicharacter& chi);

  const Bicharacter& chi() const { return chi_; }
  int rank() const { return chi_.rank(); }
  Scalar chi_value(const Lattice& mu, const Lattice& nu);

  DoubleElement mul(const DoubleElement& a, const DoubleElement& b);
  // E_e * F_f in normal form
  const DoubleElement& straighten(const Word& e, const Word& f);

 private:
  void mul_terms(const DoubleKey& a, const Scalar& ca, const DoubleKey& b, const Scalar& cb, DoubleElement& out);

  Bicharacter chi_;
  std::recursive_mutex mu_;
  std::map<std::pair<Word, Word>, std::unique_ptr<DoubleElement>> memo_;
  std::unordered_map<std::string, Scalar> chi_cache_;
};

DoubleElement dmul(const Bicharacter& chi, const DoubleElement& a, const DoubleElement& b);
DoubleElement dpow(const Bicharacter& chi, const DoubleElement& a, int m);
DoubleElement commutator(const Bicharacter& chi, const DoubleElement& a, const DoubleElement& b);
DoubleElement product(const Bicharacter& chi, const std::vector<DoubleElement>& factors);

// K_mu a K_mu^{-1} and L_mu a L_mu^{-1}
DoubleElement conj_K(const Bicharacter& chi, const Lattice& mu, const DoubleElement& a);
DoubleElement conj_L(const Bicharacter& chi, const Lattice& mu, const DoubleElement& a);
// (ad E_p)a = E_p a - (K_p . a)E_p and (ad' E_p)a = E_p a - (L_p . a)E_p
DoubleElement ad_E(const Bicharacter& chi, int p, const DoubleElement& a);
DoubleElement ad_prime_E(const Bicharacter& chi, int p, const DoubleElement& a);

// Skew-Hopf pairing eta(E K_mu, F L_nu).
Scalar pairing(const Bicharacter& chi, const FreeElement& e, const Lattice& mu, const FreeElement& f,
               const Lattice& nu);
Scalar pairing(const Bicharacter& chi, const FreeElement& e, const FreeElement& f);
// rank of the Gram matrix (eta(E_w, F_v)) over words of degree mu
int pairing_rank(const Bicharacter& chi, const Lattice& mu);

// Reduction of a homogeneous one-sided free element to a canonical
// representative modulo a graded subspace (given on E-side words in both cases).
using SideReducer = std::function<FreeElement(const FreeElement&)>;

// Applies `re` to the E-parts and then `rf` to the F-parts, coefficientwise
// in the other tensor factor.
DoubleElement reduce_modulo(const DoubleElement& a, const SideReducer& re, const SideReducer& rf);

// Canonical representative in U(chi) = U(chi)/S(chi): E-parts reduced by the
// Nichols reducer of chi, F-parts by that of chi^op (transport along phi_3).
DoubleElement reduce_in_U(const Bicharacter& chi, const DoubleElement& a, int cap = kDefaultDegreeCap);
bool double_is_zero_in_U(const Bicharacter& chi, const DoubleElement& a, int cap = kDefaultDegreeCap);

// Image of a group-like generator: c K^k L^l.
struct GroupLike {
  Scalar c = Scalar(1);
  Lattice k, l;
};

// Algebra map (or antimap) U(source) -> U(target) given on generators.
struct AlgebraMap {
  std::string name;
  Bicharacter source, target;
  bool anti = false;
  std::vector<GroupLike> K, L;
  std::vector<DoubleElement> E, F;

  int rank() const { return source.rank(); }
};

AlgebraMap identity_map(const Bicharacter& chi);
AlgebraMap phi_diag(const Bicharacter& chi, const std::vector<Scalar>& a);
AlgebraMap phi_perm(const Bicharacter& chi, const std::vector<int>& tau);
AlgebraMap phi_shift(const Bicharacter& chi, int m);
AlgebraMap phi_1(const Bicharacter& chi);
AlgebraMap phi_2(const Bicharacter& chi);
AlgebraMap phi_3(const Bicharacter& chi);
AlgebraMap phi_4(const Bicharacter& chi);
// S = phi_1 phi_4 phi_a with a_i = -1
AlgebraMap antipode(const Bicharacter& chi);

using ElementReducer = std::function<DoubleElement(const DoubleElement&)>;

// g after f
AlgebraMap compose(const AlgebraMap& g, const AlgebraMap& f, const ElementReducer& reduce = nullptr);
DoubleElement apply(const AlgebraMap& f, const DoubleElement& a, const ElementReducer& reduce = nullptr);
// all generator images agree exactly in the double
bool maps_equal(const AlgebraMap& f, const AlgebraMap& g);
// generator images agree in U(target)
bool maps_equal_in_U(const AlgebraMap& f, const AlgebraMap& g, int cap = kDefaultDegreeCap);

}  // namespace nichols
