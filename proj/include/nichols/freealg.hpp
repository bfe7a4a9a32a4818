#pragma once

#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "nichols/bicharacter.hpp"
#include "nichols/linalg.hpp"

namespace nichols {

enum class Side { E, F };

// A word in the generators; each char is a letter index in [0, n).
using Word = std::string;

// graded (by length), then lexicographic
struct WordLess {
  bool operator()(const Word& a, const Word& b) const {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  }
};

Word letter(int i);
Lattice word_degree(const Word& w, int n);
std::string word_to_string(const Word& w, Side side);

class FreeElement {
 public:
  using Terms = std::map<Word, Scalar, WordLess>;

  explicit FreeElement(Side side = Side::E) : side_(side) {}
  static FreeElement one(Side side = Side::E) { return scalar(side, Scalar(1)); }
  static FreeElement scalar(Side side, const Scalar& c);
  static FreeElement generator(Side side, int i);
  static FreeElement monomial(Side side, const Word& w, const Scalar& c = Scalar(1));

  Side side() const { return side_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Scalar coeff(const Word& w) const;
  Scalar counit() const { return coeff(Word()); }
  void add_term(const Word& w, const Scalar& c);

  FreeElement operator-() const;
  FreeElement& operator+=(const FreeElement& o);
  FreeElement& operator-=(const FreeElement& o);
  friend FreeElement operator+(FreeElement a, const FreeElement& b) { return a += b; }
  friend FreeElement operator-(FreeElement a, const FreeElement& b) { return a -= b; }
  friend FreeElement operator*(const FreeElement& a, const FreeElement& b);
  FreeElement scaled(const Scalar& c) const;
  bool operator==(const FreeElement& o) const;
  bool operator!=(const FreeElement& o) const { return !(*this == o); }

  // nullopt if zero or inhomogeneous
  std::optional<Lattice> degree(int n) const;
  std::map<Lattice, FreeElement> graded_components(int n) const;
  // same words on the other side
  FreeElement with_side(Side s) const;

  std::string to_string() const;

 private:
  Side side_;
  Terms terms_;
};

// K_mu and L_mu acting by the adjoint action on a homogeneous word of degree
// nu: chi(mu, nu) and chi(nu, mu)^{-1} on the E-side.  On the F-side nu is
// replaced by -nu.
FreeElement act_K(const Bicharacter& chi, const Lattice& mu, const FreeElement& a);
FreeElement act_L(const Bicharacter& chi, const Lattice& mu, const FreeElement& a);

FreeElement derK(const Bicharacter& chi, int p, const FreeElement& a);
FreeElement derL(const Bicharacter& chi, int p, const FreeElement& a);

// braided adjoint action: (ad E_p)X = E_p X - (K_p . X) E_p
FreeElement ad_E(const Bicharacter& chi, int p, const FreeElement& x);

using Tensor = std::map<std::pair<Word, Word>, Scalar>;
Tensor braided_coproduct(const Bicharacter& chi, const FreeElement& a);
std::string tensor_to_string(const Tensor& t);

// "c*word" with parentheses around compound coefficients
std::string term_string(const Scalar& c, const std::string& word);
// joins rendered terms with " + " / " - "; "0" when empty
std::string join_terms(const std::vector<std::string>& parts);

FreeElement E_plus(const Bicharacter& chi, int p, int i, int m);
FreeElement E_minus(const Bicharacter& chi, int p, int i, int m);
FreeElement E_plus_closed(const Bicharacter& chi, int p, int i, int m);
FreeElement E_minus_closed(const Bicharacter& chi, int p, int i, int m);
// F^{+-}_{i,m}: E^{+-}_{i,m} over chi^op, moved to the F-side
FreeElement F_plus(const Bicharacter& chi, int p, int i, int m);
FreeElement F_minus(const Bicharacter& chi, int p, int i, int m);

constexpr int kDefaultDegreeCap = 14;

class DegreeCapExceeded : public std::runtime_error {
 public:
  DegreeCapExceeded(int degree, int cap);
};

// all words of degree mu, in WordLess order
std::vector<Word> words_of_degree(const Lattice& mu);

// Linear coordinates on the homogeneous components of the Nichols algebra
// U^+(chi).  For each degree mu the map
//   E_w -> (coordinates of derK_i(E_w) in degree mu - alpha_i)_i
// is brought to reduced echelon form; pivot words form a basis and the
// columns of the echelon form are the coordinates of every word.
class NicholsReducer {
 public:
  explicit NicholsReducer(Bicharacter chi, int degree_cap = kDefaultDegreeCap);
  // shared instance per bicharacter; the cap only ever grows
  static std::shared_ptr<NicholsReducer> shared(const Bicharacter& chi, int degree_cap = kDefaultDegreeCap);

  const Bicharacter& chi() const { return chi_; }
  int degree_cap() const { return cap_.load(); }

  int dim(const Lattice& mu);
  std::vector<Word> basis(const Lattice& mu);
  // requires a homogeneous of degree mu (zero is allowed)
  Vec coords(const Lattice& mu, const FreeElement& a);
  bool is_zero(const FreeElement& a);
  // unique representative supported on basis words
  FreeElement normal_form(const FreeElement& a);

 private:
  struct Component {
    std::vector<Word> words;
    std::unordered_map<Word, int> index;
    std::vector<int> pivots;  // word indices of basis words
    Mat rref;                 // dim x |words|
  };
  const Component& component(const Lattice& mu);

  Bicharacter chi_;
  std::atomic<int> cap_;
  std::recursive_mutex mu_;
  std::map<Lattice, std::unique_ptr<Component>> memo_;
};

bool nichols_is_zero(const Bicharacter& chi, const FreeElement& a, int degree_cap = kDefaultDegreeCap);
int nichols_dim(const Bicharacter& chi, const Lattice& mu, int degree_cap = kDefaultDegreeCap);
// rank of M[w][v] = counit(derK_{v_k} ... derK_{v_1}(E_w)); slow reference path
int nichols_dim_gram(const Bicharacter& chi, const Lattice& mu);
// sign > 0: derK_p(a) vanishes in U^+; sign < 0: derL_p(a) vanishes.
bool uplus_membership(const Bicharacter& chi, int p, const FreeElement& a, int sign,
                      int degree_cap = kDefaultDegreeCap);

}  // namespace nichols
