#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace nichols {

// Hard limit on the number of declared parameters of a rational-function
// session.  Exponents are stored as int16 and overflow is checked.
constexpr int kMaxParams = 4;

struct Monomial {
  std::array<std::int16_t, kMaxParams> e{};

  int degree() const;
  bool is_one() const;
  Monomial operator*(const Monomial& o) const;
  Monomial operator/(const Monomial& o) const;
  // true if every exponent of *this is <= the corresponding one of o
  bool divides(const Monomial& o) const;
  bool operator==(const Monomial&) const = default;
};

// Graded lexicographic comparison: total degree first, then the exponent of
// the first parameter, then the second, ...  Returns <0, 0, >0.
int grlex_compare(const Monomial& a, const Monomial& b);

struct Term {
  Monomial m;
  mpq_class c;
};

// Sparse Laurent polynomial over Q.  Terms are kept sorted by strictly
// decreasing grlex order with nonzero coefficients, so equal polynomials have
// identical term vectors.
class Poly {
 public:
  Poly() = default;
  explicit Poly(const mpq_class& c);
  static Poly monomial(const Monomial& m, const mpq_class& c = 1);
  static Poly variable(int index);

  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  bool is_constant() const;
  bool is_monomial() const { return terms_.size() == 1; }
  const std::vector<Term>& terms() const { return terms_; }
  const Term& leading() const { return terms_.front(); }
  // bitmask of parameters occurring with nonzero exponent
  unsigned variables() const;
  // componentwise minimum of exponents over all terms
  Monomial min_exponents() const;
  // maximal exponent of variable v (may be negative for Laurent polys)
  int degree_in(int v) const;
  bool has_negative_exponents() const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly scaled(const mpq_class& c) const;
  Poly shifted(const Monomial& m) const;        // multiply by x^m
  Poly unshifted(const Monomial& m) const;      // divide by x^m
  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  std::string to_string(const std::vector<std::string>& names) const;

 private:
  friend Poly exact_div(const Poly&, const Poly&);
  std::vector<Term> terms_;
  void canonicalize();
};

// Exact division of polynomials with nonnegative exponents; throws if the
// division leaves a remainder.
Poly exact_div(const Poly& a, const Poly& b);

// gcd in Q[x_1..x_k] (nonnegative exponents only), normalized to have coprime
// integer coefficients and a positive grlex-leading coefficient.
Poly gcd(const Poly& a, const Poly& b);

// Rational u with p = u * q where q has coprime integer coefficients and a
// positive leading coefficient.  Returns u and writes q.
mpq_class unit_normalize(const Poly& p, Poly& q);

}  // namespace nichols
