#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nichols/poly.hpp"

namespace nichols {

// Field descriptor shared by all scalars of a session.  Contexts are interned:
// requesting the same backend twice returns the same pointer, so contexts are
// compared by address.
class ScalarContext {
 public:
  enum class Backend { Cyclotomic, Parameters };

  static const ScalarContext* cyclotomic(int order);
  static const ScalarContext* parameters(const std::vector<std::string>& names);

  Backend backend() const { return backend_; }
  bool is_cyclotomic() const { return backend_ == Backend::Cyclotomic; }
  int order() const { return order_; }
  // degree of the cyclotomic polynomial (1 for the parameter backend)
  int degree() const { return static_cast<int>(phi_.size()) - 1; }
  const std::vector<mpq_class>& phi() const { return phi_; }
  const std::vector<std::string>& names() const { return names_; }
  std::string describe() const;

 private:
  ScalarContext() = default;
  Backend backend_ = Backend::Parameters;
  int order_ = 1;
  std::vector<mpq_class> phi_;       // coefficients of Phi_N, low to high
  std::vector<std::string> names_;   // parameter names, or {"z"}
  std::vector<std::vector<mpq_class>> xpow_;  // x^k mod Phi_N for k in [d, 2d-2]
  friend class Scalar;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t pos)
      : std::runtime_error(what + " at position " + std::to_string(pos)),
        pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

// Exact field element.  Rational constants are context free; everything else
// carries the context it lives in.  Representations are canonical, so
// equality is structural.
class Scalar {
 public:
  Scalar() : q_(0) {}
  Scalar(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Scalar(const mpq_class& v) : q_(v) {}  // NOLINT

  // zeta_N^k in a cyclotomic context
  static Scalar zeta(const ScalarContext* ctx, int k = 1);
  // the index-th declared parameter
  static Scalar param(const ScalarContext* ctx, int index);
  static Scalar parse(const ScalarContext* ctx, std::string_view text);

  bool is_zero() const { return rep_ == Rep::Rational && q_ == 0; }
  bool is_one() const { return rep_ == Rep::Rational && q_ == 1; }
  bool is_rational() const { return rep_ == Rep::Rational; }
  const mpq_class& rational() const { return q_; }
  const ScalarContext* context() const { return ctx_; }

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  Scalar inverse() const;
  Scalar pow(long k) const;

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  // multiplicative order if this is a root of unity
  std::optional<int> root_of_unity_order() const;
  // For the parameter backend: writes c and m with *this == c * x^m.
  bool as_laurent_monomial(mpq_class& c, Monomial& m) const;

  std::string to_string() const;
  std::size_t hash() const;

 private:
  enum class Rep : unsigned char { Rational, Cyclo, RatFun };
  Rep rep_ = Rep::Rational;
  const ScalarContext* ctx_ = nullptr;
  mpq_class q_;
  std::vector<mpq_class> cyc_;  // length < degree, last entry nonzero
  Poly num_, den_;              // den_ empty means 1

  static Scalar from_cyclo(const ScalarContext* ctx, std::vector<mpq_class> v);
  static Scalar from_fraction(const ScalarContext* ctx, const Poly& n, const Poly& d);
  static Scalar from_poly(const ScalarContext* ctx, Poly n);
  const ScalarContext* common_context(const Scalar& o) const;
  std::vector<mpq_class> cyc_vector() const;
  Poly num_poly() const;
  Poly den_poly() const;
};

Scalar q_int(long m, const Scalar& q);
Scalar q_factorial(long m, const Scalar& q);
Scalar q_binomial(long m, long n, const Scalar& q);

struct ScalarHash {
  std::size_t operator()(const Scalar& s) const { return s.hash(); }
};

}  // namespace nichols
