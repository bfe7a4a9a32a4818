#include "doctest.h"
#include "nichols/catalog.hpp"
#include "nichols/freealg.hpp"
#include "oracles.hpp"

using namespace nichols;
using oracle::cat;
using oracle::mk;

namespace {

FreeElement Ep(int p, int m) { return FreeElement::monomial(Side::E, Word(m, static_cast<char>(p))); }
FreeElement one() { return FreeElement::one(Side::E); }

void add_tensor(Tensor& t, const FreeElement& a, const FreeElement& b, const Scalar& c) {
  for (const auto& [u, x] : a.terms())
    for (const auto& [v, y] : b.terms()) {
      Scalar& s = t[{u, v}];
      s += c * x * y;
      if (s.is_zero()) t.erase({u, v});
    }
}

std::vector<std::string> rank_two_plus() { return {"A2", "B2", "G2", "A3", "A2_zeta3", "A2_zeta4", "super", "sl3_two_parameter"}; }

// (chi, p, i) with i != p
template <class F>
void for_each_triple(F f) {
  for (const auto& name : rank_two_plus()) {
    const Bicharacter chi = cat(name);
    for (int p = 0; p < chi.rank(); ++p)
      for (int i = 0; i < chi.rank(); ++i)
        if (i != p) f(name, chi, p, i);
  }
}

}  // namespace

TEST_CASE("free algebra basics") {
  const FreeElement a = FreeElement::generator(Side::E, 0), b = FreeElement::generator(Side::E, 1);
  const FreeElement x = a * b - b * a.scaled(Scalar(2));
  CHECK(x.to_string() == "E1*E2 - 2*E2*E1");
  CHECK((x - x).is_zero());
  CHECK(x.degree(2) == Lattice{1, 1});
  CHECK(!(x + a).degree(2));
  CHECK((x + a).graded_components(2).size() == 2);
  CHECK(x.with_side(Side::F).to_string() == "F1*F2 - 2*F2*F1");
  CHECK_THROWS(x + x.with_side(Side::F));
  CHECK(words_of_degree({2, 1}).size() == 3);
  CHECK(words_of_degree({2, 2}).size() == 6);
}

TEST_CASE("closed forms of E+ and E- agree with the recursions") {
  for_each_triple([](const std::string& name, const Bicharacter& chi, int p, int i) {
    CAPTURE(name);
    for (int m = 0; m <= 6; ++m) {
      CHECK(E_plus(chi, p, i, m) == E_plus_closed(chi, p, i, m));
      CHECK(E_minus(chi, p, i, m) == E_minus_closed(chi, p, i, m));
    }
  });
}

TEST_CASE("values of the skew derivations on root vectors") {
  for_each_triple([](const std::string& name, const Bicharacter& chi, int p, int i) {
    CAPTURE(name);
    const int n = chi.rank();
    const Scalar& qpp = chi.q(p, p);
    const Scalar t = chi.q(p, i) * chi.q(i, p);
    for (int m = 0; m <= 5; ++m) {
      CAPTURE(m);
      const FreeElement Epm = Ep(p, m), Epm1 = m ? Ep(p, m - 1) : FreeElement(Side::E);
      CHECK(derK(chi, p, Epm) == Epm1.scaled(q_int(m, qpp)));
      CHECK(derL(chi, p, Epm) == Epm1.scaled(q_int(m, qpp)));
      CHECK(derK(chi, i, Epm).is_zero());
      CHECK(derL(chi, i, Epm).is_zero());

      const FreeElement Eplus = E_plus(chi, p, i, m), Eminus = E_minus(chi, p, i, m);
      const FreeElement Eplus1 = m ? E_plus(chi, p, i, m - 1) : FreeElement(Side::E);
      const FreeElement Eminus1 = m ? E_minus(chi, p, i, m - 1) : FreeElement(Side::E);
      Scalar prod_plus(1), prod_minus(1);
      for (int s = 0; s < m; ++s) {
        prod_plus *= Scalar(1) - qpp.pow(s) * t;
        prod_minus *= Scalar(1) - qpp.pow(-s) * t.inverse();
      }
      for (int j = 0; j < n; ++j) {
        if (j == p) continue;
        const Scalar d = j == i ? Scalar(1) : Scalar(0);
        CHECK(derK(chi, j, Eplus) == Epm.scaled(d * prod_plus));
        CHECK(derL(chi, j, Eplus) == one().scaled(m == 0 ? d : Scalar(0)));
        CHECK(derK(chi, j, Eminus) == one().scaled(m == 0 ? d : Scalar(0)));
        CHECK(derL(chi, j, Eminus) == Epm.scaled(d * chi.q(p, i).pow(m) * prod_minus));
      }
      CHECK(derK(chi, p, Eplus).is_zero());
      CHECK(derL(chi, p, Eminus).is_zero());
      // carries a factor q_pi: this is the form forced by [E^-_{i,m}, F_p] and
      // by the m = 1 case q_pi E_i - q_ip^{-1} E_i
      CHECK(derK(chi, p, Eminus) ==
            Eminus1.scaled(chi.q(p, i) * q_int(m, qpp) * (Scalar(1) - qpp.pow(1 - m) * t.inverse())));
      CHECK(derL(chi, p, Eplus) == Eplus1.scaled(q_int(m, qpp) * (Scalar(1) - qpp.pow(m - 1) * t)));
    }
  });
}

TEST_CASE("derK_p(E^-_{i,1}) by hand") {
  const Bicharacter chi = cat("sl3_two_parameter");
  const FreeElement e2 = FreeElement::generator(Side::E, 1);
  const FreeElement expected = e2.scaled(chi.q(0, 1) - chi.q(1, 0).inverse());
  CHECK(derK(chi, 0, E_minus(chi, 0, 1, 1)) == expected);
  CHECK(expected != e2.scaled(Scalar(1) - (chi.q(0, 1) * chi.q(1, 0)).inverse()));
}

TEST_CASE("braided coproduct of powers and root vectors") {
  for_each_triple([](const std::string& name, const Bicharacter& chi, int p, int i) {
    CAPTURE(name);
    const Scalar& qpp = chi.q(p, p);
    const Scalar t = chi.q(p, i) * chi.q(i, p);
    for (int m = 0; m <= 4; ++m) {
      CAPTURE(m);
      Tensor powers;
      for (int r = 0; r <= m; ++r) add_tensor(powers, Ep(p, r), Ep(p, m - r), q_binomial(m, r, qpp));
      CHECK(braided_coproduct(chi, Ep(p, m)) == powers);

      Tensor plus, minus;
      add_tensor(plus, E_plus(chi, p, i, m), one(), Scalar(1));
      add_tensor(minus, one(), E_minus(chi, p, i, m), Scalar(1));
      for (int r = 0; r <= m; ++r) {
        Scalar a = q_binomial(m, r, qpp), b = chi.q(p, i).pow(r) * q_binomial(m, r, qpp);
        for (int s = 1; s <= r; ++s) {
          a *= Scalar(1) - qpp.pow(m - s) * t;
          b *= Scalar(1) - qpp.pow(s - m) * t.inverse();
        }
        add_tensor(plus, Ep(p, r), E_plus(chi, p, i, m - r), a);
        add_tensor(minus, E_minus(chi, p, i, m - r), Ep(p, r), b);
      }
      CHECK(braided_coproduct(chi, E_plus(chi, p, i, m)) == plus);
      CHECK(braided_coproduct(chi, E_minus(chi, p, i, m)) == minus);
    }
  });
}

TEST_CASE("skew derivations are components of the braided coproduct") {
  for (const auto& name : {"A2", "B2", "super", "A3"}) {
    const Bicharacter chi = cat(name);
    const int n = chi.rank();
    std::vector<FreeElement> samples;
    for (const Word& w : words_of_degree(n == 2 ? Lattice{2, 2} : Lattice{1, 2, 1}))
      samples.push_back(FreeElement::monomial(Side::E, w));
    samples.push_back(E_plus(chi, 0, 1, 3) * E_minus(chi, 1, 0, 2));
    for (const auto& a : samples) {
      const Tensor t = braided_coproduct(chi, a);
      for (int i = 0; i < n; ++i) {
        FreeElement k(Side::E), l(Side::E);
        for (const auto& [uv, c] : t) {
          if (uv.second == letter(i)) k.add_term(uv.first, c);
          if (uv.first == letter(i)) l.add_term(uv.second, c);
        }
        CHECK(derK(chi, i, a) == k);
        CHECK(derL(chi, i, a) == l);
      }
    }
  }
}

TEST_CASE("skew derivations commute and intertwine the K, L actions") {
  for (const auto& name : {"A2", "G2", "super", "A3", "sl3_two_parameter"}) {
    const Bicharacter chi = cat(name);
    const int n = chi.rank();
    std::vector<FreeElement> samples;
    for (const Word& w : words_of_degree(n == 2 ? Lattice{2, 1} : Lattice{1, 1, 1}))
      samples.push_back(FreeElement::monomial(Side::E, w));
    samples.push_back(E_plus(chi, 1, 0, 2) * E_plus(chi, 0, 1, 1));
    for (const auto& a : samples)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          CHECK(derK(chi, i, derL(chi, j, a)) == derL(chi, j, derK(chi, i, a)));
          const Lattice aj = unit(n, j);
          CHECK(derK(chi, i, act_K(chi, aj, a)) == act_K(chi, aj, derK(chi, i, a)).scaled(chi.q(j, i)));
          CHECK(derK(chi, i, act_L(chi, aj, a)) == act_L(chi, aj, derK(chi, i, a)).scaled(chi.q(i, j).inverse()));
          CHECK(derL(chi, i, act_K(chi, aj, a)) == act_K(chi, aj, derL(chi, i, a)).scaled(chi.q(j, i)));
          CHECK(derL(chi, i, act_L(chi, aj, a)) == act_L(chi, aj, derL(chi, i, a)).scaled(chi.q(i, j).inverse()));
        }
  }
}

TEST_CASE("E+ and E- at 1 - c differ by a multiple of E_i E_p^{1-c}") {
  for_each_triple([](const std::string& name, const Bicharacter& chi, int p, int i) {
    CAPTURE(name);
    const int c = cartan_entry(chi, p, i);
    const int m = 1 - c;
    const FreeElement d = E_plus(chi, p, i, m) - E_minus(chi, p, i, m);
    const FreeElement base = FreeElement::generator(Side::E, i) * Ep(p, m);
    const auto& [w, x] = *base.terms().begin();
    CHECK(d == base.scaled(d.coeff(w) / x));
    if (!q_factorial(m, chi.q(p, p)).is_zero()) CHECK(nichols_is_zero(chi, d));
    const FreeElement f = F_plus(chi, p, i, m) - F_minus(chi, p, i, m);
    const FreeElement fb = FreeElement::generator(Side::F, i) * FreeElement::monomial(Side::F, Word(m, char(p)));
    CHECK(f == fb.scaled(f.coeff(fb.terms().begin()->first)));
  });
}

TEST_CASE("Nichols dimensions: reducer against Gram rank") {
  for (const auto& name : {"A2", "B2", "A2_zeta3", "A2_zeta4", "super", "sl3_two_parameter"}) {
    CAPTURE(name);
    const Bicharacter chi = cat(name);
    for (int a = 0; a <= 3; ++a)
      for (int b = 0; b <= 3; ++b) {
        if (a + b == 0 || a + b > 5) continue;
        CHECK(nichols_dim(chi, {a, b}) == nichols_dim_gram(chi, {a, b}));
      }
  }
}

TEST_CASE("rank one at a root of unity truncates at its order") {
  for (int N : {2, 3, 4, 5, 6}) {
    const ScalarContext* z = ScalarContext::cyclotomic(N);
    const Bicharacter chi(z, {{Scalar::zeta(z)}});
    for (int m = 1; m <= 8; ++m) CHECK(nichols_dim(chi, {m}) == (m < N ? 1 : 0));
  }
  const ScalarContext* Q = ScalarContext::parameters({"q"});
  const Bicharacter generic(Q, {{Scalar::param(Q, 0)}});
  for (int m = 1; m <= 8; ++m) CHECK(nichols_dim(generic, {m}) == 1);
  CHECK(nichols_dim(Bicharacter(nullptr, {{Scalar(-1)}}), {2}) == 0);
}

TEST_CASE("Serre elements vanish and their proper subwords do not") {
  const Bicharacter chi = cat("B2");
  CHECK(nichols_is_zero(chi, E_plus(chi, 0, 1, 2)));
  CHECK_FALSE(nichols_is_zero(chi, E_plus(chi, 0, 1, 1)));
  CHECK(nichols_is_zero(chi, E_plus(chi, 1, 0, 3)));
  CHECK_FALSE(nichols_is_zero(chi, E_plus(chi, 1, 0, 2)));
  NicholsReducer r(chi);
  const FreeElement x = E_plus(chi, 1, 0, 2) + E_plus(chi, 1, 0, 3).scaled(Scalar(0));
  CHECK(r.normal_form(x + E_plus(chi, 1, 0, 3).with_side(Side::E) - E_plus(chi, 1, 0, 3)) == r.normal_form(x));
  CHECK_THROWS_AS(nichols_dim(chi, {10, 10}, 8), DegreeCapExceeded);
}

TEST_CASE("uplus membership of derivative-free elements") {
  const Bicharacter chi = cat("A2");
  CHECK(uplus_membership(chi, 0, E_plus(chi, 0, 1, 1), 1));
  CHECK_FALSE(uplus_membership(chi, 0, E_minus(chi, 0, 1, 1), 1));
  CHECK(uplus_membership(chi, 0, E_minus(chi, 0, 1, 1), -1));
}
