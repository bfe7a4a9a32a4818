#include "doctest.h"
#include "nichols/bicharacter.hpp"
#include "nichols/catalog.hpp"
#include "oracles.hpp"

using namespace nichols;
using oracle::cat;
using oracle::mk;

namespace {
const ScalarContext* Q() { return ScalarContext::parameters({"q"}); }
}  // namespace

TEST_CASE("eval is multiplicative in both arguments") {
  const Bicharacter chi = cat("sl3_two_parameter");
  const Lattice a{2, -1}, b{1, 3}, c{-1, 1};
  CHECK(chi.eval(a + b, c) == chi.eval(a, c) * chi.eval(b, c));
  CHECK(chi.eval(a, b + c) == chi.eval(a, b) * chi.eval(a, c));
  CHECK(chi.eval(unit(2, 0), unit(2, 1)) == chi.q(0, 1));
  CHECK(chi.op().q(0, 1) == chi.q(1, 0));
  CHECK(chi.inverse().q(0, 1) * chi.q(0, 1) == Scalar(1));
  CHECK(chi.op().op() == chi);
}

TEST_CASE("Cartan matrices of the catalog") {
  CHECK(cartan_matrix(cat("A1")) == IntMatrix{{2}});
  CHECK(cartan_matrix(cat("A2")) == IntMatrix{{2, -1}, {-1, 2}});
  CHECK(cartan_matrix(cat("B2")) == IntMatrix{{2, -1}, {-2, 2}});
  CHECK(cartan_matrix(cat("G2")) == IntMatrix{{2, -1}, {-3, 2}});
  CHECK(cartan_matrix(cat("A3")) == IntMatrix{{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}});
  for (const auto& e : catalog()) {
    const Bicharacter chi = e.chi();
    for (int p = 0; p < chi.rank(); ++p)
      for (int j = 0; j < chi.rank(); ++j) CHECK(cartan_entry(chi, p, j) == oracle::scan_entry(chi, p, j));
  }
}

TEST_CASE("generic Cartan type construction matches the catalog") {
  CHECK(generic_cartan_type({{2, -1}, {-1, 2}}, {1, 1}) == cat("A2"));
  CHECK(generic_cartan_type({{2, -1}, {-2, 2}}, {2, 1}) == cat("B2"));
  CHECK(generic_cartan_type({{2, -1}, {-3, 2}}, {3, 1}) == cat("G2"));
  CHECK(generic_cartan_type({{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}}, {1, 1, 1}) == cat("A3"));
}

TEST_CASE("p-finiteness scan distinguishes proven infinite from finite") {
  const Bicharacter aff = mk(Q(), {{"q^2", "q^-2"}, {"q^-2", "q^2"}});
  CHECK(scan_cartan_entry(aff, 0, 1).status == FinitenessScan::Status::Finite);
  CHECK(cartan_entry(aff, 0, 1) == -2);
  const Bicharacter rational = mk(Q(), {{"2", "3"}, {"1", "q^2"}});
  CHECK(scan_cartan_entry(rational, 0, 1).status == FinitenessScan::Status::ProvenInfinite);
  CHECK_FALSE(is_p_finite(rational, 0));
  CHECK(is_p_finite(rational, 1) == (oracle::scan_entry(rational, 1, 0) <= 0));
  CHECK_THROWS_AS(cartan_matrix(rational), NotPFinite);
  try {
    cartan_matrix(rational);
  } catch (const NotPFinite& e) {
    CHECK(e.p == 0);
    CHECK(e.j == 1);
  }
  // q_pp = -1 gives (2)_q = 0 at m = 1
  const Bicharacter fermion = mk(Q(), {{"-1", "q"}, {"q", "q^2"}});
  CHECK(cartan_entry(fermion, 0, 1) == -1);
}

TEST_CASE("reflections agree with the explicit structure constants") {
  for (const auto& e : catalog()) {
    const Bicharacter chi = e.chi();
    for (int p = 0; p < chi.rank(); ++p) {
      CAPTURE(e.name);
      const Reflection r = reflect(chi, p);
      CHECK(r.chi == oracle::reflect_formula(chi, p));
      CHECK(r.s == oracle::reflection(chi, p));
      CHECK(r.chi == chi.pullback(r.s));
      // c^{r_p chi}_{pj} = c^chi_{pj} and r_p^2 = id
      for (int j = 0; j < chi.rank(); ++j) CHECK(cartan_entry(r.chi, p, j) == cartan_entry(chi, p, j));
      CHECK(reflect(r.chi, p).chi == chi);
    }
  }
}

TEST_CASE("lambda symmetries") {
  for (const auto& e : catalog()) {
    const Bicharacter chi = e.chi();
    const int n = chi.rank();
    for (int p = 0; p < n; ++p)
      for (int i = 0; i < n; ++i) {
        if (i == p) continue;
        CAPTURE(e.name);
        const int c = cartan_entry(chi, p, i);
        const Scalar& qpp = chi.q(p, p);
        const Scalar t = chi.q(p, i) * chi.q(i, p);
        CHECK(lambda(reflect(chi, p).chi, p, i) == (qpp.pow(-c) * t).pow(c) * lambda(chi, p, i));
        CHECK(lambda(chi.inverse(), p, i) == (-(qpp.pow(-c - 1) * t)).pow(c) * lambda(chi, p, i));
        Scalar direct = q_factorial(-c, qpp);
        for (int s = 0; s < -c; ++s) direct *= qpp.pow(s) * t - Scalar(1);
        CHECK(lambda(chi, p, i) == direct);
      }
  }
}

TEST_CASE("heights are preserved by reflections") {
  for (const auto& e : catalog()) {
    const Bicharacter chi = e.chi();
    const int n = chi.rank();
    std::vector<Lattice> probes;
    for (int a = 0; a <= 3; ++a)
      for (int b = 0; b <= 3; ++b) {
        Lattice v(n, 0);
        v[0] = a;
        if (n > 1) v[1] = b;
        if (a + b) probes.push_back(v);
      }
    for (int p = 0; p < n; ++p) {
      const Reflection r = reflect(chi, p);
      for (const Lattice& mu : probes) {
        CAPTURE(e.name);
        CHECK(height(r.chi, r.s * mu) == height(chi, mu));
      }
    }
  }
  CHECK(height(cat("A2_zeta3"), {1, 0}) == 3);
  CHECK(height(cat("A2_zeta4"), {1, 1}) == 2);
  CHECK(!height(cat("A2"), {1, 1}));
}

TEST_CASE("JSON round trip and canonical keys") {
  for (const auto& e : catalog()) {
    const Bicharacter chi = e.chi();
    CHECK(bicharacter_from_json(to_json(chi)) == chi);
    CHECK(to_json(bicharacter_from_json(to_json(chi))) == to_json(chi));
  }
  CHECK(mk(Q(), {{"q*q", "1/q"}, {"q^-1", "q^2"}}).key() == cat("A2").key());
  CHECK_THROWS(bicharacter_from_json(nlohmann::json::parse(R"({"rank":2,"scalar":{"backend":"parameters","names":["q"]},"q":[["1"]]})")));
}
