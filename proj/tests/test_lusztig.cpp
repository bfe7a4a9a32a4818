#include "doctest.h"
#include "nichols/catalog.hpp"
#include "nichols/lusztig.hpp"
#include "oracles.hpp"

using namespace nichols;
using oracle::cat;

namespace {

std::string first_failure(const SuiteReport& r) {
  for (const auto& e : r.entries)
    if (e.status == "fail") return e.check + " " + e.word + " :: " + e.witness.substr(0, 200);
  return "";
}

FreeElement word(std::initializer_list<int> letters) {
  Word w;
  for (int c : letters) w.push_back(static_cast<char>(c));
  return FreeElement::monomial(Side::E, w);
}

}  // namespace

TEST_CASE("T_p and T_p^- respect the defining relations") {
  for (const auto& e : catalog()) {
    CAPTURE(e.name);
    const Bicharacter chi = e.chi();
    for (int p = 0; p < chi.rank(); ++p)
      for (auto d : {Direction::T, Direction::Tminus}) {
        const SuiteReport r = check_defining_relations(build_T(chi, p, d));
        CHECK_MESSAGE(r.ok(), first_failure(r));
        CHECK(r.entries.size() >= static_cast<std::size_t>(5 * chi.rank() * chi.rank()));
      }
  }
}

TEST_CASE("the target of T_p is r_p(chi)") {
  const Bicharacter chi = cat("super");
  for (int p = 0; p < 2; ++p) {
    const LusztigMap t = build_T(chi, p, Direction::T);
    CHECK(t.map.source.key() == chi.key());
    CHECK(t.map.target.key() == reflect(chi, p).chi.key());
  }
}

TEST_CASE("a perturbed T_p fails the relation check with a witness") {
  const Bicharacter chi = cat("A2");
  LusztigMap t = build_T(chi, 0, Direction::T);
  t.map.F[1] = t.map.F[1].scaled(Scalar(2));
  const SuiteReport r = check_defining_relations(t);
  CHECK_FALSE(r.ok());
  bool found = false;
  for (const auto& e : r.entries)
    if (e.status == "fail") {
      found = true;
      CHECK_FALSE(e.witness.empty());
      CHECK(e.check.find("EF") != std::string::npos);
    }
  CHECK(found);
}

TEST_CASE("Lusztig identities and the psiadE images") {
  for (const std::string name : {"A1", "A2", "B2", "A2_zeta3", "A2_zeta4", "super", "sl3_two_parameter"}) {
    CAPTURE(name);
    const Bicharacter chi = cat(name);
    for (int p = 0; p < chi.rank(); ++p) {
      const SuiteReport id = check_lusztig_identities(chi, p);
      CHECK_MESSAGE(id.ok(), first_failure(id));
      const SuiteReport ps = check_psiadE(chi, p);
      CHECK_MESSAGE(ps.ok(), first_failure(ps));
    }
  }
}

TEST_CASE("randomized scalars in the phi_a commutation") {
  const Bicharacter chi = cat("B2");
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const SuiteReport r = check_lusztig_identities(chi, 1, kDefaultDegreeCap, seed);
    CHECK_MESSAGE(r.ok(), first_failure(r));
  }
}

TEST_CASE("T_p T_p^- on sample elements") {
  const Bicharacter chi = cat("B2");
  const int p = 1;
  const LusztigMap t = build_T(chi, p, Direction::T);
  const LusztigMap tm = build_T(t.map.target, p, Direction::Tminus);
  const DoubleElement x = dmul(chi, DoubleElement::E(2, 0), dmul(chi, DoubleElement::F(2, 1), DoubleElement::K(2, 0)));
  const DoubleElement back = apply(tm, apply(t, x));
  CHECK(double_is_zero_in_U(chi, back - x));
}

TEST_CASE("braid relations and the order of r_i r_j") {
  const std::vector<std::pair<std::string, int>> expect = {{"A2", 3}, {"B2", 4}, {"G2", 6}, {"super", 3}};
  for (const auto& [name, M] : expect) {
    CAPTURE(name);
    const CoxeterResult c = coxeter_check(cat(name), 0, 1);
    CHECK(c.M == M);
    CHECK(c.holds);
    CHECK(c.a.size() == 2);
    CHECK_MESSAGE(c.report.ok(), first_failure(c.report));
  }
  const Bicharacter a3 = cat("A3");
  const CoxeterResult c02 = coxeter_check(a3, 0, 2);
  CHECK(c02.M == 2);
  CHECK(c02.holds);
  CHECK(coxeter_check(a3, 1, 2).M == 3);
}

TEST_CASE("coxeter_check refuses an infinite order") {
  const auto* P = ScalarContext::parameters({"q"});
  const Bicharacter affine = oracle::mk(P, {{"q^2", "q^-2"}, {"q^-2", "q^2"}});
  CHECK_THROWS_AS(coxeter_check(affine, 0, 1), PreconditionError);
}

TEST_CASE("images of E_p under reduced words stay in U+") {
  const Bicharacter chi = cat("A2");
  CHECK(wE_in_Uplus_check(chi, {0}, 1));
  CHECK_THROWS_AS(wE_in_Uplus_check(chi, {0}, 0), PreconditionError);
  CHECK_THROWS_AS(wE_in_Uplus_check(chi, {0, 0}, 1), PreconditionError);
  // every admissible (word, p) with words of length < |R+|
  for (const std::string name : {"B2", "super"}) {
    CAPTURE(name);
    const Bicharacter x = cat(name);
    int admissible = 0;
    const std::vector<std::vector<int>> words = {{0}, {1}, {0, 1}, {1, 0}, {0, 1, 0}, {1, 0, 1}};
    for (const auto& w : words)
      for (int p = 0; p < 2; ++p) {
        try {
          const bool in_uplus = wE_in_Uplus_check(x, w, p);
          CHECK(in_uplus);
          ++admissible;
        } catch (const PreconditionError&) {
        }
      }
    CHECK(admissible >= 4);
  }
}

TEST_CASE("longest element factorization") {
  for (const std::string name : {"A1", "A2", "B2", "G2", "A2_zeta3"}) {
    CAPTURE(name);
    const auto* e = find_catalog(name);
    const LongestResult l = longest_factorization(e->chi());
    CHECK(l.holds);
    CHECK_MESSAGE(l.report.ok(), first_failure(l.report));
    CHECK(static_cast<long>(l.word.size()) == e->positive_roots->value);
    CHECK(l.lambda.size() == static_cast<std::size_t>(e->chi().rank()));
    for (const auto& s : l.lambda) CHECK_FALSE(s.is_zero());
  }
  // the longest element of A2 swaps the simple roots
  CHECK(longest_factorization(cat("A2")).tau == std::vector<int>{1, 0});
  CHECK(longest_factorization(cat("B2")).tau == std::vector<int>{0, 1});
}

TEST_CASE("ideal spans per degree") {
  IdealSpan comm(2, {word({0, 1}) - word({1, 0})});
  CHECK(comm.dim({1, 0}) == 0);
  CHECK(comm.dim({1, 1}) == 1);
  CHECK(comm.dim({2, 1}) == 2);
  CHECK(comm.dim({2, 2}) == 5);  // 6 words, commutative quotient of dim 1
  CHECK(comm.contains(word({0, 0, 1}) - word({1, 0, 0})));
  CHECK_FALSE(comm.contains(word({0, 0, 1})));
  const FreeElement r = comm.reduce(word({1, 0, 0}));
  CHECK(comm.contains(r - word({0, 0, 1})));

  IdealSpan square(2, {word({0, 0})});
  CHECK(square.dim({3, 0}) == 1);
  CHECK(square.dim({2, 1}) == 2);  // 001, 100
  CHECK(square.dim({2, 2}) == 3);  // 0011, 1001, 1100
  IdealSpan rev(2, {word({0, 1})}, true);
  CHECK(rev.contains(FreeElement::monomial(Side::F, Word("\1\0", 2))));
  CHECK_FALSE(rev.contains(FreeElement::monomial(Side::F, Word("\0\1", 2))));
}

TEST_CASE("root vector ideal generators") {
  const RootVectorIdeal gen = build_ideal(cat("A2"), 0);
  CHECK_FALSE(gen.height);
  CHECK(gen.plus.size() == 1);
  CHECK(gen.minus.size() == 1);
  CHECK_MESSAGE(gen.coincidence.ok(), first_failure(gen.coincidence));
  const RootVectorIdeal z = build_ideal(cat("A2_zeta3"), 0);
  REQUIRE(z.height);
  CHECK(*z.height == 3);
  CHECK(z.plus.size() == 2);
  CHECK(z.labels.size() == 2);
  CHECK_MESSAGE(z.coincidence.ok(), first_failure(z.coincidence));
}

TEST_CASE("Serre generators") {
  std::vector<std::string> labels;
  const auto g = serre_generators(cat("B2"), &labels);
  REQUIRE(g.size() == 2);
  CHECK(labels[0] == "(ad E1)^2 E2");
  CHECK(labels[1] == "(ad E2)^3 E1");
  for (const auto& x : g) CHECK(x.degree(2));
}

TEST_CASE("Serre relations characterize the Nichols algebra") {
  IdealFamily serre = [](const Bicharacter& x) { return serre_generators(x); };
  for (const std::string name : {"A2", "B2"}) {
    CAPTURE(name);
    const SuiteReport r = nichols_characterization(cat(name), serre);
    CHECK_MESSAGE(r.ok(), first_failure(r));
    const SuiteReport t = check_TpSerre(cat(name));
    CHECK_MESSAGE(t.ok(), first_failure(t));
    CHECK_FALSE(t.entries.empty());
  }
}

TEST_CASE("dropping a Serre generator is detected") {
  const Bicharacter chi = cat("A2");
  for (int drop = 0; drop < 2; ++drop) {
    CAPTURE(drop);
    IdealFamily f = [drop](const Bicharacter& x) {
      auto g = serre_generators(x);
      g.erase(g.begin() + drop);
      return g;
    };
    const SuiteReport r = nichols_characterization(chi, f);
    CHECK_FALSE(r.ok());
    bool witness = false;
    for (const auto& e : r.entries) witness = witness || (e.status == "fail" && !e.witness.empty());
    CHECK(witness);
  }
}

TEST_CASE("report serialization") {
  SuiteReport r;
  r.pass("a", "object a", "(1)");
  r.fail("b", "object a", "(1,2)", "E1 -> 0");
  r.add({"c", "object b", "", "info", ""});
  CHECK_FALSE(r.ok());
  CHECK(r.failures() == 1);
  const auto j = r.to_json();
  REQUIRE(j.is_array());
  CHECK(j.size() == 3);
  CHECK(j[1]["witness"] == "E1 -> 0");
  CHECK_FALSE(j[0].contains("witness"));
}
