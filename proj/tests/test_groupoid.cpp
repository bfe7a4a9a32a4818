#include <set>

#include "doctest.h"
#include "nichols/catalog.hpp"
#include "nichols/groupoid.hpp"
#include "oracles.hpp"

using namespace nichols;
using oracle::cat;
using oracle::mk;

TEST_CASE("catalog expectations match exploration and the BFS oracle") {
  for (const auto& e : catalog()) {
    CAPTURE(e.name);
    const Bicharacter chi = e.chi();
    const CartanScheme s = explore(chi);
    REQUIRE(s.complete);
    const FinitenessReport f = is_finite(s);
    REQUIRE(f.status == Finiteness::Finite);
    const RootSystem r = real_roots(s, 0);
    const oracle::OrbitCounts o = oracle::orbit_counts(chi);
    CHECK(s.size() == o.objects);
    CHECK(f.morphisms_per_object[0] == o.morphisms_from_start);
    CHECK(std::set<Lattice>(r.positive.begin(), r.positive.end()) == o.positive_roots);
    CHECK(s.size() == e.orbit_size->value);
    CHECK(static_cast<long>(r.positive.size()) == e.positive_roots->value);
    CHECK(f.morphisms_per_object[0] == e.morphisms->value);
  }
}

TEST_CASE("axioms, Coxeter words and rank-two counts hold on closing orbits") {
  for (const auto& e : catalog()) {
    CAPTURE(e.name);
    const CartanScheme s = explore(e.chi());
    const CheckReport rep = check_axioms(s);
    CHECK(rep.ok());
    CHECK(rep.checks > 0);
    std::vector<RootSystem> roots;
    for (int a = 0; a < s.size(); ++a) roots.push_back(real_roots(s, a));
    CHECK(check_cm(s, roots).ok());
  }
}

TEST_CASE("rank2_M gives the Coxeter numbers") {
  CHECK(rank2_M(cat("A2"), 0, 1) == 3);
  CHECK(rank2_M(cat("B2"), 0, 1) == 4);
  CHECK(rank2_M(cat("G2"), 0, 1) == 6);
  CHECK(rank2_M(cat("A3"), 0, 2) == 2);
  CHECK(rank2_M(cat("A3"), 1, 2) == 3);
  CHECK(rank2_M(cat("super"), 0, 1) == 3);
  // affine type A1^(1): the alternating chain never turns negative
  const Bicharacter aff = mk(ScalarContext::parameters({"q"}), {{"q^2", "q^-2"}, {"q^-2", "q^2"}});
  CHECK(!rank2_M(aff, 0, 1));
}

TEST_CASE("lengths and the longest element") {
  for (const char* name : {"A2", "B2", "G2", "A3", "super"}) {
    CAPTURE(name);
    const CartanScheme s = explore(cat(name));
    const RootSystem r = real_roots(s, 0);
    const Morphism w0 = longest_from(s, 0);
    CHECK(static_cast<std::size_t>(length(s, w0)) == r.positive.size());
    CHECK(w0.word.size() == r.positive.size());
    const Morphism w0t = longest(s, 0);
    CHECK(w0t.word.size() == r.positive.size());
    // w0 maps every positive root at its source to a negative one
    for (const Lattice& b : r.positive) {
      const Lattice im = w0.matrix * b;
      CHECK(std::all_of(im.begin(), im.end(), [](int x) { return x <= 0; }));
    }
    const Morphism id = compose_word(s, 0, {});
    CHECK(length(s, id) == 0);
    const Morphism ss = compose_word(s, 0, {0, 0});
    CHECK(ss.matrix == identity_matrix(s.rank));
    CHECK(length(s, ss) == 0);
  }
}

TEST_CASE("morphism tables into and from an object have the same size") {
  const CartanScheme s = explore(cat("super"));
  for (int a = 0; a < s.size(); ++a) CHECK(morphisms_from(s, a).morphisms.size() == morphisms_into(s, a).morphisms.size());
}

TEST_CASE("truncated exploration is refused by finiteness queries") {
  ExploreOptions o;
  o.object_cap = 1;
  const CartanScheme s = explore(cat("super"), o);
  CHECK_FALSE(s.complete);
  CHECK_THROWS_AS(s.require_complete(), IncompleteGroupoid);
}

TEST_CASE("infinite Weyl groupoid is detected") {
  const Bicharacter aff = mk(ScalarContext::parameters({"q"}), {{"q^2", "q^-2"}, {"q^-2", "q^2"}});
  const CartanScheme s = explore(aff);
  CHECK(s.complete);
  CHECK(is_finite(s, 5000).status != Finiteness::Finite);
}

TEST_CASE("JSON export round trips and DOT export is well formed") {
  for (const char* name : {"A2", "super", "sl3_two_parameter"}) {
    const CartanScheme s = explore(cat(name));
    const CartanScheme t = scheme_from_json(to_json(s));
    CHECK(to_json(t) == to_json(s));
    CHECK(t.objects == s.objects);
    CHECK(t.edge == s.edge);
    CHECK(t.cartan == s.cartan);
    const CartanScheme re = explore(t.objects[0]);
    CHECK(to_json(re) == to_json(s));
    const std::string dot = to_dot(s);
    CHECK(dot.rfind("graph", 0) == 0);
    CHECK(dot.find("o0") != std::string::npos);
  }
}
