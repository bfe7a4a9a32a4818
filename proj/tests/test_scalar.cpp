#include <random>

#include "doctest.h"
#include "oracles.hpp"

using namespace nichols;

namespace {

const ScalarContext* Q() { return ScalarContext::parameters({"q"}); }

Scalar P(const ScalarContext* ctx, const char* s) { return Scalar::parse(ctx, s); }

}  // namespace

TEST_CASE("rational arithmetic is exact") {
  const Scalar a = P(nullptr, "3/2"), b = P(nullptr, "-2/3");
  CHECK(a * b == Scalar(-1));
  CHECK((a + b).to_string() == "5/6");
  CHECK(a.inverse() * a == Scalar(1));
  CHECK(Scalar(2).pow(-3) == P(nullptr, "1/8"));
}

TEST_CASE("rational functions normalize") {
  const Scalar q = Scalar::param(Q(), 0);
  CHECK((q * q - Scalar(1)) / (q - Scalar(1)) == q + Scalar(1));
  CHECK(((q * q - Scalar(1)) / (q - Scalar(1))).to_string() == "q + 1");
  const Scalar x = Scalar(1) / (q * q - Scalar(1)) + Scalar(1) / (q + Scalar(1));
  CHECK(x * (q - Scalar(1)) == q / (q + Scalar(1)));
  CHECK(q.pow(-2) * q.pow(2) == Scalar(1));
  CHECK((q - q).is_zero());

  const ScalarContext* R = ScalarContext::parameters({"r", "s"});
  const Scalar r = Scalar::param(R, 0), s = Scalar::param(R, 1);
  CHECK((r - s) / (s - r) == Scalar(-1));
  CHECK((r * r - s * s) / (r * s - s * s) == (r + s) / s);
}

TEST_CASE("cyclotomic arithmetic reduces modulo the cyclotomic polynomial") {
  for (int N : {3, 4, 5, 6, 8, 12}) {
    const Scalar z = Scalar::zeta(ScalarContext::cyclotomic(N));
    CHECK(z.pow(N) == Scalar(1));
    CHECK(*z.root_of_unity_order() == N);
    Scalar sum(0);
    for (int k = 0; k < N; ++k) sum += z.pow(k);
    CHECK(sum.is_zero());
    const Scalar w = Scalar(1) / (z + Scalar(2));
    CHECK(w * (z + Scalar(2)) == Scalar(1));
  }
  const Scalar z12 = Scalar::zeta(ScalarContext::cyclotomic(12));
  CHECK(*z12.pow(4).root_of_unity_order() == 3);
  CHECK(*Scalar(-1).root_of_unity_order() == 2);
  CHECK(!Scalar(2).root_of_unity_order());
  CHECK(!Scalar::param(Q(), 0).root_of_unity_order());
}

TEST_CASE("field axioms on random elements") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> d(-3, 3);
  const auto ctxs = {Q(), ScalarContext::cyclotomic(5)};
  for (const ScalarContext* ctx : ctxs) {
    const Scalar g = ctx->is_cyclotomic() ? Scalar::zeta(ctx) : Scalar::param(ctx, 0);
    auto rnd = [&] {
      Scalar s(0);
      for (int k = -1; k <= 2; ++k) s += Scalar(d(rng)) * g.pow(k);
      return s;
    };
    for (int t = 0; t < 20; ++t) {
      const Scalar a = rnd(), b = rnd(), c = rnd();
      CHECK((a + b) * c == a * c + b * c);
      CHECK((a * b) * c == a * (b * c));
      if (!b.is_zero()) CHECK((a / b) * b == a);
      CHECK(Scalar::parse(ctx, a.to_string()) == a);
      CHECK((a.hash() == (a + Scalar(0)).hash()));
    }
  }
}

TEST_CASE("parser rejects malformed literals with a position") {
  CHECK_THROWS_AS(Scalar::parse(Q(), "q^"), ParseError);
  CHECK_THROWS_AS(Scalar::parse(Q(), "(q+1"), ParseError);
  CHECK_THROWS_AS(Scalar::parse(Q(), "t"), ParseError);
  CHECK_THROWS_AS(Scalar::parse(nullptr, "1/0"), std::exception);
  try {
    Scalar::parse(Q(), "q + * 2");
    FAIL("no exception");
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
  }
  CHECK(P(Q(), "q*q^-3") == Scalar::param(Q(), 0).pow(-2));
  CHECK(P(ScalarContext::cyclotomic(3), "z^4") == Scalar::zeta(ScalarContext::cyclotomic(3)));
}

TEST_CASE("q-binomials agree with the quantum plane expansion") {
  for (const auto& [name, q] : oracle::test_scalars()) {
    CAPTURE(name);
    for (int m = 0; m <= 8; ++m)
      for (int n = -1; n <= m + 1; ++n) CHECK(q_binomial(m, n, q) == oracle::quantum_plane_binomial(m, n, q));
    CHECK(q_int(3, q) == Scalar(1) + q + q * q);
    CHECK(q_factorial(3, q) == q_int(2, q) * q_int(3, q));
  }
}

TEST_CASE("q-integers at negative arguments") {
  const Scalar q = Scalar::param(Q(), 0);
  CHECK(q_int(0, q).is_zero());
  CHECK(q_int(-2, q) == -(Scalar(1) + q));
}
