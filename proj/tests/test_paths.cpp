#include "qslice/errors.hpp"
#include "qslice/harness.hpp"
#include "qslice/paths.hpp"

#include "doctest.h"

using namespace qslice;

namespace {

ADHMData hand_example() {
  ADHMData z = ADHMData::zero({3, {1, 1}, {1, 1}});
  z.a(1) = Matrix{{1}};
  z.b(1) = Matrix{{1}};
  z.g(1) = Matrix{{1}};
  z.dl(1) = Matrix{{1}};
  z.g(2) = Matrix{{1}};
  z.dl(2) = Matrix{{-1}};
  return z;
}

}  // namespace

TEST_CASE("B-path evaluation") {
  const ADHMData z = hand_example();
  CHECK(eval_bpath(BPath(2), z) == Matrix::identity(1));
  CHECK(eval_bpath(BPath({Arrow{true, 1}}), z) == z.a(1));
  // b1 after a1: V_1 -> V_2 -> V_1.
  const BPath loop({Arrow{false, 1}, Arrow{true, 1}});
  CHECK(loop.source() == 1);
  CHECK(loop.target() == 1);
  CHECK(eval_bpath(loop, z) == z.b(1) * z.a(1));
  CHECK_THROWS_AS(BPath({Arrow{true, 1}, Arrow{true, 1}}), Error);
}

TEST_CASE("admissible path evaluation") {
  const ADHMData z = hand_example();
  CHECK(eval_admissible(AdmissiblePath::at(1), z) == z.dl(1) * z.g(1));
  CHECK(eval_admissible(AdmissiblePath::at(1, 1), z) == z.dl(1) * z.g(1) * z.dl(1) * z.g(1));
  const AdmissiblePath p = parse_admissible("2 a1 1");
  CHECK(p.source() == 1);
  CHECK(p.target() == 2);
  CHECK(eval_admissible(p, z) == Matrix{{-1}});
}

TEST_CASE("degree formula") {
  CHECK(AdmissiblePath::at(3).degree() == 2);
  CHECK(parse_admissible("3^2 a2 b2 a2 2^1 a1 1").degree() == 2 + 3 + 3 + 1);
  // Concatenation adds degrees and one for the merged junction power.
  const AdmissiblePath p = parse_admissible("2 a1 1^1");
  const AdmissiblePath q = parse_admissible("1^2 b1 2");
  const auto pq = concatenate(p, q);
  REQUIRE(pq);
  CHECK(pq->degree() == p.degree() + q.degree() - 1);
  CHECK(to_string(*pq) == "2 a1 1^4 b1 2");
}

TEST_CASE("multiplication") {
  const AdmissiblePolynomial f = AdmissiblePolynomial::of(parse_admissible("2 a1 1"));
  CHECK(multiply(f, AdmissiblePolynomial{}).is_zero());
  CHECK(multiply(f, AdmissiblePolynomial::of(AdmissiblePath::at(2))).is_zero());
  const auto g = multiply(f, AdmissiblePolynomial::of(AdmissiblePath::at(1)));
  REQUIRE(g.terms.size() == 1);
  CHECK(g.terms.begin()->first == parse_admissible("2 a1 1^1"));

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const ADHMData z = gen_general({4, {1, 2, 1}, {2, 2, 1}}, seed);
    CHECK(eval_polynomial(g, z) == eval_polynomial(f, z) * eval_polynomial(AdmissiblePolynomial::of(AdmissiblePath::at(1)), z));
  }
}

TEST_CASE("evaluation is multiplicative on random pairs") {
  Rng rng(31);
  std::size_t pairs = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const ADHMData z = gen_general({5, {1, 1, 1, 1}, {1, 2, 2, 1}}, seed);
    for (int k = 0; k < 4; ++k) {
      const AdmissiblePath p = random_admissible_path(rng, 5, 3, 2);
      AdmissiblePath q = random_admissible_path(rng, 5, 3, 2);
      while (q.target() != p.source()) q = random_admissible_path(rng, 5, 3, 2);
      const auto pq = concatenate(p, q);
      REQUIRE(pq);
      CHECK(eval_admissible(*pq, z) == eval_admissible(p, z) * eval_admissible(q, z));
      const AdmissiblePolynomial f = AdmissiblePolynomial::of(p, Rational(2, 3));
      AdmissiblePolynomial g = AdmissiblePolynomial::of(q, Rational(5));
      // q followed by one extra loop at its source has the same type.
      g.add(*concatenate(q, AdmissiblePath::at(q.source())), Rational(-1));
      CHECK(eval_polynomial(multiply(f, g), z) == eval_polynomial(f, z) * eval_polynomial(g, z));
      ++pairs;
    }
  }
  CHECK(pairs >= 100);
}

TEST_CASE("theta residuals") {
  SUBCASE("vanish on admissible samples for short sandwiches") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const ADHMData z = gen_general({4, {1, 1, 2}, {2, 2, 1}}, seed);
      for (int i = 1; i <= 3; ++i)
        for (const BPath& a : bpaths_from(4, i, 3))
          for (const BPath& b : bpaths_to(4, i, 3 - a.degree())) CHECK(theta_residual(i, a, b, z).is_zero());
    }
  }
  SUBCASE("detect a perturbation") {
    ADHMData z = hand_example();
    z.g(1) = Matrix{{2}};
    const Matrix r = theta_residual(1, BPath(1), BPath(1), z);
    CHECK(r == z.g(1) * z.dl(1) - z.b(1) * z.a(1));
    CHECK(!r.is_zero());
  }
  SUBCASE("last vertex reads gamma delta + A B") {
    ADHMData z = hand_example();
    z.dl(2) = Matrix{{3}};
    CHECK(theta_residual(2, BPath(2), BPath(2), z) == z.g(2) * z.dl(2) + z.a(1) * z.b(1));
  }
}

TEST_CASE("generators of the invariant algebra") {
  CHECK(generators_P(2).size() == 1);
  CHECK(generators_P(2)[0] == AdmissiblePath::at(1));
  const auto g3 = generators_P(3);
  CHECK(g3.size() == 5);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const ADHMData z = gen_general({5, {1, 1, 1, 1}, {1, 2, 2, 1}}, seed);
    const auto gens = generators_P(5);
    const auto sig = invariant_signature(z);
    REQUIRE(gens.size() == sig.size());
    for (std::size_t k = 0; k < gens.size(); ++k) CHECK(eval_admissible(gens[k], z) == sig[k]);
  }
}

TEST_CASE("path text") {
  CHECK(to_string(parse_admissible("[2 a1 1^1]")) == "2 a1 1^1");
  CHECK(to_string(parse_admissible("3, a2, b2, a2, 2")) == "3 a2 b2 a2 2");
  // An empty segment merges neighbouring powers.
  CHECK(parse_admissible("1^1 1^2") == AdmissiblePath::at(1, 3));
  auto code = [](const char* s) {
    try {
      (void)parse_admissible(s);
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::InvalidArgument;
  };
  CHECK(code("a1 1") == Errc::ParseError);
  CHECK(code("2 a1") == Errc::ParseError);
  CHECK(code("2 a2 1") == Errc::ParseError);
  CHECK(code("1^x") == Errc::ParseError);
  CHECK(code("") == Errc::ParseError);
}
