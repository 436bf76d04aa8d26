#include "qslice/adhm.hpp"
#include "qslice/errors.hpp"
#include "qslice/linalg.hpp"

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

const std::vector<DimData> kSampleDims = {
    {2, {2}, {1}},          {3, {1, 1}, {1, 1}},       {3, {2, 1}, {2, 1}},       {4, {1, 1, 1}, {1, 2, 1}},
    {4, {2, 0, 1}, {2, 1, 1}}, {5, {1, 0, 1, 1}, {1, 1, 2, 1}}, {5, {2, 1, 0, 1}, {2, 3, 2, 1}},
};

}  // namespace

TEST_CASE("admissibility examples") {
  CHECK(check_admissible(ADHMData::zero({4, {1, 2, 1}, {2, 2, 1}})));
  Rng rng(1);
  ADHMData z = ADHMData::zero({4, {1, 2, 1}, {2, 2, 1}});
  for (int i = 1; i <= 2; ++i) z.a(i) = rng.matrix(z.a(i).rows(), z.a(i).cols());
  for (int i = 1; i <= 3; ++i) z.g(i) = rng.matrix(z.g(i).rows(), z.g(i).cols());
  CHECK(check_admissible(z));
  CHECK(check_admissible(hand_example()));
  ADHMData bad = hand_example();
  bad.dl(2) = Matrix{{1}};
  CHECK(!check_admissible(bad));
  CHECK(adhm_defect(bad, 2) == Matrix{{2}});
}

TEST_CASE("n = 2 has the single relation gamma_1 delta_1 = 0") {
  ADHMData z = ADHMData::zero({2, {2}, {1}});
  z.g(1) = Matrix{{1, 0}};
  z.dl(1) = Matrix{{0}, {1}};
  CHECK(check_admissible(z));
  z.dl(1) = Matrix{{1}, {0}};
  CHECK(!check_admissible(z));
}

TEST_CASE("composite maps") {
  const ADHMData z = hand_example();
  CHECK(composite_gamma(z, 2, 2) == z.g(2));
  CHECK(composite_gamma(z, 2, 1) == Matrix{{1}});
  CHECK(composite_delta(z, 1, 1) == z.dl(1));
  CHECK(composite_delta(z, 1, 2) == Matrix{{-1}});
  ADHMData zb = z;
  zb.b(1) = Matrix{{0}};
  zb.a(1) = Matrix{{0}};
  CHECK(composite_gamma(zb, 2, 1).is_zero());
  CHECK(composite_delta(zb, 1, 2).is_zero());

  for (const auto& dd : kSampleDims) {
    const ADHMData r = gen_general(dd, 3);
    for (int j = 1; j <= dd.n - 1; ++j)
      for (int i = 1; i < j; ++i) {
        CHECK(composite_gamma(r, j, i) == r.b(i) * composite_gamma(r, j, i + 1));
        CHECK(composite_delta(r, i, j) == composite_delta(r, i + 1, j) * r.a(i));
      }
  }
}

TEST_CASE("stability examples") {
  CHECK(check_stable_criterion(ADHMData::zero({3, {1, 1}, {0, 0}})));
  ADHMData z = ADHMData::zero({3, {1, 2}, {1, 2}});
  z.g(1) = Matrix{{1}};
  z.g(2) = Matrix::identity(2);
  CHECK(check_stable_criterion(z));
  CHECK(check_stable_definition(z));
  ADHMData dead = ADHMData::zero({3, {1, 1}, {1, 1}});
  dead.a(1) = Matrix{{5}};
  CHECK(!check_stable_criterion(dead));
  CHECK(!check_stable_definition(dead));
  CHECK(check_stable_criterion(hand_example()));
  CHECK(check_stable_definition(hand_example()));
  ADHMData bad = hand_example();
  bad.dl(2) = Matrix{{1}};
  CHECK_THROWS_AS(check_stable_criterion(bad), Error);
}

TEST_CASE("the two stability tests agree on generated samples") {
  std::size_t stable = 0, unstable = 0;
  for (const auto& dd : kSampleDims)
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      GeneralOptions opts;
      opts.rank_budget = static_cast<int>(seed % 3);
      const ADHMData z = gen_general(dd, seed, opts);
      REQUIRE(check_admissible(z));
      const bool s = check_stable_criterion(z);
      REQUIRE(s == check_stable_definition(z));
      ++(s ? stable : unstable);
    }
  CHECK(stable > 0);
  CHECK(unstable > 0);
}

TEST_CASE("group action") {
  const DimData dd{4, {1, 1, 1}, {1, 2, 1}};
  const ADHMData z = gen_general(dd, 5);
  CHECK(act(GLVElement::identity(dd), z) == z);

  Rng rng(8);
  const GLVElement g = GLVElement::random(rng, dd);
  const GLVElement h = GLVElement::random(rng, dd);
  CHECK(act(g, act(h, z)) == act(compose(g, h), z));

  GLVElement two;
  for (int i = 1; i <= 3; ++i) two.g.push_back(Matrix::scalar(static_cast<std::size_t>(dd.v_at(i)), Rational(2)));
  const ADHMData s = act(two, z);
  CHECK(s.A == z.A);
  CHECK(s.B == z.B);
  for (int i = 1; i <= 3; ++i) {
    CHECK(s.g(i) == z.g(i) * Rational(2));
    CHECK(s.dl(i) == z.dl(i) * Rational(1, 2));
  }

  for (const auto& d2 : kSampleDims)
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const ADHMData x = gen_general(d2, seed);
      const GLVElement k = GLVElement::random(rng, d2);
      const ADHMData y = act(k, x);
      CHECK(check_admissible(y));
      CHECK(check_stable_criterion(y) == check_stable_criterion(x));
      CHECK(check_stable_definition(y) == check_stable_definition(x));
      CHECK(invariant_signature(y) == invariant_signature(x));
    }
}

TEST_CASE("invariant signature") {
  CHECK(signature_indices(3) ==
        std::vector<std::array<int, 3>>{{1, 1, 1}, {1, 2, 1}, {2, 1, 1}, {2, 2, 1}, {2, 2, 2}});
  const auto sig = invariant_signature(hand_example());
  REQUIRE(sig.size() == 5);
  CHECK(sig[0] == Matrix{{1}});
  for (const auto& m : invariant_signature(ADHMData::zero({4, {1, 1, 1}, {1, 1, 1}}))) CHECK(m.is_zero());
}

TEST_CASE("generators") {
  const ADHMData zero = gen_lagrangian({3, {1, 1}, {0, 0}}, 0);
  CHECK(zero == ADHMData::zero({3, {1, 1}, {0, 0}}));
  const ADHMData l = gen_lagrangian({3, {1, 1}, {1, 1}}, 4);
  CHECK(check_stable_criterion(l));
  for (const auto& b : l.B) CHECK(b.is_zero());
  for (const auto& d : l.delta) CHECK(d.is_zero());
  try {
    (void)gen_lagrangian({3, {0, 1}, {2, 1}}, 0);
    FAIL("expected Unsatisfiable");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::Unsatisfiable);
  }

  // Determinism and admissibility of the general generator.
  for (const auto& dd : kSampleDims) {
    CHECK(gen_general(dd, 17) == gen_general(dd, 17));
    CHECK(check_admissible(gen_general(dd, 17)));
  }
  GeneralOptions zero_b;
  zero_b.rank_budget = 0;
  const ADHMData flat = gen_general({4, {1, 1, 1}, {1, 2, 1}}, 2, zero_b);
  for (const auto& b : flat.B) CHECK(b.is_zero());
  for (const auto& d : flat.delta) CHECK(d.is_zero());
}

TEST_CASE("the hand example is reachable by the general construction") {
  // C_1 = B_1 A_1 = [1] and C_2 = -A_1 B_1 = [-1] both have rank 1 <= d_i.
  const ADHMData z = hand_example();
  CHECK(z.b(1) * z.a(1) == z.g(1) * z.dl(1));
  CHECK(z.a(1) * z.b(1) * Rational(-1) == z.g(2) * z.dl(2));
  bool nonzero_b = false;
  for (std::uint64_t seed = 0; seed < 20 && !nonzero_b; ++seed) nonzero_b = !gen_general({3, {1, 1}, {1, 1}}, seed).b(1).is_zero();
  CHECK(nonzero_b);
}

TEST_CASE("shape validation") {
  ADHMData z = hand_example();
  z.a(1) = Matrix(2, 1);
  CHECK_THROWS_AS(z.validate(), Error);
}
