#include "qslice/errors.hpp"
#include "qslice/linalg.hpp"
#include "qslice/phi.hpp"

#include "doctest.h"

#include <set>

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

const std::vector<DimData> kDims = {
    {3, {1, 1}, {1, 1}},       {3, {2, 1}, {2, 1}},       {4, {1, 1, 1}, {1, 2, 1}},
    {4, {0, 1, 1}, {1, 1, 1}}, {5, {1, 0, 1, 1}, {1, 1, 2, 1}}, {6, {1, 0, 0, 1, 1}, {1, 1, 1, 2, 1}},
    {7, {0, 1, 0, 0, 0, 1}, {1, 1, 1, 1, 1, 1}},
};

}  // namespace

TEST_CASE("hand example") {
  const ADHMData z = hand_example();
  REQUIRE(check_admissible(z));
  const TildeData t = phi(z);
  CHECK(t.Atil[0] == Matrix{{1, 1, 0}, {0, Rational(-1, 2), 1}});
  CHECK(t.Btil[0] == Matrix{{1, 0}, {0, 1}, {-1, Rational(-1, 2)}});
  CHECK(t.Atil[1] == Matrix{{1, 1}});
  CHECK(check_transversal(t).ok());
  CHECK(filtration_check(t));
  CHECK(phi_inverse(t) == z);
  const auto sp = inspect_slice_point(t);
  CHECK(sp.nilpotent);
  CHECK(sp.in_slice);
}

TEST_CASE("phi rejects non-admissible data") {
  ADHMData z = hand_example();
  z.dl(2) = Matrix{{1}};
  CHECK_THROWS_AS(phi(z), Error);
}

TEST_CASE("phi on random samples") {
  for (const DimData& dd : kDims)
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
      CAPTURE(dd.key());
      CAPTURE(seed);
      const ADHMData z = gen_general(dd, seed, GeneralOptions{.require_stable = false});
      const TildeData t = phi(z);
      const auto rep = check_transversal(t);
      CHECK_MESSAGE(rep.ok(), rep.first_violation);
      CHECK(filtration_check(t));
      CHECK(phi_inverse(t) == z);
      CHECK(phi(z, Solver::Generic) == t);
      CHECK(check_stable_criterion(z) == tilde_stability(t));
      const auto sp = inspect_slice_point(t);
      CHECK(sp.nilpotent);
      CHECK(sp.in_slice);
    }
}

TEST_CASE("stable samples give stable tilde data") {
  std::size_t stable = 0, unstable = 0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const ADHMData z = gen_general({4, {1, 1, 1}, {1, 2, 1}}, seed);
    const bool s = check_stable_definition(z);
    (s ? stable : unstable) += 1;
    CHECK(tilde_stability(phi(z)) == s);
  }
  CHECK(stable > 0);
  CHECK(unstable > 0);
}

TEST_CASE("chain shapes") {
  // Every solved block has the deg it is solved at, and the chains at a
  // level cover each positive-deg block exactly once.
  for (int n = 3; n <= 7; ++n)
    for (int i = 0; i <= n - 3; ++i) {
      std::set<BlockIndex> seen_t, seen_s;
      for (int d = 1; d <= n - 2 - i; ++d)
        for (int j = i + 2; j <= n - 1; ++j)
          for (int jp = i + 2; jp <= n - 1; ++jp) {
            const ChainShape cs = chain_shape(i, j, jp, d);
            for (int h = cs.h0; h <= cs.h1; ++h) {
              CHECK(deg_grad(BlockKind::T, j, h, jp, h + cs.k).deg == d);
              CHECK(deg_grad(BlockKind::S, j, h + 1, jp, h + cs.k).deg == d);
              CHECK(seen_t.insert({i, j, h, jp, h + cs.k}).second);
              CHECK(seen_s.insert({i, j, h + 1, jp, h + cs.k}).second);
            }
          }
      for (int j = i + 2; j <= n - 1; ++j)
        for (int jp = i + 2; jp <= n - 1; ++jp) {
          for (int h = 1; h <= j - i - 1; ++h)
            for (int hp = 1; hp <= jp - i; ++hp)
              if (deg_grad(BlockKind::T, j, h, jp, hp).deg > 0) CHECK(seen_t.count({i, j, h, jp, hp}) == 1);
          for (int h = 1; h <= j - i; ++h)
            for (int hp = 1; hp <= jp - i - 1; ++hp)
              if (deg_grad(BlockKind::S, j, h, jp, hp).deg > 0) CHECK(seen_s.count({i, j, h, jp, hp}) == 1);
        }
    }
}

TEST_CASE("coefficient tables") {
  CHECK(coefficient_tables(2).lambda.empty());
  CHECK_THROWS_AS(coefficient_tables(1), Error);
  const CoeffTable t3 = coefficient_tables(3);
  REQUIRE(t3.lambda.size() == 1);
  REQUIRE(t3.mu.size() == 1);
  // The hand example: t^{2,1}_{0,2,1} = -1/2 = lambda * delta_2 gamma_2.
  const ADHMData z = hand_example();
  const Rational lam = t3.lambda_at({0, 2, 1, 2, 1});
  CHECK(lam == Rational(1, 2));
  CHECK(phi(z).t(0, 2, 1, 2, 1) == composite_delta(z, 2, 2) * composite_gamma(z, 2, 2) * lam);
  for (int n = 2; n <= 6; ++n) {
    const auto rep = check_positivity(coefficient_tables(n));
    CHECK_MESSAGE(rep.ok, rep.first_violation);
  }
}

TEST_CASE("rectangle probes") {
  const ADHMData z = rectangle_probe(5, 3, 2, 1);
  CHECK(check_admissible(z));
  CHECK(z.dims.v == std::vector<int>{1, 2, 2, 1});
  CHECK(composite_delta(z, 1, 3) * composite_gamma(z, 2, 1) == Matrix{{1}});
  CHECK(composite_delta(z, 2, 3) * composite_gamma(z, 2, 2) == Matrix{{0}});
  CHECK_THROWS_AS(rectangle_probe(4, 3, 2, 1), Error);
  CHECK_THROWS_AS(rectangle_probe(5, 2, 2, 1), Error);
  for (int n = 3; n <= 6; ++n) {
    const auto rep = check_coefficient_probes(coefficient_tables(n));
    CHECK_MESSAGE(rep.ok, rep.first_violation);
    if (n >= 4) CHECK(rep.checked > 0);
  }
}

TEST_CASE("equivariance") {
  const DimData dd{5, {1, 0, 1, 1}, {1, 1, 2, 1}};
  const TildeLayout lay(dd);
  Rng rng(5);
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const ADHMData z = gen_general(dd, seed);
    const TildeData t = phi(z);
    for (int k = 0; k < 3; ++k) {
      const GLVElement g = GLVElement::random(rng, dd);
      CHECK(phi(act(g, z)) == act_tilde(embed_group(g, lay), t));
    }
  }
}
