#include "qslice/errors.hpp"
#include "qslice/linalg.hpp"
#include "qslice/phi.hpp"

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

TEST_CASE("layout of the hand example") {
  const TildeLayout lay({3, {1, 1}, {1, 1}});
  CHECK(lay.framing_total() == 3);
  CHECK(lay.size(1) == 2);
  CHECK(lay.size(2) == 1);
  const auto& s0 = lay.slots(0);
  REQUIRE(s0.size() == 4);
  CHECK(s0[0].dim == 0);
  CHECK((s0[1].j == 1 && s0[1].k == 1));
  CHECK((s0[2].j == 2 && s0[2].k == 1));
  CHECK((s0[3].j == 2 && s0[3].k == 2));
  CHECK(lay.d_slot(1, 2, 1).offset == 1);
  CHECK_THROWS_AS(lay.d_slot(1, 2, 2), Error);
}

TEST_CASE("layout sizes") {
  const DimData dd{5, {1, 2, 0, 1}, {2, 1, 3, 1}};
  const TildeLayout lay(dd);
  CHECK(static_cast<int>(lay.framing_total()) == dd.framing_total());
  for (int i = 1; i <= 4; ++i) {
    int expect = dd.v_at(i);
    for (int j = i + 1; j <= 4; ++j) expect += (j - i) * dd.d_at(j);
    CHECK(static_cast<int>(lay.size(i)) == expect);
  }
  const TildeLayout flat({4, {3, 0, 0}, {2, 1, 0}});
  CHECK(flat.framing_total() == 3);
  for (int i = 1; i <= 3; ++i) CHECK(flat.d_prime_size(i) == 0);
  const TildeLayout empty_v({4, {1, 1, 1}, {0, 0, 0}});
  CHECK(empty_v.size(1) == 3);
  CHECK(empty_v.size(2) == 1);
}

TEST_CASE("deg and grad") {
  for (int j = 1; j <= 5; ++j)
    for (int h = 1; h <= 4; ++h) {
      CHECK(deg_grad(BlockKind::T, j, h, j, h + 1).deg == 0);
      CHECK(deg_grad(BlockKind::S, j, h, j, h).deg == 0);
      const auto dg = deg_grad(BlockKind::T, j, h, j, h);
      CHECK(dg.deg == 1);
      CHECK(dg.grad == 2);
    }
}

TEST_CASE("deg and grad compose") {
  // Grad is additive along composites and deg is superadditive, with
  // T after S and S after T both graded as T, and S after S as S.
  auto compose = [](BlockKind a, BlockKind b) {
    return a == BlockKind::S && b == BlockKind::S ? BlockKind::S : BlockKind::T;
  };
  std::size_t checked = 0;
  for (const BlockKind k1 : {BlockKind::T, BlockKind::S})
    for (const BlockKind k2 : {BlockKind::T, BlockKind::S}) {
      if (k1 == BlockKind::T && k2 == BlockKind::T) continue;
      for (int j = 1; j <= 6; ++j)
        for (int h = 1; h <= j; ++h)
          for (int jm = 1; jm <= 6; ++jm)
            for (int hm = 1; hm <= jm; ++hm)
              for (int jp = 1; jp <= 6; ++jp)
                for (int hp = 1; hp <= jp; ++hp) {
                  const auto a = deg_grad(k1, j, h, jm, hm);
                  const auto b = deg_grad(k2, jm, hm, jp, hp);
                  const auto c = deg_grad(compose(k1, k2), j, h, jp, hp);
                  CHECK(a.grad + b.grad == c.grad);
                  CHECK(a.deg + b.deg <= c.deg);
                  ++checked;
                }
    }
  CHECK(checked == 3 * 21 * 21 * 21);
}

TEST_CASE("sl2 triples") {
  const DimData dd{5, {1, 2, 1, 2}, {0, 0, 0, 0}};
  const TildeLayout lay(dd);
  for (int i = 0; i <= 3; ++i) {
    const SL2Triple tr = sl2_of_level(lay, i);
    CHECK(tr.h == commutator(tr.x, tr.y));
    CHECK(commutator(tr.h, tr.x) == tr.x * Rational(2));
    CHECK(commutator(tr.h, tr.y) == tr.y * Rational(-2));
  }
  const SL2Triple t0 = sl2_of_level(TildeLayout({3, {1, 1}, {1, 1}}), 0);
  CHECK(t0.x == Matrix{{0, 0, 0}, {0, 0, 1}, {0, 0, 0}});
  CHECK(jordan_type(t0.x) == Partition({2, 1}));
  CHECK(jordan_type(sl2_of_level(lay, 0).x) == x_type(dd.d));
  const SL2Triple last = sl2_of_level(lay, 3);
  CHECK(last.x.is_zero());
  CHECK(last.y.is_zero());
  CHECK(last.x.rows() == 2);
}

TEST_CASE("transversality detects perturbations") {
  const ADHMData z = gen_general({4, {1, 1, 1}, {1, 2, 1}}, 3);
  const TildeData t = phi(z);
  REQUIRE(check_transversal(t).ok());

  SUBCASE("identity block") {
    TildeData bad = t;
    bad.set_t(0, 2, 1, 2, 2, Matrix{{0}});
    const auto r = check_transversal(bad);
    CHECK(!r.ok());
    CHECK(!r.block_rules);
    CHECK(!r.first_violation.empty());
    CHECK(!filtration_check(bad));
  }
  SUBCASE("negative deg block") {
    TildeData bad = t;
    // deg t(j=2,h=1; jp=3,hp=3) = min(-1, 0) < 0.
    bad.set_t(0, 2, 1, 3, 3, Matrix{{1}});
    CHECK(!check_transversal(bad).block_rules);
  }
  SUBCASE("free block breaks the relations") {
    TildeData bad = t;
    bad.set_t(0, 3, 1, 3, 1, t.t(0, 3, 1, 3, 1) + Matrix{{1}});
    const auto r = check_transversal(bad);
    CHECK(r.block_rules);
    CHECK(!r.ok());
  }
  CHECK_THROWS_AS(phi_inverse([&] {
                    TildeData bad = t;
                    bad.set_s(0, 2, 1, 2, 1, Matrix{{7}});
                    return bad;
                  }()),
                  Error);
}

TEST_CASE("slice point of the zero datum is x") {
  for (const DimData& dd : {DimData{3, {1, 1}, {1, 1}}, DimData{5, {1, 0, 2, 1}, {1, 1, 2, 1}}}) {
    const TildeData t = phi(ADHMData::zero(dd));
    const Matrix x = sl2_of_level(t.layout, 0).x;
    CHECK(slice_point(t) == x);
    CHECK(jordan_type(x) == x_type(dd.d));
    if (std::any_of(dd.v.begin(), dd.v.end(), [](int v) { return v > 0; })) CHECK(!tilde_stability(t));
  }
}

TEST_CASE("group embedding") {
  const DimData dd{4, {1, 1, 1}, {1, 2, 1}};
  const TildeLayout lay(dd);
  const auto id = embed_group(GLVElement::identity(dd), lay);
  for (int i = 0; i <= 3; ++i) CHECK(id[static_cast<std::size_t>(i)] == Matrix::identity(lay.size(i)));
  Rng rng(4);
  const GLVElement g = GLVElement::random(rng, dd);
  const auto eg = embed_group(g, lay);
  CHECK(eg[2].block(0, 0, 2, 2) == g.at(2));
  CHECK(eg[2].block(2, 2, lay.d_prime_size(2), lay.d_prime_size(2)) == Matrix::identity(lay.d_prime_size(2)));
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const ADHMData z = gen_general(dd, seed);
    CHECK(phi(act(g, z)) == act_tilde(eg, phi(z)));
  }
}

TEST_CASE("filtration in the degenerate layout is vacuous") {
  const ADHMData z = gen_general({4, {3, 0, 0}, {2, 1, 1}}, 1);
  const TildeData t = phi(z);
  CHECK(filtration_check(t));
  CHECK(t.Atil[0] == z.g(1));
  CHECK(t.Btil[0] == z.dl(1));
}
