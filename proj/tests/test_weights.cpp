#include "qslice/errors.hpp"
#include "qslice/linalg.hpp"
#include "qslice/random.hpp"
#include "qslice/weights.hpp"

#include "doctest.h"

#include <functional>
#include <numeric>

using namespace qslice;

namespace {

// Visits every (d, v) with d_i in [0, d_max] and v_i in [v_lo, v_hi].
void for_each_dims(int n, int d_max, int v_lo, int v_hi, const std::function<void(const DimData&)>& f) {
  const auto m = static_cast<std::size_t>(n - 1);
  DimData dd{n, std::vector<int>(m, 0), std::vector<int>(m, v_lo)};
  while (true) {
    f(dd);
    std::size_t k = 0;
    for (; k < 2 * m; ++k) {
      int& x = k < m ? dd.d[k] : dd.v[k - m];
      const int hi = k < m ? d_max : v_hi;
      if (x < hi) {
        ++x;
        break;
      }
      x = k < m ? 0 : v_lo;
    }
    if (k == 2 * m) return;
  }
}

// Simple reflection at vertex i on the weight d - Cv, written on v.
DimData reflect(DimData dd, int i) {
  const int vi = dd.v_at(i);
  dd.v[static_cast<std::size_t>(i - 1)] = dd.d_at(i) + dd.v_at(i - 1) + dd.v_at(i + 1) - vi;
  return dd;
}

}  // namespace

TEST_CASE("a_of examples") {
  CHECK(a_of({3, {1, 1}, {1, 1}}) == std::vector<int>{1, 1, 1});
  CHECK(a_of({3, {1, 1}, {0, 0}}) == std::vector<int>{2, 1, 0});
  CHECK(a_of({3, {1, 1}, {2, 0}}) == std::vector<int>{0, 3, 0});
}

TEST_CASE("v_of examples") {
  CHECK(v_of({1, 1}, {1, 1, 1}) == std::vector<int>{1, 1});
  CHECK(v_of({1, 1}, {3, 0, 0}) == std::vector<int>{-1, 0});
  CHECK(v_of({2, 0}, {1, 1, 0}) == std::vector<int>{1, 0});
  CHECK_THROWS_AS(v_of({1, 1}, {1, 1, 0}), Error);
}

TEST_CASE("lambda_of examples") {
  CHECK(lambda_of({1, 1, 1}) == Partition({3}));
  CHECK(lambda_of({2, 1, 0}) == Partition({2, 1}));
  CHECK(lambda_of({3, 0, 0}) == Partition({1, 1, 1}));
  CHECK_THROWS_AS(lambda_of({2, -1, 2}), Error);
}

TEST_CASE("dominant_form examples") {
  const auto f1 = dominant_form({3, {1, 1}, {1, 1}});
  CHECK(f1.v_prime == std::vector<int>{1, 1});
  CHECK(f1.perm == std::vector<int>{0, 1, 2});
  const auto f2 = dominant_form({3, {1, 1}, {2, 0}});
  CHECK(f2.v_prime == std::vector<int>{-1, 0});
  CHECK(f2.perm == std::vector<int>{1, 0, 2});
  CHECK(dominant_form({3, {2, 0}, {0, 0}}).v_prime == std::vector<int>{0, 0});
}

TEST_CASE("emptiness examples") {
  CHECK(quiver_nonempty({3, {1, 1}, {1, 1}}));
  CHECK(!quiver_nonempty({3, {1, 1}, {2, 0}}));
  CHECK(slice_nonempty({1, 1}, {1, 1, 1}));
  CHECK(!slice_nonempty({1, 1}, {0, 3, 0}));
  CHECK(slice_nonempty({4, 0, 0}, {4, 0, 0, 0}));
  CHECK(!slice_nonempty({1, 1}, {3, 1, -1}));
}

TEST_CASE("dimension examples") {
  CHECK(quiver_dim({3, {1, 1}, {1, 1}}) == 2);
  CHECK(quiver_dim({3, {2, 0}, {1, 0}}) == 2);
  CHECK(quiver_dim({4, {1, 2, 0}, {0, 0, 0}}) == 0);
  CHECK_THROWS_AS(quiver_dim({3, {1, 1}, {2, 0}}), Error);
  CHECK(slice_dim({1, 1}, {1, 1, 1}) == 2);
  CHECK(slice_dim({3, 0}, {1, 1, 1}) == 6);
  // lambda_a equal to the type of x.
  CHECK(slice_dim({1, 1}, {2, 1, 0}) == 0);
  CHECK(centralizer_dim_of_type(Partition({2, 1})) == 5);
  CHECK(centralizer_dim_of_type(Partition({3})) == 3);
}

TEST_CASE("x_type and the Cartan matrix") {
  CHECK(x_type({1, 1}) == Partition({2, 1}));
  CHECK(x_type({0, 2, 1}) == Partition({3, 2, 2}));
  const auto c = cartan_matrix(4);
  CHECK(c == std::vector<std::vector<int>>{{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}});
}

TEST_CASE("a and v are inverse and a sums to N") {
  for (int n = 2; n <= 4; ++n)
    for_each_dims(n, 4, -4, 4, [](const DimData& dd) {
      const auto a = a_of(dd);
      REQUIRE(std::accumulate(a.begin(), a.end(), 0) == dd.framing_total());
      REQUIRE(v_of(dd.d, a) == dd.v);
    });
  // n = 5, 6: the full grid has 9^10 points, so sample it.
  Rng rng(42);
  for (int n = 5; n <= 6; ++n)
    for (int trial = 0; trial < 20000; ++trial) {
      DimData dd{n, {}, {}};
      for (int i = 1; i < n; ++i) {
        dd.d.push_back(static_cast<int>(rng.uniform(0, 4)));
        dd.v.push_back(static_cast<int>(rng.uniform(-4, 4)));
      }
      REQUIRE(v_of(dd.d, a_of(dd)) == dd.v);
    }
}

TEST_CASE("a_i - a_{i+1} pairs d - v with the simple coroot") {
  for (int n = 2; n <= 5; ++n)
    for_each_dims(n, 2, -2, 2, [](const DimData& dd) {
      const auto a = a_of(dd);
      const auto c = cartan_matrix(dd.n);
      for (int i = 1; i <= dd.n - 1; ++i) {
        int cv = 0;
        for (int j = 1; j <= dd.n - 1; ++j) cv += c[i - 1][j - 1] * dd.v_at(j);
        REQUIRE(a[i - 1] - a[i] == dd.d_at(i) - cv);
      }
    });
}

TEST_CASE("simple reflections swap neighbouring entries of a") {
  for (int n = 2; n <= 4; ++n)
    for_each_dims(n, 3, -3, 3, [](const DimData& dd) {
      for (int i = 1; i <= dd.n - 1; ++i) {
        auto a = a_of(dd);
        std::swap(a[i - 1], a[i]);
        REQUIRE(a_of(reflect(dd, i)) == a);
      }
    });
}

TEST_CASE("a negative v never has a nonnegative dominant form") {
  for (int n = 2; n <= 4; ++n)
    for_each_dims(n, 3, -3, 3, [](const DimData& dd) {
      if (std::any_of(dd.v.begin(), dd.v.end(), [](int x) { return x < 0; })) REQUIRE(!quiver_nonempty(dd));
    });
}

TEST_CASE("DimData validation and key") {
  const DimData dd{3, {1, 1}, {1, 1}};
  CHECK(dd.key() == "n=3|d=1,1|v=1,1");
  CHECK(dd.framing_total() == 3);
  CHECK_THROWS_AS(DimData({3, {1}, {1, 1}}).validate(), Error);
  CHECK_THROWS_AS(DimData({1, {}, {}}).validate(), Error);
}
