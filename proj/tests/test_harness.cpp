#include "qslice/errors.hpp"
#include "qslice/harness.hpp"

#include "doctest.h"

using namespace qslice;

namespace {

CaseSpec small_case(GenMode mode) {
  CaseSpec c;
  c.dims = {4, {1, 1, 1}, {1, 2, 1}};
  c.mode = mode;
  c.seeds = {0, 1, 2};
  c.equivariance_draws = 2;
  return c;
}

}  // namespace

TEST_CASE("keys roundtrip") {
  const CaseSpec c = small_case(GenMode::General);
  CHECK(c.key() == "n=4|d=1,1,1|v=1,2,1|mode=general");
  const CaseSpec back = case_from_key(c.sample_key(7));
  CHECK(back.key() == c.key());
  CHECK(back.seeds == std::vector<std::uint64_t>{7});
  CHECK_THROWS_AS(case_from_key("n=4|d=1"), Error);
  CHECK(parse_mode("lagrangian") == GenMode::Lagrangian);
  CHECK_THROWS_AS(parse_mode("bogus"), Error);
}

TEST_CASE("small suites pass and are deterministic") {
  const std::vector<CaseSpec> cases = {small_case(GenMode::General), small_case(GenMode::Lagrangian)};
  const Report r1 = run_suite(cases, 1);
  const Report r2 = run_suite(cases, 2);
  CHECK(r1.passed());
  CHECK(r1.to_json().dump() == r2.to_json().dump());
  const auto totals = r1.totals();
  for (const std::string& name : {"admissible", "embedding", "roundtrip", "stability", "filtration"}) {
    CAPTURE(name);
    CHECK(totals.at(name).checked > 0);
    CHECK(totals.at(name).failed == 0);
  }
  CHECK(r1.cases[0].key < r1.cases[1].key);
}

TEST_CASE("empty suite passes") {
  const Report r = run_suite({}, 1);
  CHECK(r.passed());
  CHECK(r.cases.empty());
}

TEST_CASE("invariant selection") {
  CaseSpec c = small_case(GenMode::General);
  c.invariants = {"admissible"};
  const CaseReport rep = run_case(c);
  CHECK(rep.passed());
  CHECK(rep.tallies.count("admissible") == 1);
  CHECK(rep.tallies.count("equivariance") == 0);
}

TEST_CASE("replay reproduces a sample") {
  const CaseSpec c = small_case(GenMode::General);
  const CaseReport a = replay(c.sample_key(2));
  CHECK(a.passed());
  CHECK(a.samples == 1);
  CHECK(generate(c.dims, c.mode, 2) == generate(c.dims, c.mode, 2));
}

TEST_CASE("flag mode") {
  CaseSpec c;
  c.dims = {4, {3, 0, 0}, {2, 1, 0}};
  c.mode = GenMode::Flag;
  c.seeds = {0, 1};
  c.equivariance_draws = 1;
  const CaseReport rep = run_case(c);
  CHECK(rep.passed());
  CHECK(rep.tallies.at("flag").checked > 0);
  c.dims = {3, {1, 1}, {1, 1}};
  CHECK_THROWS_AS(generate(c.dims, GenMode::Flag, 0), Error);
}

TEST_CASE("suite files") {
  const Json spec = Json::parse(R"({
    "defaults": {"equivariance_draws": 1},
    "cases": [{"n": 3, "d": [1, 1], "v": [1, 1], "mode": "general", "seeds": [4, 5]},
              {"n": 2, "d": [2], "v": [1], "seeds": 2}]
  })");
  const auto cases = suite_from_json(spec);
  REQUIRE(cases.size() == 2);
  CHECK(cases[0].seeds == std::vector<std::uint64_t>{4, 5});
  CHECK(cases[1].seeds.size() == 2);
  CHECK(cases[0].equivariance_draws == 1);
  CHECK(run_suite(cases, 1).passed());
  CHECK_THROWS_AS(suite_from_json(Json::parse(R"({"cases": [{"n": 3, "d": [1], "v": [1, 1]}]})")), Error);
  CHECK_THROWS_AS(suite_from_json(Json::parse(R"({"cases": 3})")), Error);
}

TEST_CASE("default matrix") {
  MatrixBounds b;
  b.n_max = 3;
  b.d_max = 1;
  b.v_max = 1;
  const auto cases = default_matrix(CaseSpec{}, {GenMode::General, GenMode::Lagrangian}, b);
  CHECK(!cases.empty());
  CHECK(cases.size() % 2 == 0);
  for (const auto& c : cases) {
    CHECK(quiver_nonempty(c.dims));
    CHECK(c.dims.framing_total() <= b.n_cap);
  }
}

TEST_CASE("comb scan") {
  CombBounds b{2, 2, 2, 2};
  const CombReport ok = exhaustive_comb_scan(b);
  CHECK(ok.cases == 15);
  CHECK(ok.passed());
  CHECK(ok.nonempty > 0);
  CombPredicates flipped;
  flipped.quiver = [](const DimData& dd) { return !quiver_nonempty(dd); };
  const CombReport bad = exhaustive_comb_scan(b, flipped);
  CHECK(bad.disagreements == 15);
  CHECK(!bad.passed());
  REQUIRE(!bad.examples.empty());
  CHECK(bad.examples[0].find("n=2") != std::string::npos);
}

TEST_CASE("random admissible paths are valid") {
  Rng rng(9);
  for (int k = 0; k < 200; ++k) {
    const AdmissiblePath p = random_admissible_path(rng, 5, 3, 2);
    CHECK(parse_admissible(to_string(p)) == p);
    for (const auto& t : p.terms()) CHECK((t.vertex >= 1 && t.vertex <= 4));
  }
}
