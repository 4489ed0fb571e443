#include <doctest.h>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "xprod/search.hpp"

using namespace xprod;

namespace {

const Field F2 = Field::prime(2);

SearchSpec frozen_flips() {
  SearchSpec spec;
  spec.frozen.emplace("R1", flip<Zp>(F2, 2, 2));
  spec.frozen.emplace("R2", flip<Zp>(F2, 2, 2));
  spec.frozen.emplace("R3", flip<Zp>(F2, 2, 2));
  return spec;
}

bool same(const std::vector<TwoSidedData<Zp>>& a, const std::vector<TwoSidedData<Zp>>& b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin());
}

}  // namespace

TEST_CASE("dimension one over F2 has only the trivial solution") {
  const auto k = fx::ground<Zp>(F2);
  const auto r = search_fp(SearchSpec{}, k, PointedSpace<Zp>::of(k), k);
  CHECK(r.space == 1);
  REQUIRE(r.solutions.size() == 1);
  CHECK(r.solutions[0].E().matrix()(0, 0) == Zp::bound(1, 2));
}

TEST_CASE("frozen flips over dual numbers in characteristic 2") {
  const auto D = fx::dual<Zp>(F2);
  const auto r = search_fp(frozen_flips(), D, PointedSpace<Zp>::of(D), D);
  // E is fixed on 1 (x) v and v (x) 1; only E(x (x) x) in A (x) V (x) C is free.
  CHECK(r.space == 256);
  // Regression value recorded from the exhaustive search: every choice of
  // E(x (x) x) survives, since all three algebras commute.
  CHECK(r.solutions.size() == 256);
  for (const auto& d : r.solutions) {
    CHECK(check_twosided(d).all_pass());
    const auto M = build_twosided(d);
    CHECK(oracle::is_associative_unital(F2, M.mul().matrix(), M.unit()));
    CHECK(M.mul().matrix() == oracle::product(d));
    CHECK(presentations_agree(d).all_pass());
  }
  const auto flips = fx::all_flips<Zp>(F2, D, D, D);
  CHECK(std::find(r.solutions.begin(), r.solutions.end(), flips) != r.solutions.end());
}

TEST_CASE("search output does not depend on the worker count") {
  const auto D = fx::dual<Zp>(F2);
  auto spec = frozen_flips();
  spec.frozen.erase("R1");
  const auto one = search_fp(spec, D, PointedSpace<Zp>::of(D), D, 1);
  const auto four = search_fp(spec, D, PointedSpace<Zp>::of(D), D, 4);
  CHECK(one.space == 16 * 256);
  CHECK(same(one.solutions, four.solutions));
  CHECK(one.solutions.size() >= 16);
}

TEST_CASE("randomized search is reproducible for a seed") {
  const auto D = fx::dual<Zp>(F2);
  SearchSpec spec;
  spec.mode = SearchMode::Randomized;
  spec.budget = 3000;
  spec.seed = 7;
  const auto a = search_fp(spec, D, PointedSpace<Zp>::of(D), D, 1);
  const auto b = search_fp(spec, D, PointedSpace<Zp>::of(D), D, 3);
  CHECK(same(a.solutions, b.solutions));
  for (const auto& d : a.solutions) CHECK(check_twosided(d).all_pass());
}

TEST_CASE("exhaustive search refuses a space above the budget") {
  const auto D = fx::dual<Zp>(F2);
  SearchSpec spec;
  spec.budget = 1000;
  try {
    (void)search_fp(spec, D, PointedSpace<Zp>::of(D), D);
    FAIL("expected SearchSpaceTooLarge");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SearchSpaceTooLarge);
  }
}

TEST_CASE("search needs a prime field") {
  const Field Q = Field::rationals();
  const auto k = fx::ground<Zp>(F2);
  (void)Q;
  const auto F3 = Field::prime(3);
  const auto k3 = fx::ground<Zp>(F3);
  CHECK_THROWS_AS(search_fp(SearchSpec{}, k, PointedSpace<Zp>::of(k3), k), Error);
}
