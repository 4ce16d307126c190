#include <doctest.h>

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

#include "cubesieve/cube.hpp"
#include "oracles.hpp"

using namespace cubesieve;

namespace {

// Largest d such that some cube a0 + {0,1}-combinations of d positive steps
// (repeats allowed) stays in the member list; -1 when there are no members.
int naive_max_dimension(const std::vector<bool>& in, std::uint64_t n) {
  int best = -1;
  std::vector<std::uint64_t> steps;
  std::function<void(std::uint64_t, std::uint64_t, std::set<std::uint64_t>&)> grow =
      [&](std::uint64_t a0, std::uint64_t min_step, std::set<std::uint64_t>& current) {
        best = std::max(best, static_cast<int>(steps.size()));
        const std::uint64_t top = *current.rbegin();
        for (std::uint64_t s = min_step; top + s <= n; ++s) {
          bool ok = true;
          for (std::uint64_t x : current) {
            if (!in[x + s]) {
              ok = false;
              break;
            }
          }
          if (!ok) continue;
          std::set<std::uint64_t> next = current;
          for (std::uint64_t x : current) next.insert(x + s);
          steps.push_back(s);
          grow(a0, s, next);
          steps.pop_back();
        }
      };
  for (std::uint64_t a0 = 1; a0 <= n; ++a0) {
    if (!in[a0]) continue;
    std::set<std::uint64_t> start{a0};
    grow(a0, 1, start);
  }
  return best;
}

}  // namespace

TEST_CASE("HilbertCube construction and sums") {
  CHECK(sums(HilbertCube(4, {})) == std::vector<std::uint64_t>{4});
  CHECK(sums(HilbertCube(1, {24, 7})) == std::vector<std::uint64_t>{1, 8, 25, 32});
  CHECK(sums(HilbertCube(0, {1, 1})) == std::vector<std::uint64_t>{0, 1, 1, 2});
  CHECK_THROWS_AS(HilbertCube(0, {1, 1}, true), std::invalid_argument);
  CHECK_THROWS_AS(HilbertCube(0, {0}), std::invalid_argument);
  const HilbertCube c(3, {5, 2, 9});
  CHECK(HilbertCube::parse(c.to_string()) == c);
  CHECK(c.max_sum() == 19);
  auto oracle_sums = oracle::cube_sums(3, {5, 2, 9});
  std::sort(oracle_sums.begin(), oracle_sums.end());
  CHECK(sums(c) == oracle_sums);
  CHECK_THROWS_AS(HilbertCube::parse("1;x"), std::invalid_argument);
}

TEST_CASE("verify examples") {
  const HilbertCube h(1, {7, 24});
  CHECK(verify(h, Squareful{}, 32).ok);
  const auto out = verify(h, Squareful{}, 31);
  CHECK_FALSE(out.ok);
  CHECK(out.offender == 32u);
  CHECK(verify(HilbertCube(4, {4}), Squareful{}, 10).ok);
  CHECK(verify(HilbertCube(1, {3}), Squareful{}, 100).ok);
  const auto bad = verify(HilbertCube(1, {2, 6}), Squareful{}, 100);
  CHECK_FALSE(bad.ok);
  CHECK(bad.offender == 3u);
}

TEST_CASE("residue_constraint_check") {
  const auto zero = residue_constraint_check(HilbertCube(4, {}), PrimeSet::all(), 100);
  CHECK(zero.violations == 0);
  for (const auto& c : zero.per_prime) CHECK(c.distinct_classes == 0);
  const auto r = residue_constraint_check(HilbertCube(1, {7, 24}), PrimeSet::all(), 5);
  const auto at5 = std::find_if(r.per_prime.begin(), r.per_prime.end(), [](const auto& c) { return c.p == 5; });
  REQUIRE(at5 != r.per_prime.end());
  CHECK(at5->distinct_classes == 2);
  CHECK(at5->bound == 26.0);
  CHECK(r.violations == 0);
}

TEST_CASE("max_dimension_exact examples") {
  const auto r10 = max_dimension_exact(Squareful{}, 10);
  CHECK(r10.exact);
  CHECK(r10.best_dimension == 1);
  REQUIRE(r10.witness);
  CHECK(verify(*r10.witness, Squareful{}, 10).ok);

  SearchOptions collect;
  collect.collect_limit = 1000;
  const auto r32 = max_dimension_exact(Squareful{}, 32, collect);
  CHECK(r32.best_dimension == 2);
  bool found = false;
  for (const auto& c : r32.all_maximal) {
    CHECK(verify(c, Squareful{}, 32).ok);
    found = found || sums(c) == std::vector<std::uint64_t>{1, 8, 25, 32};
  }
  CHECK(found);
  const auto r10all = max_dimension_exact(Squareful{}, 10, collect);
  CHECK(std::find(r10all.all_maximal.begin(), r10all.all_maximal.end(), HilbertCube(4, {4})) !=
        r10all.all_maximal.end());

  const auto r3 = max_dimension_exact(Squareful{}, 3);
  CHECK(r3.best_dimension == 0);
  REQUIRE(r3.witness);
  CHECK(*r3.witness == HilbertCube(1, {}));
}

TEST_CASE("exact search agrees with naive enumeration up to 200") {
  std::vector<bool> in(201, false);
  for (std::uint64_t n = 1; n <= 200; ++n) in[n] = oracle::is_squareful(n);
  for (std::uint64_t n = 1; n <= 200; n += (n < 60 ? 1 : 7)) {
    const auto r = max_dimension_exact(Squareful{}, n);
    CHECK(r.exact);
    CHECK_MESSAGE(r.best_dimension == naive_max_dimension(in, n), "N=" << n);
    if (r.witness) CHECK(verify(*r.witness, Squareful{}, n).ok);
  }
}

TEST_CASE("budget exhaustion reports a non-exact result") {
  SearchOptions tight;
  tight.budget = 5;
  const auto r = max_dimension_exact(Squareful{}, 10'000, tight);
  CHECK_FALSE(r.exact);
  CHECK(r.mode == SearchMode::Greedy);
  if (r.witness) CHECK(verify(*r.witness, Squareful{}, 10'000).ok);
}

TEST_CASE("max_dimension_greedy") {
  for (std::uint64_t seed : {1u, 2u, 3u, 99u}) {
    const auto r = max_dimension_greedy(Squareful{}, 32, seed);
    CHECK(r.best_dimension >= 1);
    REQUIRE(r.witness);
    CHECK(verify(*r.witness, Squareful{}, 32).ok);
    CHECK_FALSE(r.exact);
    SearchOptions subset;
    subset.subset_sum_mode = true;
    const auto pp = max_dimension_greedy(PurePowers{}, 30, seed, subset);
    CHECK(pp.best_dimension >= 1);
    REQUIRE(pp.witness);
    CHECK(pp.witness->a0() == 0);
  }
  const auto none = max_dimension_greedy(RFull{2, PrimeSet::all()}, 0, 1);
  CHECK(none.best_dimension == -1);
  CHECK_FALSE(none.witness);
  const auto a = max_dimension_greedy(Squareful{}, 5000, 7);
  const auto b = max_dimension_greedy(Squareful{}, 5000, 7);
  CHECK(a.witness == b.witness);
}

TEST_CASE("max_homogeneous_ap") {
  const auto pp = max_homogeneous_ap(PurePowers{}, 30);
  CHECK(pp.length >= 2);
  const auto sq = max_homogeneous_ap(Squareful{}, 8);
  CHECK(sq.length == 2);
  CHECK(sq.step == 4);
  CHECK(max_homogeneous_ap(QuadFormValues{{2, 1, 3}}, 1).length == 0);
  // brute force over squareful numbers up to 300
  std::uint64_t best = 0;
  for (std::uint64_t s = 1; s <= 300; ++s) {
    std::uint64_t len = 0;
    while ((len + 1) * s <= 300 && oracle::is_squareful((len + 1) * s)) ++len;
    best = std::max(best, len);
  }
  CHECK(max_homogeneous_ap(Squareful{}, 300).length == best);
}
