#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

#include "cubesieve/sunflower.hpp"

using namespace cubesieve;

namespace {

IntSet meet(const IntSet& a, const IntSet& b) {
  IntSet out;
  for (auto x : a) {
    if (std::find(b.begin(), b.end(), x) != b.end()) out.push_back(x);
  }
  return out;
}

// Whether any v sets of the family share one pairwise intersection.
bool has_sunflower_brute(const std::vector<IntSet>& f, std::size_t v) {
  const std::size_t n = f.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountll(mask)) != v) continue;
    std::vector<std::size_t> pick;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1) pick.push_back(i);
    }
    const IntSet kernel = meet(f[pick[0]], f[pick[1]]);
    bool ok = true;
    for (std::size_t i = 0; i < v && ok; ++i) {
      for (std::size_t j = i + 1; j < v && ok; ++j) ok = meet(f[pick[i]], f[pick[j]]) == kernel;
    }
    if (ok) return true;
  }
  return false;
}

std::vector<IntSet> random_family(std::mt19937_64& rng, std::size_t count, std::size_t h, std::int64_t universe) {
  std::set<IntSet> seen;
  std::vector<IntSet> out;
  for (int attempt = 0; attempt < 2000 && out.size() < count; ++attempt) {
    std::set<std::int64_t> s;
    const std::size_t k = 1 + rng() % h;
    while (s.size() < k) s.insert(1 + static_cast<std::int64_t>(rng() % universe));
    IntSet v(s.begin(), s.end());
    if (seen.insert(v).second) out.push_back(v);
  }
  return out;
}

}  // namespace

TEST_CASE("SetFamily validation") {
  CHECK_THROWS_AS(SetFamily({{1, 2}, {2, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(SetFamily({{1, 2, 3}}, 2), std::invalid_argument);
  CHECK(SetFamily({{3, 1}, {2}}).h() == 2);
}

TEST_CASE("find_sunflower examples") {
  const SetFamily star({{1, 2}, {1, 3}, {1, 4}});
  for (auto mode : {SunflowerMode::Exact, SunflowerMode::Greedy}) {
    const auto r = find_sunflower(star, 3, mode);
    REQUIRE(r.witness);
    CHECK(r.witness->kernel == IntSet{1});
    CHECK(r.witness->petals == std::vector<std::size_t>{0, 1, 2});
  }
  const SetFamily disjoint({{1, 2}, {3, 4}, {5, 6}});
  const auto d = find_sunflower(disjoint, 3, SunflowerMode::Greedy);
  REQUIRE(d.witness);
  CHECK(d.witness->kernel.empty());

  std::vector<IntSet> pairs;
  for (std::int64_t a = 1; a <= 6; ++a) {
    for (std::int64_t b = a + 1; b <= 6; ++b) pairs.push_back({a, b});
  }
  const SetFamily k6(pairs);
  const auto e = find_sunflower(k6, 3, SunflowerMode::Exact);
  REQUIRE(e.witness);
  CHECK(is_sunflower(k6, *e.witness));

  const SetFamily triangles({{1, 2}, {2, 3}, {1, 3}, {4, 5}, {5, 6}, {4, 6}});
  const auto t = find_sunflower(triangles, 3, SunflowerMode::Exact);
  CHECK_FALSE(t.witness);
  CHECK(t.absence_proven);
  CHECK_THROWS_AS(find_sunflower(star, 2, SunflowerMode::Exact), std::invalid_argument);
}

TEST_CASE("exact finder agrees with brute force and confirms greedy") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t h = 1 + rng() % 3;
    const auto sets = random_family(rng, 3 + rng() % 14, h, 4 + static_cast<std::int64_t>(rng() % 8));
    if (sets.size() < 3) continue;
    const SetFamily family(sets, h);
    const auto exact = find_sunflower(family, 3, SunflowerMode::Exact);
    const auto greedy = find_sunflower(family, 3, SunflowerMode::Greedy);
    CHECK(exact.witness.has_value() == has_sunflower_brute(family.sets(), 3));
    if (exact.witness) CHECK(is_sunflower(family, *exact.witness));
    if (greedy.witness) {
      CHECK(is_sunflower(family, *greedy.witness));
      CHECK(exact.witness.has_value());
    }
  }
}

TEST_CASE("thresholds") {
  CHECK(sunflower_threshold(1, 3) == 3);
  CHECK(sunflower_threshold(2, 3) == 5);
  CHECK(sunflower_threshold(3, 3) == 36);
  CHECK(erdos_rado_threshold(2, 3) == doctest::Approx(8.0));
  CHECK(representation_bound(1.0, 3, 2) == doctest::Approx(std::pow(3 * std::log(2.0), 2)));
  CHECK_THROWS_AS(sunflower_threshold(40, 1000), std::overflow_error);
}

TEST_CASE("rep_count_g examples") {
  const std::vector<std::uint64_t> a{1, 2, 3, 4};
  const auto r = rep_count_g(a, 2, 7);
  CHECK(r.g == 2);
  CHECK(r.target == 5u);
  CHECK(rep_count_g(std::vector<std::uint64_t>{1, 2, 4, 8}, 2, 12).g == 1);
  CHECK(rep_count_g(a, 4, 100).g == 1);
  CHECK_THROWS_AS(rep_count_g(a, 5, 100), std::invalid_argument);
}

TEST_CASE("rep_count_g matches brute force for |A| <= 18") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    std::set<std::uint64_t> s;
    const std::size_t size = 2 + rng() % 17;
    while (s.size() < size) s.insert(1 + rng() % 60);
    const std::vector<std::uint64_t> a(s.begin(), s.end());
    const std::size_t h = 1 + rng() % std::min<std::size_t>(4, a.size());
    const std::uint64_t limit = 40 + rng() % 160;
    std::map<std::uint64_t, std::uint64_t> counts;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << a.size()); ++mask) {
      if (static_cast<std::size_t>(__builtin_popcountll(mask)) != h) continue;
      std::uint64_t sum = 0;
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (mask >> i & 1) sum += a[i];
      }
      if (sum <= limit) ++counts[sum];
    }
    std::uint64_t g = 0;
    std::optional<std::uint64_t> target;
    for (auto [t, c] : counts) {
      if (c > g) {
        g = c;
        target = t;
      }
    }
    const auto r = rep_count_g(a, h, limit);
    CHECK(r.g == g);
    CHECK(r.target == target);
  }
}

TEST_CASE("dimension_bound") {
  CHECK(dimension_bound(1, 1.0, 1) == doctest::Approx(14.0));
  CHECK(dimension_bound(2, 1.0, 1) == doctest::Approx(std::sqrt(10.0) + 14.0));
}

TEST_CASE("extract_ap") {
  const std::vector<std::uint64_t> steps{1, 2, 3, 4, 9};
  const SetFamily f({{1, 4}, {2, 3}});
  const SunflowerWitness w{{}, {0, 1}};
  const auto ap = extract_ap(f, w, steps);
  CHECK(ap.step == 5);
  CHECK(ap.length == 2);

  const SetFamily k({{1, 4, 9}, {2, 3, 9}});
  const auto apk = extract_ap(k, SunflowerWitness{{9}, {0, 1}}, steps);
  CHECK(apk.step == 5);

  const SetFamily bad({{1, 3}, {2, 4}});
  CHECK_THROWS_AS(extract_ap(bad, SunflowerWitness{{}, {0, 1}}, steps), std::invalid_argument);
}

TEST_CASE("bucketed AP extraction lands inside the subset-sum cube") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    std::set<std::uint64_t> s;
    while (s.size() < 12) s.insert(1 + rng() % 40);
    const std::vector<std::uint64_t> a(s.begin(), s.end());
    for (std::size_t h : {2u, 3u}) {
      const auto ap = find_ap_by_buckets(a, h, 3, SunflowerMode::Exact);
      if (!ap) continue;
      CHECK(ap->length == 3);
      REQUIRE(ap->unions.size() == 3);
      for (std::size_t j = 0; j < ap->unions.size(); ++j) {
        std::uint64_t sum = 0;
        for (auto x : ap->unions[j]) {
          CHECK(std::find(a.begin(), a.end(), static_cast<std::uint64_t>(x)) != a.end());
          sum += static_cast<std::uint64_t>(x);
        }
        CHECK(sum == j * ap->step);
      }
    }
  }
}
