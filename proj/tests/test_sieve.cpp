#include <doctest.h>

#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

#include "cubesieve/sieve.hpp"
#include "oracles.hpp"

using namespace cubesieve;

namespace {

// The larger sieve evaluated straight from its formula.
std::optional<double> formula_bound(const std::vector<std::pair<std::uint64_t, double>>& prime_nu, double log_n) {
  double num = -log_n;
  double den = -log_n;
  for (auto [p, nu] : prime_nu) {
    num += std::log(double(p));
    den += std::log(double(p)) / nu;
  }
  if (den <= 1e-9) return std::nullopt;
  return num / den;
}

std::vector<std::uint64_t> squares_up_to(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t k = 1; k * k <= n; ++k) out.push_back(k * k);
  return out;
}

}  // namespace

TEST_CASE("profile examples") {
  const std::vector<std::uint64_t> a{1, 2, 3};
  const auto pr = profile(a, 5);
  CHECK(pr.nu == 3);
  CHECK(pr.counts == std::vector<std::uint64_t>{0, 1, 1, 1, 0});
  CHECK(profile(squares_up_to(100), 7).nu == 4);
  CHECK(profile(std::vector<std::uint64_t>{5, 10, 15}, 5).nu == 1);
  CHECK(profile(a, 9).exponent == 2);
  CHECK_THROWS_AS(profile(a, 6), std::invalid_argument);
  CHECK_THROWS_AS(profile(std::vector<std::uint64_t>{}, 5), std::invalid_argument);
}

TEST_CASE("gallagher_bound degenerate and guard cases") {
  const std::vector<ClassBound> ones{{3, 3, 1.0}, {5, 5, 1.0}};
  const auto r = gallagher_bound(ones, 1.0);
  CHECK(r.numerator == doctest::Approx(-1 + std::log(3.0) + std::log(5.0)));
  CHECK(r.denominator == doctest::Approx(r.numerator));
  REQUIRE(r.bound);
  CHECK(*r.bound == doctest::Approx(1.0));

  const std::vector<ClassBound> weak{{3, 3, 3.0}};
  CHECK(gallagher_bound(weak, 5.0).unbounded());
  CHECK(gallagher_bound(std::vector<ClassBound>{}, 5.0).unbounded());
  CHECK_THROWS_AS(gallagher_bound(ones, 0.0), std::invalid_argument);
  const std::vector<ClassBound> dup{{3, 3, 1.0}, {3, 3, 1.0}};
  CHECK_THROWS_AS(gallagher_bound(dup, 1.0), std::invalid_argument);
}

TEST_CASE("prime-power moduli contribute log p") {
  const std::vector<ClassBound> pp{{9, 3, 1.0}, {5, 5, 1.0}};
  const auto r = gallagher_bound(pp, 1.0);
  CHECK(r.numerator == doctest::Approx(std::log(3.0) + std::log(5.0) - 1.0));
}

TEST_CASE("gallagher_bound matches the formula on random sets") {
  std::mt19937_64 rng(21);
  const auto primes = oracle::primes_up_to(120);
  for (int trial = 0; trial < 50; ++trial) {
    std::set<std::uint64_t> s;
    const std::uint64_t step = 2 + rng() % 5;
    for (std::uint64_t x = 1; x <= 10'000; x += step) {
      if (rng() % 4 == 0) s.insert(x);
    }
    const std::vector<std::uint64_t> a(s.begin(), s.end());
    std::vector<ResidueProfile> profiles;
    std::vector<std::pair<std::uint64_t, double>> prime_nu;
    for (std::uint64_t p : primes) {
      if (rng() % 2) continue;
      std::set<std::uint64_t> classes;
      for (auto x : a) classes.insert(x % p);
      profiles.push_back(profile(a, p));
      prime_nu.emplace_back(p, double(classes.size()));
    }
    const double log_n = std::log(10'000.0);
    const auto got = gallagher_bound(profiles, log_n);
    const auto want = formula_bound(prime_nu, log_n);
    CHECK(got.bound.has_value() == want.has_value());
    if (want) {
      CHECK(*got.bound == doctest::Approx(*want));
      CHECK(double(a.size()) <= *want + 1e-9);
    }
    const auto weighted = gallagher_bound_weighted(profiles, a.size(), log_n);
    if (weighted.bound && got.bound) CHECK(*weighted.bound <= *got.bound + 1e-9);
  }
}

TEST_CASE("weighted bound equals plain bound under equidistribution") {
  // 0..29 is equidistributed mod 2, 3 and 5
  std::vector<std::uint64_t> a(30);
  for (std::uint64_t i = 0; i < 30; ++i) a[i] = i + 30;
  std::vector<ResidueProfile> profiles{profile(a, 2), profile(a, 3), profile(a, 5)};
  const auto plain = gallagher_bound(profiles, 1.0);
  const auto weighted = gallagher_bound_weighted(profiles, a.size(), 1.0);
  CHECK(plain.denominator == doctest::Approx(weighted.denominator));

  const std::vector<std::uint64_t> one_class{7, 37, 67, 97};
  std::vector<ResidueProfile> conc{profile(one_class, 3), profile(one_class, 5)};
  const auto w = gallagher_bound_weighted(conc, one_class.size(), 1.0);
  REQUIRE(w.bound);
  CHECK(*w.bound == doctest::Approx(1.0));
}

TEST_CASE("nu models") {
  CHECK(model_nu(NuModel::HalfPPlusOne, 7) == 4.0);
  CHECK(model_nu(NuModel::HalfPPlusOne, 2) == 2.0);
  CHECK(model_nu(NuModel::TwoSqrt, 25) == doctest::Approx(10.0));
  CHECK(model_nu(NuModel::FiveCeilSqrt, 5) == 26.0);
  CHECK(parse_nu_model("half_p_plus_one") == NuModel::HalfPPlusOne);
  CHECK(to_string(NuModel::FiveCeilSqrt) == "five_ceil_sqrt");
  CHECK_THROWS_AS(parse_nu_model("x"), std::invalid_argument);
}

TEST_CASE("squares at N = 10^6 with primes up to 10^4") {
  const auto sq = squares_up_to(1'000'000);
  const double log_n = std::log(1e6);
  const auto r = sieve_at_cutoff(sq, PrimeSet::all(), NuModel::HalfPPlusOne, log_n, 10'000);
  REQUIRE(r.bound);
  CHECK(*r.bound >= 1000.0);
  CHECK(*r.bound <= 10'000.0);
  std::vector<std::pair<std::uint64_t, double>> prime_nu;
  for (std::uint64_t p : oracle::primes_up_to(10'000)) prime_nu.emplace_back(p, double(p / 2 + 1));
  CHECK(*r.bound == doctest::Approx(*formula_bound(prime_nu, log_n)));
}

TEST_CASE("optimize_cutoff") {
  const double log_n = std::log(1e6);
  const auto empty = optimize_cutoff(std::vector<std::uint64_t>{1}, PrimeSet::explicit_list({}), NuModel::Measured,
                                     log_n, std::vector<std::uint64_t>{100, 1000});
  CHECK_FALSE(empty.best);
  for (const auto& r : empty.reports) CHECK(r.unbounded());

  // measured profile of a single point is nu = 1 everywhere
  const auto one = optimize_cutoff(std::vector<std::uint64_t>{42}, PrimeSet::all(), NuModel::Measured, log_n,
                                   std::vector<std::uint64_t>{100, 1000});
  REQUIRE(one.best);
  CHECK(*one.reports[*one.best].bound == doctest::Approx(1.0));

  const auto grid_paper_y = static_cast<std::uint64_t>(400 * log_n * log_n);
  std::vector<std::uint64_t> grid;
  for (std::uint64_t y = grid_paper_y / 4; y <= grid_paper_y * 4; y += grid_paper_y / 4) grid.push_back(y);
  const auto five = optimize_cutoff(std::vector<std::uint64_t>{1}, PrimeSet::all(), NuModel::FiveCeilSqrt, log_n, grid);
  CHECK(five.paper_y == grid_paper_y);
  REQUIRE(five.best);
  const double best = *five.reports[*five.best].bound;
  // the optimum over every cutoff is about 1481.8, i.e. 107 log N
  CHECK(best >= 1481.0);
  CHECK(best <= 110 * log_n);
  for (const auto& r : five.reports) {
    if (r.bound) CHECK(best <= *r.bound);
  }
}
