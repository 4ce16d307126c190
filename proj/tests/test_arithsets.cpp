#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "cubesieve/arithsets.hpp"
#include "oracles.hpp"

using namespace cubesieve;

namespace {

bool represented(std::int64_t a, std::int64_t b, std::int64_t c, std::uint64_t n) {
  // positive definite: |x|, |y| are bounded by sqrt(4cn/|D|) and sqrt(4an/|D|)
  const std::int64_t d = -(b * b - 4 * a * c);
  const auto bx = static_cast<std::int64_t>(std::sqrt(4.0 * c * n / d)) + 1;
  const auto by = static_cast<std::int64_t>(std::sqrt(4.0 * a * n / d)) + 1;
  for (std::int64_t x = -bx; x <= bx; ++x) {
    for (std::int64_t y = -by; y <= by; ++y) {
      if (a * x * x + b * x * y + c * y * y == static_cast<std::int64_t>(n)) return true;
    }
  }
  return false;
}

bool r_full_naive(std::uint64_t n, unsigned r, const std::vector<std::uint64_t>& allowed) {
  for (std::uint64_t p = 2; p <= n; ++p) {
    if (!oracle::is_prime(p) || n % p) continue;
    if (std::find(allowed.begin(), allowed.end(), p) == allowed.end()) continue;
    unsigned e = 0;
    for (std::uint64_t m = n; m % p == 0; m /= p) ++e;
    if (e < r) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("factorize") {
  CHECK(factorize(1).factors.empty());
  CHECK(factorize(72).factors == std::vector<std::pair<std::uint64_t, unsigned>>{{2, 3}, {3, 2}});
  CHECK(factorize(9991).factors == std::vector<std::pair<std::uint64_t, unsigned>>{{97, 1}, {103, 1}});
  for (std::uint64_t n = 1; n < 3000; ++n) {
    std::uint64_t back = 1;
    for (auto [p, e] : factorize(n).factors) {
      CHECK(oracle::is_prime(p));
      for (unsigned i = 0; i < e; ++i) back *= p;
    }
    CHECK(back == n);
  }
  CHECK_THROWS_AS(factorize(0), std::out_of_range);
}

TEST_CASE("integer_root") {
  CHECK(integer_root(26, 2) == 5);
  CHECK(integer_root(27, 3) == 3);
  CHECK(integer_root(26, 3) == 2);
  CHECK(integer_root(18446744073709551615ULL, 2) == 4294967295ULL);
  CHECK(integer_root(1, 5) == 1);
}

TEST_CASE("is_member examples") {
  CHECK(is_member(Squareful{}, 72));
  CHECK_FALSE(is_member(Squareful{}, 12));
  CHECK(is_member(PurePowers{}, 1));
  CHECK_FALSE(is_member(QuadFormValues{{1, 0, 1}}, 21));
  CHECK(is_member(QuadFormValues{{1, 0, 1}}, 25));
}

TEST_CASE("enumerate examples") {
  CHECK(enumerate(Squareful{}, 50) == std::vector<std::uint64_t>{1, 4, 8, 9, 16, 25, 27, 32, 36, 49});
  CHECK(enumerate(PurePowers{}, 30) == std::vector<std::uint64_t>{1, 4, 8, 9, 16, 25, 27});
  CHECK(enumerate(Squareful{}, 3) == std::vector<std::uint64_t>{1});
}

TEST_CASE("membership matches brute-force oracles") {
  const std::uint64_t n_max = 2000;
  const SetDescriptor rfull3 = RFull{3, PrimeSet::all()};
  const SetDescriptor rfull_odd = RFull{2, PrimeSet::explicit_list({3, 5})};
  const SetDescriptor semi = Semigroup{PrimeSet::explicit_list({2, 3})};
  const SetDescriptor quad = QuadFormValues{{1, 1, 2}};
  const auto all_primes = oracle::primes_up_to(n_max);
  for (const SetDescriptor& s : {SetDescriptor(Squareful{}), SetDescriptor(PurePowers{}), rfull3, rfull_odd, semi, quad}) {
    const auto table = membership_table(s, n_max);
    const auto listed = enumerate(s, n_max);
    std::vector<std::uint64_t> expected;
    for (std::uint64_t n = 1; n <= n_max; ++n) {
      bool in = false;
      switch (s.variant().index()) {
        case 0: in = oracle::is_squareful(n); break;
        case 1: in = r_full_naive(n, std::get<RFull>(s.variant()).r,
                                  std::get<RFull>(s.variant()).primes.list(n_max)); break;
        case 2: in = oracle::is_pure_power(n); break;
        case 3: in = represented(1, 1, 2, n); break;
        case 4: {
          std::uint64_t m = n;
          for (std::uint64_t p : {2u, 3u}) while (m % p == 0) m /= p;
          in = m == 1;
          break;
        }
      }
      if (in) expected.push_back(n);
      CHECK_MESSAGE(is_member(s, n) == in, s.to_string() << " n=" << n);
      CHECK(table[n] == in);
    }
    CHECK(listed == expected);
  }
}

TEST_CASE("descriptor parsing round-trips") {
  for (const char* text : {"squareful", "purepowers", "rfull:3,all", "rfull:2,list:3,5", "quadform:1,0,1",
                           "semigroup:list:2,3", "semigroup:complement:class:1,4"}) {
    const auto s = SetDescriptor::parse(text);
    CHECK(SetDescriptor::parse(s.to_string()).to_string() == s.to_string());
    CHECK(enumerate(SetDescriptor::parse(s.to_string()), 500) == enumerate(s, 500));
  }
  CHECK_THROWS_AS(SetDescriptor::parse("rfull:1,all"), std::invalid_argument);
  CHECK_THROWS_AS(SetDescriptor::parse("quadform:1,0,-1"), std::invalid_argument);
  CHECK_THROWS_AS(SetDescriptor::parse("nothing"), std::invalid_argument);
}
