#include "cubesieve/primes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <stdexcept>

#include "cubesieve/text.hpp"

namespace cubesieve {

std::vector<std::uint64_t> primes_up_to(std::uint64_t y) {
  std::vector<std::uint64_t> primes;
  if (y < 2) return primes;
  // odd-only sieve: index i stands for 2i+1
  const std::uint64_t half = (y - 1) / 2 + 1;
  std::vector<bool> composite(half, false);
  primes.push_back(2);
  for (std::uint64_t i = 1; i < half; ++i) {
    if (composite[i]) continue;
    const std::uint64_t p = 2 * i + 1;
    primes.push_back(p);
    for (std::uint64_t j = p * p / 2; j < half; j += p) composite[j] = true;
  }
  return primes;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  if (m == 1) return 0;
  std::uint64_t result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

std::uint64_t reduce_mod(std::int64_t a, std::uint64_t m) {
  const auto r = static_cast<std::int64_t>(static_cast<__int128>(a) % static_cast<__int128>(m));
  return r < 0 ? static_cast<std::uint64_t>(r + static_cast<std::int64_t>(m)) : static_cast<std::uint64_t>(r);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // this witness set is deterministic below 3.3e24
  for (std::uint64_t a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

int legendre(std::int64_t a, std::uint64_t p) {
  if (p == 2 || !is_prime(p)) {
    throw std::invalid_argument("legendre: modulus " + std::to_string(p) + " is not an odd prime");
  }
  const std::uint64_t r = reduce_mod(a, p);
  if (r == 0) return 0;
  return pow_mod(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

void require_definite_irreducible(const QuadraticForm& form) {
  const std::int64_t disc = form.discriminant();
  const std::string name =
      "(" + std::to_string(form.a) + "," + std::to_string(form.b) + "," + std::to_string(form.c) + ")";
  if (disc >= 0) {
    const auto root = static_cast<std::int64_t>(std::sqrt(static_cast<double>(disc)));
    for (std::int64_t r = std::max<std::int64_t>(root - 1, 0); r <= root + 1; ++r) {
      if (r * r == disc) {
        throw std::invalid_argument("quadratic form " + name + " is reducible (discriminant " +
                                    std::to_string(disc) + " is a square)");
      }
    }
  }
  if (form.a <= 0 || disc >= 0) {
    throw std::invalid_argument("quadratic form " + name + " is not positive definite");
  }
}

std::vector<std::uint64_t> inert_primes(const QuadraticForm& form, std::uint64_t y) {
  require_definite_irreducible(form);
  const std::int64_t disc = form.discriminant();
  std::vector<std::uint64_t> out;
  for (std::uint64_t p : primes_up_to(y)) {
    if (p == 2) continue;
    if (legendre(disc, p) == -1) out.push_back(p);
  }
  return out;
}

PrimeSet PrimeSet::residue_class(std::uint64_t a, std::uint64_t q) {
  if (q == 0) throw std::invalid_argument("residue class modulus must be positive");
  if (std::gcd(a % q, q) != 1 && q != 1) {
    throw std::invalid_argument("residue class " + std::to_string(a) + " mod " + std::to_string(q) +
                                " is not coprime to its modulus");
  }
  return PrimeSet(ResidueClass{a % q, q});
}

PrimeSet PrimeSet::explicit_list(std::vector<std::uint64_t> primes) {
  for (std::uint64_t p : primes) {
    if (!is_prime(p)) throw std::invalid_argument("prime list entry " + std::to_string(p) + " is not prime");
  }
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  return PrimeSet(ExplicitList{std::move(primes)});
}

PrimeSet PrimeSet::inert_of_form(const QuadraticForm& form) {
  require_definite_irreducible(form);
  return PrimeSet(InertOfForm{form});
}

PrimeSet PrimeSet::complement(const PrimeSet& inner) {
  return PrimeSet(Complement{std::make_shared<const PrimeSet>(inner)});
}

PrimeSet PrimeSet::parse(const std::string& text_in) {
  const std::string_view text = text::trim(text_in);
  if (text == "all") return all();
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw std::invalid_argument("unknown prime set '" + std::string(text) + "'");
  const std::string_view head = text.substr(0, colon);
  const std::string_view body = text.substr(colon + 1);
  if (head == "complement") return complement(parse(std::string(body)));
  if (head == "list") {
    return explicit_list(body.empty() ? std::vector<std::uint64_t>{} : text::parse_int_list<std::uint64_t>(body));
  }
  if (head == "class") {
    const auto v = text::parse_int_list<std::uint64_t>(body);
    if (v.size() != 2) throw std::invalid_argument("class:a,q expects two integers");
    return residue_class(v[0], v[1]);
  }
  if (head == "inert") {
    const auto v = text::parse_int_list<std::int64_t>(body);
    if (v.size() != 3) throw std::invalid_argument("inert:a,b,c expects three integers");
    return inert_of_form({v[0], v[1], v[2]});
  }
  throw std::invalid_argument("unknown prime set '" + std::string(text) + "'");
}

std::string PrimeSet::to_string() const {
  struct Printer {
    std::string operator()(const All&) const { return "all"; }
    std::string operator()(const ResidueClass& r) const {
      return "class:" + std::to_string(r.a) + "," + std::to_string(r.q);
    }
    std::string operator()(const ExplicitList& l) const { return "list:" + text::join(l.primes, ","); }
    std::string operator()(const InertOfForm& f) const {
      return "inert:" + std::to_string(f.form.a) + "," + std::to_string(f.form.b) + "," + std::to_string(f.form.c);
    }
    std::string operator()(const Complement& c) const { return "complement:" + c.inner->to_string(); }
  };
  return std::visit(Printer{}, kind_);
}

bool PrimeSet::contains_prime(std::uint64_t p) const {
  struct Member {
    std::uint64_t p;
    bool operator()(const All&) const { return true; }
    bool operator()(const ResidueClass& r) const { return p % r.q == r.a; }
    bool operator()(const ExplicitList& l) const { return std::binary_search(l.primes.begin(), l.primes.end(), p); }
    bool operator()(const InertOfForm& f) const {
      return p != 2 && legendre(f.form.discriminant(), p) == -1;
    }
    bool operator()(const Complement& c) const { return !c.inner->contains_prime(p); }
  };
  return std::visit(Member{p}, kind_);
}

bool PrimeSet::contains(std::uint64_t p) const { return is_prime(p) && contains_prime(p); }

std::vector<std::uint64_t> PrimeSet::list(std::uint64_t y) const {
  std::vector<std::uint64_t> out;
  if (y <= cache_limit_) {
    auto end = std::upper_bound(cache_.begin(), cache_.end(), y);
    out.assign(cache_.begin(), end);
    return out;
  }
  for (std::uint64_t p : primes_up_to(y)) {
    if (contains_prime(p)) out.push_back(p);
  }
  return out;
}

void PrimeSet::warm(std::uint64_t y) {
  if (y <= cache_limit_) return;
  cache_ = list(y);
  cache_limit_ = y;
}

DensityReport density(const PrimeSet& set, std::uint64_t y) {
  if (y < 2) throw std::invalid_argument("density: cutoff must be at least 2");
  DensityReport report;
  report.y = y;
  for (std::uint64_t p : set.list(y)) {
    const double pd = static_cast<double>(p);
    report.weighted_sum += std::log(pd) / std::sqrt(pd);
  }
  report.normalized = report.weighted_sum / std::sqrt(static_cast<double>(y));
  return report;
}

}  // namespace cubesieve
