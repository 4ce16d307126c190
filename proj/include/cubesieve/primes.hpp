#pragma once

// Prime generation, prime-set descriptors, the weighted prime density
// sum over a prime set, and Legendre-symbol tools for binary quadratic forms.

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace cubesieve {

/// Sieve of Eratosthenes; the primes <= y in ascending order.
std::vector<std::uint64_t> primes_up_to(std::uint64_t y);

/// Deterministic primality for the full 64-bit range (Miller-Rabin with a
/// fixed witness set).
bool is_prime(std::uint64_t n);

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// Least non-negative residue of a mod m (m > 0).
std::uint64_t reduce_mod(std::int64_t a, std::uint64_t m);

/// Legendre symbol (a/p) by Euler's criterion. Throws std::invalid_argument
/// when p is even or composite.
int legendre(std::int64_t a, std::uint64_t p);

/// Coefficients of a x^2 + b xy + c y^2.
struct QuadraticForm {
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::int64_t c = 0;

  std::int64_t discriminant() const { return b * b - 4 * a * c; }
};

/// Throws std::invalid_argument unless the form is positive definite and
/// irreducible (a > 0, discriminant < 0 and not a perfect square).
void require_definite_irreducible(const QuadraticForm& form);

/// Odd primes p <= y with p not dividing the discriminant and
/// (disc / p) = -1. For such p, p | f(x,y) forces p^2 | f(x,y).
std::vector<std::uint64_t> inert_primes(const QuadraticForm& form, std::uint64_t y);

/// A (possibly infinite) set of primes. Membership is decidable for any
/// prime; listing is bounded by a cutoff. Values are immutable after
/// construction apart from the listing cache, which warm() fills and which
/// const queries only read.
class PrimeSet {
 public:
  struct All {};
  struct ResidueClass {
    std::uint64_t a;
    std::uint64_t q;
  };
  struct ExplicitList {
    std::vector<std::uint64_t> primes;
  };
  struct InertOfForm {
    QuadraticForm form;
  };
  struct Complement {
    std::shared_ptr<const PrimeSet> inner;
  };
  using Kind = std::variant<All, ResidueClass, ExplicitList, InertOfForm, Complement>;

  PrimeSet() : kind_(All{}) {}

  static PrimeSet all() { return PrimeSet(All{}); }
  static PrimeSet residue_class(std::uint64_t a, std::uint64_t q);
  static PrimeSet explicit_list(std::vector<std::uint64_t> primes);
  static PrimeSet inert_of_form(const QuadraticForm& form);
  static PrimeSet complement(const PrimeSet& inner);

  /// Parses `all`, `class:a,q`, `list:p1,p2,...`, `inert:a,b,c`,
  /// `complement:<spec>`.
  static PrimeSet parse(const std::string& text);
  std::string to_string() const;

  const Kind& kind() const { return kind_; }

  /// Membership of a prime p. Non-primes are never members.
  bool contains(std::uint64_t p) const;

  /// Members <= y, ascending. Served from the cache when it covers y.
  std::vector<std::uint64_t> list(std::uint64_t y) const;

  /// Fills the cache up to y (re-sieves when y exceeds the current limit).
  void warm(std::uint64_t y);
  std::uint64_t cached_limit() const { return cache_limit_; }

 private:
  explicit PrimeSet(Kind kind) : kind_(std::move(kind)) {}
  bool contains_prime(std::uint64_t p) const;

  Kind kind_;
  std::vector<std::uint64_t> cache_;
  std::uint64_t cache_limit_ = 0;
};

struct DensityReport {
  std::uint64_t y = 0;
  double weighted_sum = 0.0;  // sum over p in T, p <= y of log p / sqrt p
  double normalized = 0.0;    // weighted_sum / sqrt y
};

/// Throws std::invalid_argument for y < 2.
DensityReport density(const PrimeSet& set, std::uint64_t y);

}  // namespace cubesieve
