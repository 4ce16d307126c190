#pragma once

// Multiplicatively defined sets of positive integers: squareful numbers,
// r-full numbers relative to a prime set, pure powers, values of a positive
// definite binary quadratic form, and multiplicative semigroups generated by
// a prime set. 0 is never a member; 1 is a member of every variant.

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cubesieve/primes.hpp"

namespace cubesieve {

struct Factorization {
  std::uint64_t n = 1;
  std::vector<std::pair<std::uint64_t, unsigned>> factors;  // (prime, exponent), primes ascending
};

/// Trial division over a 2,3,5 wheel. Accepts 1 <= n <= 2^63 - 1.
Factorization factorize(std::uint64_t n);

/// floor(n^(1/k)) for k >= 1.
std::uint64_t integer_root(std::uint64_t n, unsigned k);

/// Every prime factor appears at least twice.
struct Squareful {};
/// Every prime factor p in `primes` appears at least `r` times.
struct RFull {
  unsigned r = 2;
  PrimeSet primes;
};
/// a^e with a >= 1, e >= 2 (so 1 = 1^2 is included).
struct PurePowers {};
/// Values a x^2 + b xy + c y^2 over x, y in Z.
struct QuadFormValues {
  QuadraticForm form;
};
/// Every prime factor lies in `primes`.
struct Semigroup {
  PrimeSet primes;
};

class SetDescriptor {
 public:
  using Variant = std::variant<Squareful, RFull, PurePowers, QuadFormValues, Semigroup>;

  SetDescriptor() : v_(Squareful{}) {}
  SetDescriptor(Squareful s) : v_(s) {}
  SetDescriptor(PurePowers s) : v_(s) {}
  SetDescriptor(RFull s);
  SetDescriptor(QuadFormValues s);
  SetDescriptor(Semigroup s) : v_(std::move(s)) {}

  /// `squareful`, `rfull:r,<primeset>`, `purepowers`, `quadform:a,b,c`,
  /// `semigroup:<primeset>`.
  static SetDescriptor parse(const std::string& text);
  std::string to_string() const;

  const Variant& variant() const { return v_; }

 private:
  Variant v_;
};

bool is_member(const SetDescriptor& set, std::uint64_t n);

/// Members of the set in [1, limit], ascending.
std::vector<std::uint64_t> enumerate(const SetDescriptor& set, std::uint64_t limit);

/// Dense membership table for [0, limit]; index 0 is always false.
std::vector<bool> membership_table(const SetDescriptor& set, std::uint64_t limit);

}  // namespace cubesieve
