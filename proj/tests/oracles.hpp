#pragma once

// Brute-force reference implementations shared by the unit tests. None of
// these call into the library.

#include <cstdint>
#include <vector>

namespace oracle {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

inline std::vector<std::uint64_t> primes_up_to(std::uint64_t y) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 2; n <= y; ++n) {
    if (is_prime(n)) out.push_back(n);
  }
  return out;
}

inline bool is_squareful(std::uint64_t n) {
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p != 0) return false;
    while (n % p == 0) n /= p;
  }
  return n == 1;
}

inline bool is_pure_power(std::uint64_t n) {
  if (n == 1) return true;
  for (std::uint64_t a = 2; a * a <= n; ++a) {
    std::uint64_t v = a * a;
    while (v < n) v *= a;
    if (v == n) return true;
  }
  return false;
}

// Every sum a0 + sum of a sub-multiset of steps.
inline std::vector<std::uint64_t> cube_sums(std::uint64_t a0, const std::vector<std::uint64_t>& steps) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << steps.size()); ++mask) {
    std::uint64_t s = a0;
    for (std::size_t i = 0; i < steps.size(); ++i) {
      if (mask >> i & 1) s += steps[i];
    }
    out.push_back(s);
  }
  return out;
}

}  // namespace oracle
