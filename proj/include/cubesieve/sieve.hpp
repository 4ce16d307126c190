#pragma once

// Gallagher's larger sieve over primes and prime powers.
//
//   |A| <= (-log N + sum log p) / (-log N + sum log p / nu(p^i))
//
// where the sums run over the moduli p^i used and nu(p^i) counts the classes
// mod p^i occupied by A. The numerator adds log p for each modulus p^i, not
// i log p. The weighted variant replaces sum log p / nu(p) by
// (1/|B|^2) sum_p log p sum_h Z(p,h)^2, where Z(p,h) counts elements of B in
// class h mod p. Logarithms are natural.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cubesieve/primes.hpp"

namespace cubesieve {

/// Denominators at or below this are treated as non-positive.
inline constexpr double kDenominatorTolerance = 1e-9;

struct ResidueProfile {
  std::uint64_t modulus = 1;  // p^i
  std::uint64_t prime = 1;
  unsigned exponent = 0;
  std::uint64_t nu = 0;               // occupied classes
  std::vector<std::uint64_t> counts;  // counts[h] = #{a : a == h mod p^i}
  std::uint64_t total = 0;
};

/// Throws std::invalid_argument for an empty set or a modulus that is not a
/// prime power.
ResidueProfile profile(std::span<const std::uint64_t> set, std::uint64_t modulus);

/// A modulus together with the number of classes a set may occupy. nu is a
/// real so that models like 2 sqrt(p) can be evaluated directly.
struct ClassBound {
  std::uint64_t modulus = 1;
  std::uint64_t prime = 1;
  double nu = 1.0;
};

enum class SieveVariant { Plain, Weighted };

struct SieveBoundReport {
  double log_n = 0.0;
  double numerator = 0.0;
  double denominator = 0.0;
  std::optional<double> bound;  // empty when the denominator is not positive
  std::vector<std::uint64_t> moduli_used;
  SieveVariant variant = SieveVariant::Plain;

  bool unbounded() const { return !bound.has_value(); }
};

/// Plain larger sieve. Throws std::invalid_argument on duplicate moduli,
/// nu <= 0, or log_n <= 0.
SieveBoundReport gallagher_bound(std::span<const ClassBound> moduli, double log_n);
SieveBoundReport gallagher_bound(std::span<const ResidueProfile> profiles, double log_n);

/// Weighted refinement. Every profile must be taken modulo a prime and over
/// the same multiset of `count` integers.
SieveBoundReport gallagher_bound_weighted(std::span<const ResidueProfile> profiles, std::uint64_t count, double log_n);

enum class NuModel { Measured, FiveCeilSqrt, TwoSqrt, HalfPPlusOne };

NuModel parse_nu_model(const std::string& name);
std::string to_string(NuModel model);

/// Classes allowed mod p under a model: 5 ceil(2 sqrt p) + 1, 2 sqrt p, or
/// ceil((p + 1) / 2). Measured has no closed form and throws.
double model_nu(NuModel model, std::uint64_t p);

struct CutoffSearch {
  std::vector<std::uint64_t> y_grid;
  std::vector<SieveBoundReport> reports;  // one per grid point
  std::optional<std::size_t> best;        // index of the minimal finite bound
  std::uint64_t paper_y = 0;              // (20/tau)^2 (log N)^2
  SieveBoundReport paper_report;
};

/// Evaluates the bound at every y in the grid using primes of `primes` up to
/// y, and at the prescribed cutoff y = (20/tau)^2 (log N)^2. `set` supplies
/// the measured profiles and may be empty for closed-form models. The
/// weighted variant needs measured profiles.
CutoffSearch optimize_cutoff(std::span<const std::uint64_t> set, const PrimeSet& primes, NuModel model, double log_n,
                             std::span<const std::uint64_t> y_grid, SieveVariant variant = SieveVariant::Plain,
                             double tau = 1.0);

/// Single-cutoff evaluation used by optimize_cutoff.
SieveBoundReport sieve_at_cutoff(std::span<const std::uint64_t> set, const PrimeSet& primes, NuModel model,
                                 double log_n, std::uint64_t y, SieveVariant variant = SieveVariant::Plain);

}  // namespace cubesieve
