#pragma once

// Hilbert cubes H(a0; a1, ..., ad) = a0 + {0, a1} + ... + {0, ad} inside a
// multiplicatively defined set, and searches for the largest dimension d.
//
// Cube mode: every one of the 2^d sums must lie in S and in [1, N], so a0
// itself is a member. Subset-sum mode (a0 = 0): the empty sum 0 is exempt
// and only the nonzero sums are constrained.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cubesieve/arithsets.hpp"

namespace cubesieve {

class HilbertCube {
 public:
  /// Sorts the steps. Throws std::invalid_argument on a zero step, repeated
  /// steps when distinct ones are required, or a maximal sum that overflows.
  HilbertCube(std::uint64_t a0, std::vector<std::uint64_t> steps, bool distinct_required = false);

  std::uint64_t a0() const { return a0_; }
  const std::vector<std::uint64_t>& steps() const { return steps_; }
  std::size_t dimension() const { return steps_.size(); }
  bool distinct_required() const { return distinct_; }
  std::uint64_t max_sum() const;

  /// "a0;s1;s2;..." (a0 alone for dimension 0).
  std::string to_string() const;
  /// Inverse of to_string.
  static HilbertCube parse(const std::string& text, bool distinct_required = false);

  friend bool operator==(const HilbertCube&, const HilbertCube&) = default;

 private:
  std::uint64_t a0_;
  std::vector<std::uint64_t> steps_;
  bool distinct_;
};

inline constexpr std::size_t kMaxEnumeratedDimension = 30;

/// All 2^d sums, ascending, with multiplicity. Throws std::length_error
/// above kMaxEnumeratedDimension.
std::vector<std::uint64_t> sums(const HilbertCube& cube);

struct CubeVerification {
  bool ok = true;
  std::optional<std::uint64_t> offender;  // smallest failing sum
};

CubeVerification verify(const HilbertCube& cube, const SetDescriptor& set, std::uint64_t limit);

enum class ResidueBoundKind {
  /// Primes p in T, at most 5 ceil(2 sqrt p) + 1 classes of steps mod p.
  RFull,
  /// Primes p outside T, at most 2 sqrt p classes of steps mod p.
  Semigroup,
};

struct PrimeResidueCheck {
  std::uint64_t p = 0;
  std::uint64_t distinct_classes = 0;
  double bound = 0.0;
  bool ok = true;
};

struct ResidueCheckReport {
  std::vector<PrimeResidueCheck> per_prime;
  std::size_t violations = 0;
};

/// Counts |{a_i mod p}| for the relevant primes p <= y and compares against
/// the local bound. A violation would contradict the local lemma for a cube
/// that verifies in the corresponding set.
ResidueCheckReport residue_constraint_check(const HilbertCube& cube, const PrimeSet& primes, std::uint64_t y,
                                            ResidueBoundKind kind = ResidueBoundKind::RFull);

enum class SearchMode { Exact, Greedy };

struct SearchOptions {
  bool subset_sum_mode = false;
  bool distinct_steps = false;
  std::uint64_t budget = 100'000'000;  // node expansions
  /// Exact search only: also collect every maximal witness, up to this many.
  std::size_t collect_limit = 0;
};

struct CubeSearchResult {
  std::uint64_t limit = 0;
  std::string set;
  SearchMode mode = SearchMode::Exact;
  /// -1 when the set has no member in [1, N].
  int best_dimension = -1;
  std::optional<HilbertCube> witness;
  std::uint64_t nodes_expanded = 0;
  /// True only for an exact search that finished within its budget.
  bool exact = false;
  std::vector<HilbertCube> all_maximal;  // filled when collect_limit > 0
};

/// Depth-first branch and bound over (a0, a1 <= a2 <= ...). Each new step a
/// is a difference m - a0 with m a member, and is accepted only if s + a is a
/// member in [1, N] for every current sum s. A branch is cut when its depth
/// plus (N - max sum) / a cannot beat the best found. The first maximal cube
/// met in this lexicographic order is returned. On budget exhaustion the best
/// cube found so far is returned with exact = false and mode Greedy.
CubeSearchResult max_dimension_exact(const SetDescriptor& set, std::uint64_t limit, const SearchOptions& options = {});

/// Randomized greedy extension with restarts; a certified lower bound,
/// deterministic for a fixed seed.
CubeSearchResult max_dimension_greedy(const SetDescriptor& set, std::uint64_t limit, std::uint64_t seed,
                                      const SearchOptions& options = {}, unsigned restarts = 64);

struct HomogeneousAp {
  std::uint64_t length = 0;
  std::uint64_t step = 0;  // least step achieving the length; 0 when length is 0
};

/// Longest s, 2s, ..., Ls inside S and [1, N].
HomogeneousAp max_homogeneous_ap(const SetDescriptor& set, std::uint64_t limit);

std::string to_string(SearchMode mode);

}  // namespace cubesieve
