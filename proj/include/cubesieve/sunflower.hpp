#pragma once

// Sunflowers in set families, h-fold representation counts, the dimension
// bound for subset-sum cubes, and extraction of homogeneous arithmetic
// progressions from sunflowers of equal-sum sets.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace cubesieve {

using IntSet = std::vector<std::int64_t>;  // sorted, no duplicates

class SetFamily {
 public:
  /// Sorts and deduplicates each set. Throws std::invalid_argument if two
  /// sets coincide or one exceeds h elements. h = 0 means "largest set".
  explicit SetFamily(std::vector<IntSet> sets, std::size_t h = 0);

  const std::vector<IntSet>& sets() const { return sets_; }
  std::size_t size() const { return sets_.size(); }
  std::size_t h() const { return h_; }

 private:
  std::vector<IntSet> sets_;
  std::size_t h_;
};

struct SunflowerWitness {
  IntSet kernel;
  std::vector<std::size_t> petals;  // ascending positions into the family
};

/// True iff the chosen sets (at least 2) pairwise intersect exactly in
/// `kernel`. Checks every pair directly.
bool is_sunflower(const SetFamily& family, const SunflowerWitness& witness);

enum class SunflowerMode { Exact, Greedy };

struct SunflowerResult {
  std::optional<SunflowerWitness> witness;
  /// NotFound is a proof of absence only for the exact mode.
  bool absence_proven = false;
};

inline constexpr std::size_t kExactSunflowerCap = 25;

/// Exact mode enumerates index tuples (|F| <= kExactSunflowerCap). Greedy
/// mode is the Erdos-Rado recursion: take a maximal pairwise disjoint
/// subfamily; if it has v sets they form a sunflower, otherwise restrict to
/// the sets containing the most frequent element of its union, remove that
/// element and recurse. Throws std::invalid_argument for v < 3.
SunflowerResult find_sunflower(const SetFamily& family, std::size_t v, SunflowerMode mode);

/// ceil((v log h)^h) for h >= 2, and v for h = 1. Throws std::overflow_error
/// when the value does not fit in 63 bits.
std::uint64_t sunflower_threshold(std::size_t h, std::size_t v);

/// h! (v - 1)^h, the classical Erdos-Rado threshold, for comparison.
double erdos_rado_threshold(std::size_t h, std::size_t v);

/// (C v log h)^h, the representation-count bound with an explicit constant.
double representation_bound(double c, std::size_t v, std::size_t h);

struct RepCount {
  std::uint64_t g = 0;
  std::optional<std::uint64_t> target;  // least integer attaining g
};

/// max over t in [1, N] of the number of h-element subsets of `elements`
/// (distinct positive integers) summing to t.
RepCount rep_count_g(std::span<const std::uint64_t> elements, std::size_t h, std::uint64_t limit);

/// (5 h! f_N g)^(1/h) + 5h + 4.
double dimension_bound(std::size_t h, double f_n, std::uint64_t g);

struct ApExtraction {
  std::uint64_t step = 0;    // common sum s of the de-kerneled petals
  std::size_t length = 0;    // v: 0, s, ..., (v-1)s are subset sums
  std::vector<IntSet> unions;  // unions[j] has sum j*s, j = 0..v-1
};

/// Removes the kernel from each petal, requires the remainders to have equal
/// sums s (throws std::invalid_argument otherwise) and returns the
/// progression 0, s, ..., (v-1)s together with the subsets realizing it.
/// Throws if the witness is not a sunflower or uses values outside `steps`.
ApExtraction extract_ap(const SetFamily& family, const SunflowerWitness& witness, std::span<const std::uint64_t> steps);

/// Groups the h-subsets of `steps` by their sum (lowest sum first) and
/// returns the first bucket holding a sunflower with v petals, converted to
/// an arithmetic progression. The number of h-subsets is capped at
/// `max_subsets`.
std::optional<ApExtraction> find_ap_by_buckets(std::span<const std::uint64_t> steps, std::size_t h, std::size_t v,
                                               SunflowerMode mode, std::size_t max_subsets = 1'000'000);

}  // namespace cubesieve
