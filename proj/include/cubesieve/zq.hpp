#pragma once

// Subset sums over Z_p and Z_q with q = p*m.
//
// All finders work on positions into the caller's sequence, so repeated
// residues are handled as a multiset. Witnesses are never empty. When more
// than one subset qualifies, the finders return the first one reached by a
// reachability DP that scans the input left to right; the witness for a
// residue is fixed by the element at which that residue first became
// reachable, which makes every result reproducible.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cubesieve {

class Modulus {
 public:
  /// Throws std::invalid_argument unless p is prime and m >= 1.
  Modulus(std::uint64_t p, std::uint64_t m);

  std::uint64_t p() const { return p_; }
  std::uint64_t m() const { return m_; }
  std::uint64_t q() const { return p_ * m_; }
  /// True iff m = p^(l-1) for some l >= 1.
  bool is_prime_power() const;

 private:
  std::uint64_t p_;
  std::uint64_t m_;
};

/// Elements of Z_q, with multiplicity.
struct ResidueMultiset {
  Modulus modulus;
  std::vector<std::uint64_t> elements;

  /// Throws std::invalid_argument if any element is >= q.
  ResidueMultiset(Modulus mod, std::vector<std::uint64_t> elems);

  std::vector<std::uint64_t> reduced_mod_p() const;
  std::size_t distinct_mod_p() const;
};

enum class Relation { Congruent, NotCongruent };

/// "sum == target (mod modulus)" or "sum != target (mod modulus)".
struct Fact {
  std::uint64_t modulus = 1;
  Relation relation = Relation::Congruent;
  std::uint64_t target = 0;

  bool holds(std::uint64_t sum) const;
  std::string to_string() const;
};

struct SubsetWitness {
  std::vector<std::size_t> indices;  // strictly increasing
  std::uint64_t sum_mod_q = 0;       // sum of selected elements mod q
  std::uint64_t q = 1;
  std::vector<Fact> facts;
};

/// Re-sums the selected elements from scratch and re-checks every fact.
/// Returns an empty string when the witness is valid, otherwise the reason.
std::string validate_witness(const SubsetWitness& witness, std::span<const std::uint64_t> elements);

/// Nonempty subset of `elements` (residues mod p) summing to `target` mod p.
/// Throws std::logic_error if nothing is found although the elements hold
/// more than 2 sqrt(p) distinct residues, since that contradicts Olson's
/// theorem and can only be an internal error.
std::optional<SubsetWitness> subset_sum_find(std::span<const std::uint64_t> elements, std::uint64_t target,
                                             std::uint64_t p);

/// ceil(2 sqrt(p)), computed exactly in integers.
std::uint64_t ceil_two_sqrt(std::uint64_t p);

/// Least k such that every k-subset of Z_p has nonempty subset sums covering
/// Z_p. Exhaustive, so p is capped at kMinimalCoverCap.
inline constexpr std::uint64_t kMinimalCoverCap = 31;
std::uint64_t minimal_cover_k(std::uint64_t p);

struct LiftZeroResult {
  std::optional<SubsetWitness> witness;
  /// More than 4 ceil(2 sqrt p) distinct residues mod p and an element that
  /// is not a multiple of m.
  bool hypotheses_hold = false;
  bool counterexample() const { return hypotheses_hold && !witness; }
};

/// A subset with sum == 0 (mod p) and sum != 0 (mod q). With
/// `require_distinct_mod_p` the input must be pairwise distinct mod p.
/// Requires m > 1.
LiftZeroResult find_lift_zero(const ResidueMultiset& set, bool require_distinct_mod_p = false);

enum class SchwarzwaldStrategy { Direct, Paper };

struct SchwarzwaldResult {
  std::optional<SubsetWitness> witness;
  /// |set mod p| >= 5 ceil(2 sqrt p) + 2.
  bool hypotheses_hold = false;
  bool counterexample() const { return hypotheses_hold && !witness; }
};

/// A subset A with a0 + sum(A) == 0 (mod p) and a0 + sum(A) != 0 (mod q),
/// where q = p^l with l > 1.
///
/// Direct runs the Z_q reachability DP. Paper builds the subset in three
/// steps: take a block A1 with exactly ceil(2 sqrt p) + 1 classes mod p while
/// keeping an element not divisible by p^(l-1) outside it, solve the target
/// on A1 with subset_sum_find, and if the result also vanishes mod q add a
/// lift-zero subset of the remaining elements. Paper throws
/// std::invalid_argument naming the step whose precondition fails.
SchwarzwaldResult schwarzwald(const ResidueMultiset& set, std::uint64_t a0, SchwarzwaldStrategy strategy);

/// {a + b mod p}, sorted.
std::vector<std::uint64_t> sumset_mod_p(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                                        std::uint64_t p);

struct OlsonReport {
  std::uint64_t p = 0;
  std::uint64_t min_size = 0;  // smallest |B| tested, the least integer > 2 sqrt p
  std::uint64_t sets_checked = 0;
  std::uint64_t cases_checked = 0;
  struct Counterexample {
    std::vector<std::uint64_t> set;
    std::uint64_t target;
  };
  std::vector<Counterexample> counterexamples;
};

/// Every B in Z_p with |B| > 2 sqrt(p) and every target: subset_sum_find
/// must succeed and its witness must re-validate. p is capped at
/// kOlsonExhaustiveCap.
inline constexpr std::uint64_t kOlsonExhaustiveCap = 13;
OlsonReport verify_olson_exhaustive(std::uint64_t p);

}  // namespace cubesieve
