#pragma once

// Seeded random inputs that satisfy the hypotheses of the lift-zero and
// shifted lift-zero (prime-power) statements.

#include <cstdint>
#include <optional>
#include <random>

#include "cubesieve/zq.hpp"

namespace cubesieve {

/// A set in Z_{pm}, pairwise distinct mod p, with more than 4 ceil(2 sqrt p)
/// classes mod p and at least one element that is not a multiple of m.
/// Empty when 4 ceil(2 sqrt p) >= p.
std::optional<ResidueMultiset> random_lift_zero_instance(std::uint64_t p, std::uint64_t m, std::mt19937_64& rng);

struct ShiftedInstance {
  ResidueMultiset set;
  std::uint64_t a0;
};

/// A set in Z_{p^l} of `size` distinct residues with at least
/// 5 ceil(2 sqrt p) + 2 classes mod p, plus a random shift a0. Empty when
/// that many classes do not exist mod p.
std::optional<ShiftedInstance> random_schwarzwald_instance(std::uint64_t p, unsigned ell, std::size_t size,
                                                           std::mt19937_64& rng);

}  // namespace cubesieve
