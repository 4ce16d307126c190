#include "cubesieve/zq.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "cubesieve/primes.hpp"

namespace cubesieve {
namespace {

constexpr std::uint64_t kNoPrev = ~std::uint64_t{0};

// Reachability DP over Z_q for nonempty subset sums. Scans elements left to
// right; for each element, already reachable residues are extended in the
// order they were first reached, then the singleton is tried. Stops after
// the first element that reaches any target and returns the smallest
// target residue reached by it.
std::optional<SubsetWitness> first_reach(std::span<const std::uint64_t> elements, std::uint64_t q,
                                         const std::vector<bool>& is_target) {
  std::vector<std::int64_t> via(q, -1);
  std::vector<std::uint64_t> prev(q, kNoPrev);
  std::vector<std::uint64_t> order;
  order.reserve(q);
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const std::uint64_t e = elements[i] % q;
    std::optional<std::uint64_t> hit;
    auto visit = [&](std::uint64_t t, std::uint64_t from) {
      if (via[t] >= 0) return;
      via[t] = static_cast<std::int64_t>(i);
      prev[t] = from;
      order.push_back(t);
      if (is_target[t] && (!hit || t < *hit)) hit = t;
    };
    const std::size_t known = order.size();
    for (std::size_t k = 0; k < known; ++k) {
      const std::uint64_t r = order[k];
      visit((r + e) % q, r);
    }
    visit(e, kNoPrev);
    if (!hit) continue;

    SubsetWitness w;
    w.q = q;
    w.sum_mod_q = *hit;
    for (std::uint64_t t = *hit; t != kNoPrev; t = prev[t]) w.indices.push_back(static_cast<std::size_t>(via[t]));
    std::reverse(w.indices.begin(), w.indices.end());
    return w;
  }
  return std::nullopt;
}

std::size_t count_distinct_mod(std::span<const std::uint64_t> elements, std::uint64_t p) {
  std::vector<bool> seen(p, false);
  std::size_t count = 0;
  for (std::uint64_t e : elements) {
    if (!seen[e % p]) {
      seen[e % p] = true;
      ++count;
    }
  }
  return count;
}

std::uint64_t sum_mod(std::span<const std::uint64_t> elements, std::span<const std::size_t> indices, std::uint64_t q) {
  std::uint64_t s = 0;
  for (std::size_t i : indices) s = (s + elements[i] % q) % q;
  return s;
}

void require_prime(std::uint64_t p, const char* who) {
  if (!is_prime(p)) throw std::invalid_argument(std::string(who) + ": " + std::to_string(p) + " is not prime");
}

}  // namespace

Modulus::Modulus(std::uint64_t p, std::uint64_t m) : p_(p), m_(m) {
  require_prime(p, "Modulus");
  if (m == 0) throw std::invalid_argument("Modulus: m must be at least 1");
  if (m > (std::uint64_t{1} << 32) / p) throw std::invalid_argument("Modulus: q = p*m too large");
}

bool Modulus::is_prime_power() const {
  std::uint64_t m = m_;
  while (m % p_ == 0) m /= p_;
  return m == 1;
}

ResidueMultiset::ResidueMultiset(Modulus mod, std::vector<std::uint64_t> elems)
    : modulus(mod), elements(std::move(elems)) {
  for (std::uint64_t e : elements) {
    if (e >= modulus.q()) {
      throw std::invalid_argument("residue " + std::to_string(e) + " is not reduced mod " + std::to_string(modulus.q()));
    }
  }
}

std::vector<std::uint64_t> ResidueMultiset::reduced_mod_p() const {
  std::vector<std::uint64_t> out;
  out.reserve(elements.size());
  for (std::uint64_t e : elements) out.push_back(e % modulus.p());
  return out;
}

std::size_t ResidueMultiset::distinct_mod_p() const { return count_distinct_mod(elements, modulus.p()); }

bool Fact::holds(std::uint64_t sum) const {
  const bool congruent = sum % modulus == target % modulus;
  return relation == Relation::Congruent ? congruent : !congruent;
}

std::string Fact::to_string() const {
  std::ostringstream os;
  os << "sum " << (relation == Relation::Congruent ? "==" : "!=") << ' ' << target << " mod " << modulus;
  return os.str();
}

std::string validate_witness(const SubsetWitness& witness, std::span<const std::uint64_t> elements) {
  if (witness.indices.empty()) return "empty index set";
  for (std::size_t k = 0; k < witness.indices.size(); ++k) {
    if (witness.indices[k] >= elements.size()) return "index " + std::to_string(witness.indices[k]) + " out of range";
    if (k > 0 && witness.indices[k] <= witness.indices[k - 1]) return "indices not strictly increasing";
  }
  if (witness.q == 0) return "zero modulus";
  const std::uint64_t s = sum_mod(elements, witness.indices, witness.q);
  if (s != witness.sum_mod_q) {
    return "recomputed sum " + std::to_string(s) + " differs from recorded " + std::to_string(witness.sum_mod_q);
  }
  for (const Fact& f : witness.facts) {
    if (f.modulus == 0 || witness.q % f.modulus != 0) return "fact modulus does not divide q: " + f.to_string();
    if (!f.holds(s)) return "fact fails: " + f.to_string();
  }
  return {};
}

std::uint64_t ceil_two_sqrt(std::uint64_t p) {
  std::uint64_t c = 0;
  while (c * c < 4 * p) ++c;
  return c;
}

std::optional<SubsetWitness> subset_sum_find(std::span<const std::uint64_t> elements, std::uint64_t target,
                                             std::uint64_t p) {
  require_prime(p, "subset_sum_find");
  target %= p;
  std::vector<bool> is_target(p, false);
  is_target[target] = true;
  auto w = first_reach(elements, p, is_target);
  if (!w) {
    const std::uint64_t k = count_distinct_mod(elements, p);
    if (k * k > 4 * p) {
      throw std::logic_error("subset_sum_find: no subset hits " + std::to_string(target) + " mod " +
                             std::to_string(p) + " although " + std::to_string(k) + " > 2 sqrt(p) residues are present");
    }
    return std::nullopt;
  }
  w->facts.push_back({p, Relation::Congruent, target});
  return w;
}

std::uint64_t minimal_cover_k(std::uint64_t p) {
  require_prime(p, "minimal_cover_k");
  if (p > kMinimalCoverCap) {
    throw std::invalid_argument("minimal_cover_k: p = " + std::to_string(p) + " exceeds the exhaustive cap " +
                                std::to_string(kMinimalCoverCap));
  }
  const std::uint64_t full = (std::uint64_t{1} << p) - 1;
  auto rotate = [&](std::uint64_t mask, std::uint64_t e) {
    return e == 0 ? mask : (((mask << e) | (mask >> (p - e))) & full);
  };
  // true iff every k-subset of {start..p-1} extending the current one covers
  std::function<bool(std::uint64_t, std::uint64_t, std::uint64_t)> all_cover =
      [&](std::uint64_t start, std::uint64_t remaining, std::uint64_t reach) -> bool {
    if (reach == full) return true;  // supersets keep covering
    if (remaining == 0) return false;
    for (std::uint64_t e = start; e + remaining <= p; ++e) {
      if (!all_cover(e + 1, remaining - 1, reach | rotate(reach, e) | (std::uint64_t{1} << e))) return false;
    }
    return true;
  };
  for (std::uint64_t k = 1; k <= p; ++k) {
    if (all_cover(0, k, 0)) return k;
  }
  return p;  // unreachable: Z_p itself covers
}

LiftZeroResult find_lift_zero(const ResidueMultiset& set, bool require_distinct_mod_p) {
  const Modulus& mod = set.modulus;
  if (mod.m() <= 1) throw std::invalid_argument("find_lift_zero: requires m > 1");
  const std::uint64_t p = mod.p(), q = mod.q();
  const std::size_t distinct = set.distinct_mod_p();
  if (require_distinct_mod_p && distinct != set.elements.size()) {
    throw std::invalid_argument("find_lift_zero: elements are not pairwise distinct mod p");
  }
  LiftZeroResult result;
  const bool has_non_multiple =
      std::any_of(set.elements.begin(), set.elements.end(), [&](std::uint64_t e) { return e % mod.m() != 0; });
  result.hypotheses_hold = distinct > 4 * ceil_two_sqrt(p) && has_non_multiple;

  std::vector<bool> is_target(q, false);
  for (std::uint64_t t = p; t < q; t += p) is_target[t] = true;
  result.witness = first_reach(set.elements, q, is_target);
  if (result.witness) {
    result.witness->facts = {{p, Relation::Congruent, 0}, {q, Relation::NotCongruent, 0}};
  }
  return result;
}

namespace {

SubsetWitness with_schwarzwald_facts(SubsetWitness w, std::uint64_t p, std::uint64_t q, std::uint64_t a0) {
  w.facts = {{p, Relation::Congruent, (p - a0 % p) % p}, {q, Relation::NotCongruent, (q - a0) % q}};
  return w;
}

std::optional<SubsetWitness> schwarzwald_direct(const ResidueMultiset& set, std::uint64_t a0) {
  const std::uint64_t p = set.modulus.p(), q = set.modulus.q();
  const std::uint64_t want_p = (p - a0 % p) % p;
  const std::uint64_t avoid_q = (q - a0) % q;
  std::vector<bool> is_target(q, false);
  for (std::uint64_t t = want_p; t < q; t += p) is_target[t] = t != avoid_q;
  auto w = first_reach(set.elements, q, is_target);
  if (!w) return std::nullopt;
  return with_schwarzwald_facts(std::move(*w), p, q, a0);
}

std::optional<SubsetWitness> schwarzwald_paper(const ResidueMultiset& set, std::uint64_t a0) {
  const std::uint64_t p = set.modulus.p(), m = set.modulus.m(), q = set.modulus.q();
  const auto& elems = set.elements;
  const std::uint64_t block_classes = ceil_two_sqrt(p) + 1;

  // step A1: keep one element outside p^(l-1) Z_q aside, then take one
  // representative per new class mod p until the block has enough classes
  const auto keeper = std::find_if(elems.begin(), elems.end(), [&](std::uint64_t e) { return e % m != 0; });
  if (keeper == elems.end()) {
    throw std::invalid_argument("schwarzwald(paper) step A1: every element is a multiple of p^(l-1)");
  }
  const auto keep_index = static_cast<std::size_t>(keeper - elems.begin());
  std::vector<std::size_t> block;
  std::vector<bool> class_used(p, false);
  for (std::size_t i = 0; i < elems.size() && block.size() < block_classes; ++i) {
    if (i == keep_index || class_used[elems[i] % p]) continue;
    class_used[elems[i] % p] = true;
    block.push_back(i);
  }
  if (block.size() < block_classes) {
    throw std::invalid_argument("schwarzwald(paper) step A1: only " + std::to_string(block.size()) +
                                " residue classes mod p available besides the kept element, need " +
                                std::to_string(block_classes));
  }

  // step A2: hit -a0 mod p inside the block
  std::vector<std::uint64_t> block_residues;
  for (std::size_t i : block) block_residues.push_back(elems[i] % p);
  const auto inner = subset_sum_find(block_residues, (p - a0 % p) % p, p);
  if (!inner) throw std::logic_error("schwarzwald(paper) step A2: Olson subset not found");
  std::vector<std::size_t> chosen;
  for (std::size_t k : inner->indices) chosen.push_back(block[k]);
  const std::uint64_t partial = sum_mod(elems, chosen, q);
  if ((a0 % q + partial) % q != 0) {
    SubsetWitness w;
    w.q = q;
    w.indices = chosen;
    w.sum_mod_q = partial;
    return with_schwarzwald_facts(std::move(w), p, q, a0);
  }

  // step A3: a0 + sum(A2) vanishes mod q; add a lift-zero subset of B \ A1
  std::vector<std::size_t> rest_positions;
  std::vector<std::uint64_t> rest;
  std::vector<bool> in_block(elems.size(), false);
  for (std::size_t i : block) in_block[i] = true;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (in_block[i]) continue;
    rest_positions.push_back(i);
    rest.push_back(elems[i]);
  }
  const LiftZeroResult lift = find_lift_zero(ResidueMultiset(set.modulus, std::move(rest)));
  if (!lift.witness) return std::nullopt;
  for (std::size_t k : lift.witness->indices) chosen.push_back(rest_positions[k]);
  std::sort(chosen.begin(), chosen.end());
  SubsetWitness w;
  w.q = q;
  w.indices = std::move(chosen);
  w.sum_mod_q = sum_mod(elems, w.indices, q);
  return with_schwarzwald_facts(std::move(w), p, q, a0);
}

}  // namespace

SchwarzwaldResult schwarzwald(const ResidueMultiset& set, std::uint64_t a0, SchwarzwaldStrategy strategy) {
  if (!set.modulus.is_prime_power() || set.modulus.m() <= 1) {
    throw std::invalid_argument("schwarzwald: modulus must be p^l with l > 1");
  }
  const std::uint64_t p = set.modulus.p();
  a0 %= set.modulus.q();
  SchwarzwaldResult result;
  result.hypotheses_hold = set.distinct_mod_p() >= 5 * ceil_two_sqrt(p) + 2;
  result.witness = strategy == SchwarzwaldStrategy::Direct ? schwarzwald_direct(set, a0) : schwarzwald_paper(set, a0);
  return result;
}

std::vector<std::uint64_t> sumset_mod_p(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                                        std::uint64_t p) {
  if (a.empty() || b.empty()) throw std::invalid_argument("sumset_mod_p: operands must be nonempty");
  std::vector<bool> hit(p, false);
  for (std::uint64_t x : a) {
    for (std::uint64_t y : b) hit[(x % p + y % p) % p] = true;
  }
  std::vector<std::uint64_t> out;
  for (std::uint64_t r = 0; r < p; ++r) {
    if (hit[r]) out.push_back(r);
  }
  return out;
}

OlsonReport verify_olson_exhaustive(std::uint64_t p) {
  require_prime(p, "verify_olson_exhaustive");
  if (p > kOlsonExhaustiveCap) {
    throw std::invalid_argument("verify_olson_exhaustive: p = " + std::to_string(p) + " exceeds the cap " +
                                std::to_string(kOlsonExhaustiveCap));
  }
  OlsonReport report;
  report.p = p;
  while (report.min_size * report.min_size <= 4 * p) ++report.min_size;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << p); ++mask) {
    if (static_cast<std::uint64_t>(std::popcount(mask)) < report.min_size) continue;
    std::vector<std::uint64_t> set;
    for (std::uint64_t r = 0; r < p; ++r) {
      if (mask >> r & 1) set.push_back(r);
    }
    ++report.sets_checked;
    for (std::uint64_t target = 0; target < p; ++target) {
      ++report.cases_checked;
      std::optional<SubsetWitness> w;
      try {
        w = subset_sum_find(set, target, p);
      } catch (const std::logic_error&) {
      }
      if (!w || !validate_witness(*w, set).empty()) report.counterexamples.push_back({set, target});
    }
  }
  return report;
}

}  // namespace cubesieve
