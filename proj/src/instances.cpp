#include "cubesieve/instances.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

namespace cubesieve {
namespace {

std::uint64_t uniform(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

std::vector<std::uint64_t> random_classes(std::uint64_t p, std::uint64_t count, std::mt19937_64& rng) {
  std::vector<std::uint64_t> classes(p);
  std::iota(classes.begin(), classes.end(), 0);
  for (std::uint64_t i = 0; i + 1 < p; ++i) std::swap(classes[i], classes[i + uniform(rng, p - i)]);
  classes.resize(count);
  return classes;
}

}  // namespace

std::optional<ResidueMultiset> random_lift_zero_instance(std::uint64_t p, std::uint64_t m, std::mt19937_64& rng) {
  const Modulus mod(p, m);
  const std::uint64_t need = 4 * ceil_two_sqrt(p) + 1;
  if (need > p) return std::nullopt;
  const std::uint64_t count = need + uniform(rng, p - need + 1);
  std::vector<std::uint64_t> elems;
  for (std::uint64_t r : random_classes(p, count, rng)) elems.push_back(r + p * uniform(rng, m));
  const bool has_non_multiple = std::any_of(elems.begin(), elems.end(), [&](std::uint64_t e) { return e % m != 0; });
  if (!has_non_multiple) {
    // re-lift the first element that admits a lift outside mZ_q
    bool fixed = false;
    for (std::uint64_t& e : elems) {
      for (std::uint64_t k = 0; k < m && !fixed; ++k) {
        if ((e % p + p * k) % m != 0) {
          e = e % p + p * k;
          fixed = true;
        }
      }
      if (fixed) break;
    }
  }
  return ResidueMultiset(mod, std::move(elems));
}

std::optional<ShiftedInstance> random_schwarzwald_instance(std::uint64_t p, unsigned ell, std::size_t size,
                                                           std::mt19937_64& rng) {
  std::uint64_t m = 1;
  for (unsigned i = 1; i < ell; ++i) m *= p;
  const Modulus mod(p, m);
  const std::uint64_t q = mod.q();
  const std::uint64_t need = 5 * ceil_two_sqrt(p) + 2;
  if (need > p) return std::nullopt;
  const std::uint64_t classes = need + uniform(rng, p - need + 1);
  std::set<std::uint64_t> chosen;
  for (std::uint64_t r : random_classes(p, classes, rng)) chosen.insert(r + p * uniform(rng, m));
  while (chosen.size() < std::max<std::size_t>(size, classes)) chosen.insert(uniform(rng, q));
  std::vector<std::uint64_t> elems(chosen.begin(), chosen.end());
  for (std::size_t i = 0; i + 1 < elems.size(); ++i) std::swap(elems[i], elems[i + uniform(rng, elems.size() - i)]);
  return ShiftedInstance{ResidueMultiset(mod, std::move(elems)), uniform(rng, q)};
}

}  // namespace cubesieve
