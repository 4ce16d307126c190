#include "cubesieve/sunflower.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

namespace cubesieve {
namespace {

IntSet intersect(const IntSet& a, const IntSet& b) {
  IntSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

IntSet difference(const IntSet& a, const IntSet& b) {
  IntSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool disjoint(const IntSet& a, const IntSet& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return false;
    if (*i < *j) ++i; else ++j;
  }
  return true;
}

std::optional<SunflowerWitness> exact_search(const SetFamily& family, std::size_t v) {
  const auto& sets = family.sets();
  std::vector<std::size_t> chosen;
  IntSet kernel;
  std::optional<SunflowerWitness> found;
  std::function<bool(std::size_t)> extend = [&](std::size_t start) -> bool {
    if (chosen.size() == v) {
      found = SunflowerWitness{kernel, chosen};
      return true;
    }
    for (std::size_t j = start; j + (v - chosen.size()) <= sets.size(); ++j) {
      const IntSet saved = kernel;
      bool fits = true;
      if (chosen.size() == 1) {
        kernel = intersect(sets[chosen[0]], sets[j]);
      } else if (chosen.size() > 1) {
        for (std::size_t i : chosen) {
          if (intersect(sets[i], sets[j]) != kernel) {
            fits = false;
            break;
          }
        }
      }
      if (fits) {
        chosen.push_back(j);
        if (extend(j + 1)) return true;
        chosen.pop_back();
      }
      kernel = saved;
    }
    return false;
  };
  extend(0);
  return found;
}

// Erdos-Rado recursion on (original position, reduced set) pairs.
std::optional<SunflowerWitness> greedy_search(std::vector<std::pair<std::size_t, IntSet>> members, IntSet kernel,
                                              std::size_t v) {
  while (members.size() >= v) {
    std::vector<std::size_t> disjoint_family;
    IntSet covered;
    for (std::size_t k = 0; k < members.size(); ++k) {
      if (!disjoint(members[k].second, covered)) continue;
      disjoint_family.push_back(k);
      IntSet merged;
      std::set_union(covered.begin(), covered.end(), members[k].second.begin(), members[k].second.end(),
                     std::back_inserter(merged));
      covered = std::move(merged);
      if (disjoint_family.size() == v) break;
    }
    if (disjoint_family.size() == v) {
      SunflowerWitness w{kernel, {}};
      for (std::size_t k : disjoint_family) w.petals.push_back(members[k].first);
      std::sort(w.petals.begin(), w.petals.end());
      return w;
    }
    // every set meets `covered`; follow its most frequent element
    std::map<std::int64_t, std::size_t> freq;
    for (const auto& [pos, s] : members) {
      for (std::int64_t x : intersect(s, covered)) ++freq[x];
    }
    if (freq.empty()) return std::nullopt;
    auto best = freq.begin();
    for (auto it = freq.begin(); it != freq.end(); ++it) {
      if (it->second > best->second) best = it;
    }
    const std::int64_t x = best->first;
    std::vector<std::pair<std::size_t, IntSet>> next;
    for (auto& [pos, s] : members) {
      if (std::binary_search(s.begin(), s.end(), x)) next.emplace_back(pos, difference(s, {x}));
    }
    kernel.insert(std::upper_bound(kernel.begin(), kernel.end(), x), x);
    members = std::move(next);
  }
  return std::nullopt;
}

}  // namespace

SetFamily::SetFamily(std::vector<IntSet> sets, std::size_t h) : sets_(std::move(sets)), h_(h) {
  std::size_t largest = 0;
  for (IntSet& s : sets_) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    largest = std::max(largest, s.size());
  }
  if (h_ == 0) h_ = largest;
  if (largest > h_) throw std::invalid_argument("SetFamily: a set has more than h elements");
  std::vector<IntSet> sorted = sets_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("SetFamily: sets must be pairwise distinct");
  }
}

bool is_sunflower(const SetFamily& family, const SunflowerWitness& witness) {
  const auto& petals = witness.petals;
  if (petals.size() < 2) return false;
  for (std::size_t i = 0; i < petals.size(); ++i) {
    if (petals[i] >= family.size()) return false;
    for (std::size_t j = 0; j < i; ++j) {
      if (petals[i] == petals[j]) return false;
      if (intersect(family.sets()[petals[i]], family.sets()[petals[j]]) != witness.kernel) return false;
    }
  }
  return true;
}

SunflowerResult find_sunflower(const SetFamily& family, std::size_t v, SunflowerMode mode) {
  if (v < 3) throw std::invalid_argument("find_sunflower: v must be at least 3");
  SunflowerResult r;
  if (mode == SunflowerMode::Exact) {
    if (family.size() > kExactSunflowerCap) {
      throw std::invalid_argument("find_sunflower: exact mode is capped at " + std::to_string(kExactSunflowerCap) +
                                  " sets");
    }
    r.witness = exact_search(family, v);
    r.absence_proven = !r.witness;
    return r;
  }
  std::vector<std::pair<std::size_t, IntSet>> members;
  for (std::size_t i = 0; i < family.size(); ++i) members.emplace_back(i, family.sets()[i]);
  r.witness = greedy_search(std::move(members), {}, v);
  return r;
}

std::uint64_t sunflower_threshold(std::size_t h, std::size_t v) {
  if (h == 0) throw std::invalid_argument("sunflower_threshold: h must be positive");
  if (v < 3) throw std::invalid_argument("sunflower_threshold: v must be at least 3");
  if (h == 1) return v;
  const long double value = std::pow(static_cast<long double>(v) * std::log(static_cast<long double>(h)),
                                     static_cast<long double>(h));
  if (!(value < 9.2e18L)) throw std::overflow_error("sunflower_threshold: value exceeds 63 bits");
  return static_cast<std::uint64_t>(std::ceil(value));
}

double erdos_rado_threshold(std::size_t h, std::size_t v) {
  return std::tgamma(static_cast<double>(h) + 1.0) * std::pow(static_cast<double>(v) - 1.0, static_cast<double>(h));
}

double representation_bound(double c, std::size_t v, std::size_t h) {
  return std::pow(c * static_cast<double>(v) * std::log(static_cast<double>(h)), static_cast<double>(h));
}

RepCount rep_count_g(std::span<const std::uint64_t> elements, std::size_t h, std::uint64_t limit) {
  if (h == 0 || h > elements.size()) throw std::invalid_argument("rep_count_g: need 1 <= h <= |A|");
  std::vector<std::uint64_t> sorted(elements.begin(), elements.end());
  std::sort(sorted.begin(), sorted.end());
  if (sorted.front() == 0 || std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("rep_count_g: elements must be distinct positive integers");
  }
  // count[j][t]: j-subsets of the elements seen so far with sum t
  std::vector<std::vector<std::uint64_t>> count(h + 1, std::vector<std::uint64_t>(limit + 1, 0));
  count[0][0] = 1;
  for (std::uint64_t a : sorted) {
    if (a > limit) break;
    for (std::size_t j = h; j >= 1; --j) {
      for (std::uint64_t t = limit; t >= a; --t) count[j][t] += count[j - 1][t - a];
    }
  }
  RepCount r;
  for (std::uint64_t t = 1; t <= limit; ++t) {
    if (count[h][t] > r.g) {
      r.g = count[h][t];
      r.target = t;
    }
  }
  return r;
}

double dimension_bound(std::size_t h, double f_n, std::uint64_t g) {
  if (h == 0) throw std::invalid_argument("dimension_bound: h must be positive");
  const double hf = static_cast<double>(h);
  return std::pow(5.0 * std::tgamma(hf + 1.0) * f_n * static_cast<double>(g), 1.0 / hf) + 5.0 * hf + 4.0;
}

ApExtraction extract_ap(const SetFamily& family, const SunflowerWitness& witness, std::span<const std::uint64_t> steps) {
  if (!is_sunflower(family, witness)) throw std::invalid_argument("extract_ap: witness is not a sunflower");
  std::vector<std::uint64_t> allowed(steps.begin(), steps.end());
  std::sort(allowed.begin(), allowed.end());
  ApExtraction out;
  out.length = witness.petals.size();
  std::vector<IntSet> remainders;
  for (std::size_t idx : witness.petals) {
    const IntSet& petal = family.sets()[idx];
    for (std::int64_t x : petal) {
      if (x <= 0 || !std::binary_search(allowed.begin(), allowed.end(), static_cast<std::uint64_t>(x))) {
        throw std::invalid_argument("extract_ap: petal value " + std::to_string(x) + " is not a step");
      }
    }
    remainders.push_back(difference(petal, witness.kernel));
  }
  auto sum_of = [](const IntSet& s) {
    std::uint64_t t = 0;
    for (std::int64_t x : s) t += static_cast<std::uint64_t>(x);
    return t;
  };
  out.step = sum_of(remainders.front());
  for (const IntSet& r : remainders) {
    if (sum_of(r) != out.step) {
      throw std::invalid_argument("extract_ap: de-kerneled petal sums differ (" + std::to_string(sum_of(r)) + " vs " +
                                  std::to_string(out.step) + ")");
    }
  }
  IntSet acc;
  out.unions.push_back(acc);
  for (std::size_t j = 0; j + 1 < remainders.size(); ++j) {
    IntSet merged;
    std::set_union(acc.begin(), acc.end(), remainders[j].begin(), remainders[j].end(), std::back_inserter(merged));
    acc = std::move(merged);
    out.unions.push_back(acc);
  }
  return out;
}

std::optional<ApExtraction> find_ap_by_buckets(std::span<const std::uint64_t> steps, std::size_t h, std::size_t v,
                                               SunflowerMode mode, std::size_t max_subsets) {
  std::vector<std::uint64_t> a(steps.begin(), steps.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  if (h == 0 || h > a.size()) return std::nullopt;

  std::map<std::uint64_t, std::vector<IntSet>> buckets;
  std::size_t produced = 0;
  IntSet current;
  std::function<void(std::size_t, std::uint64_t)> choose = [&](std::size_t start, std::uint64_t sum) {
    if (current.size() == h) {
      if (++produced > max_subsets) throw std::length_error("find_ap_by_buckets: too many h-subsets");
      buckets[sum].push_back(current);
      return;
    }
    for (std::size_t i = start; i + (h - current.size()) <= a.size(); ++i) {
      current.push_back(static_cast<std::int64_t>(a[i]));
      choose(i + 1, sum + a[i]);
      current.pop_back();
    }
  };
  choose(0, 0);

  for (auto& [sum, sets] : buckets) {
    if (sets.size() < v) continue;
    const SetFamily family(std::move(sets), h);
    const SunflowerMode use =
        mode == SunflowerMode::Exact && family.size() <= kExactSunflowerCap ? SunflowerMode::Exact : SunflowerMode::Greedy;
    const SunflowerResult r = find_sunflower(family, v, use);
    if (r.witness) return extract_ap(family, *r.witness, a);
  }
  return std::nullopt;
}

}  // namespace cubesieve
