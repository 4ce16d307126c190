#include "cubesieve/cube.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "cubesieve/text.hpp"
#include "cubesieve/zq.hpp"

namespace cubesieve {

HilbertCube::HilbertCube(std::uint64_t a0, std::vector<std::uint64_t> steps, bool distinct_required)
    : a0_(a0), steps_(std::move(steps)), distinct_(distinct_required) {
  std::sort(steps_.begin(), steps_.end());
  std::uint64_t total = a0_;
  for (std::size_t i = 0; i < steps_.size(); ++i) {
    if (steps_[i] == 0) throw std::invalid_argument("HilbertCube: steps must be positive");
    if (distinct_ && i > 0 && steps_[i] == steps_[i - 1]) {
      throw std::invalid_argument("HilbertCube: repeated step " + std::to_string(steps_[i]) + " with distinct steps required");
    }
    if (steps_[i] > std::numeric_limits<std::uint64_t>::max() - total) {
      throw std::invalid_argument("HilbertCube: maximal sum overflows");
    }
    total += steps_[i];
  }
}

std::uint64_t HilbertCube::max_sum() const {
  std::uint64_t total = a0_;
  for (std::uint64_t s : steps_) total += s;
  return total;
}

std::string HilbertCube::to_string() const {
  std::string out = std::to_string(a0_);
  for (std::uint64_t s : steps_) out += ";" + std::to_string(s);
  return out;
}

HilbertCube HilbertCube::parse(const std::string& text, bool distinct_required) {
  const auto parts = text::split(text, ';');
  if (parts.empty()) throw std::invalid_argument("empty cube text");
  std::vector<std::uint64_t> steps;
  for (std::size_t i = 1; i < parts.size(); ++i) steps.push_back(text::parse_int<std::uint64_t>(parts[i]));
  return HilbertCube(text::parse_int<std::uint64_t>(parts[0]), std::move(steps), distinct_required);
}

std::vector<std::uint64_t> sums(const HilbertCube& cube) {
  if (cube.dimension() > kMaxEnumeratedDimension) {
    throw std::length_error("sums: dimension " + std::to_string(cube.dimension()) + " exceeds the enumeration cap");
  }
  std::vector<std::uint64_t> out{cube.a0()};
  out.reserve(std::size_t{1} << cube.dimension());
  for (std::uint64_t step : cube.steps()) {
    const std::size_t half = out.size();
    for (std::size_t i = 0; i < half; ++i) out.push_back(out[i] + step);
  }
  std::sort(out.begin(), out.end());
  return out;
}

CubeVerification verify(const HilbertCube& cube, const SetDescriptor& set, std::uint64_t limit) {
  CubeVerification v;
  bool exempted = false;
  for (std::uint64_t s : sums(cube)) {
    if (cube.a0() == 0 && s == 0 && !exempted) {
      exempted = true;  // the empty sum of a subset-sum cube
      continue;
    }
    if (s < 1 || s > limit || !is_member(set, s)) {
      v.ok = false;
      v.offender = s;
      return v;
    }
  }
  return v;
}

ResidueCheckReport residue_constraint_check(const HilbertCube& cube, const PrimeSet& primes, std::uint64_t y,
                                            ResidueBoundKind kind) {
  ResidueCheckReport report;
  std::vector<std::uint64_t> candidates;
  if (kind == ResidueBoundKind::RFull) {
    candidates = primes.list(y);
  } else {
    for (std::uint64_t p : primes_up_to(y)) {
      if (!primes.contains(p)) candidates.push_back(p);
    }
  }
  for (std::uint64_t p : candidates) {
    PrimeResidueCheck c;
    c.p = p;
    std::vector<std::uint64_t> classes;
    for (std::uint64_t a : cube.steps()) classes.push_back(a % p);
    std::sort(classes.begin(), classes.end());
    c.distinct_classes = static_cast<std::uint64_t>(std::unique(classes.begin(), classes.end()) - classes.begin());
    c.bound = kind == ResidueBoundKind::RFull ? static_cast<double>(5 * ceil_two_sqrt(p) + 1)
                                              : 2.0 * std::sqrt(static_cast<double>(p));
    c.ok = static_cast<double>(c.distinct_classes) <= c.bound;
    if (!c.ok) ++report.violations;
    report.per_prime.push_back(c);
  }
  return report;
}

std::string to_string(SearchMode mode) { return mode == SearchMode::Exact ? "exact" : "greedy"; }

namespace {

struct SearchSpace {
  std::vector<std::uint64_t> members;
  std::vector<bool> table;
  std::uint64_t limit;
};

SearchSpace make_space(const SetDescriptor& set, std::uint64_t limit) {
  SearchSpace s;
  s.limit = limit;
  s.table = membership_table(set, limit);
  for (std::uint64_t n = 1; n <= limit; ++n) {
    if (s.table[n]) s.members.push_back(n);
  }
  return s;
}

// Current cube during a search: its sums (unsorted), steps and largest sum.
struct Frontier {
  std::uint64_t a0 = 0;
  std::vector<std::uint64_t> steps;
  std::vector<std::uint64_t> sums;
  std::uint64_t top = 0;

  bool accepts(const SearchSpace& space, std::uint64_t a) const {
    for (auto it = sums.rbegin(); it != sums.rend(); ++it) {
      if (!space.table[*it + a]) return false;
    }
    return true;
  }
  void push(std::uint64_t a) {
    const std::size_t half = sums.size();
    for (std::size_t i = 0; i < half; ++i) sums.push_back(sums[i] + a);
    steps.push_back(a);
    top += a;
  }
  void pop() {
    top -= steps.back();
    steps.pop_back();
    sums.resize(sums.size() / 2);
  }
  HilbertCube cube(bool distinct) const { return HilbertCube(a0, steps, distinct); }
};

// Smallest admissible next step given the last one.
std::uint64_t min_next_step(const Frontier& f, bool distinct) {
  if (f.steps.empty()) return 1;
  return distinct ? f.steps.back() + 1 : f.steps.back();
}

class ExactSearch {
 public:
  ExactSearch(const SearchSpace& space, const SearchOptions& opt) : space_(space), opt_(opt) {}

  void run(CubeSearchResult& out) {
    if (space_.members.empty()) return;
    if (opt_.subset_sum_mode) {
      start(0);
    } else {
      for (std::uint64_t a0 : space_.members) {
        if (exhausted_) break;
        start(a0);
      }
    }
    out.best_dimension = best_;
    out.witness = witness_;
    out.nodes_expanded = nodes_;
    out.exact = !exhausted_;
    out.mode = exhausted_ ? SearchMode::Greedy : SearchMode::Exact;
    out.all_maximal = std::move(all_);
  }

 private:
  void start(std::uint64_t a0) {
    Frontier f;
    f.a0 = a0;
    f.sums = {a0};
    f.top = a0;
    record(f);
    descend(f);
  }

  void record(const Frontier& f) {
    const int depth = static_cast<int>(f.steps.size());
    if (depth > best_) {
      best_ = depth;
      witness_ = f.cube(opt_.distinct_steps);
      all_.clear();
    }
    if (opt_.collect_limit > 0 && depth == best_ && all_.size() < opt_.collect_limit) {
      all_.push_back(f.cube(opt_.distinct_steps));
    }
  }

  // Can a branch reaching `depth` with `room` left and steps >= a still
  // matter? Ties matter only when collecting every maximal witness.
  bool promising(int depth, std::uint64_t room, std::uint64_t a) const {
    const auto reachable = static_cast<std::uint64_t>(depth) + room / a;
    if (best_ < 0) return true;
    const auto best = static_cast<std::uint64_t>(best_);
    return opt_.collect_limit > 0 ? reachable >= best : reachable > best;
  }

  void descend(Frontier& f) {
    const std::uint64_t lo = min_next_step(f, opt_.distinct_steps);
    const int depth = static_cast<int>(f.steps.size()) + 1;
    // step a = m - a0 for a member m
    auto it = std::lower_bound(space_.members.begin(), space_.members.end(), f.a0 + lo);
    for (; it != space_.members.end(); ++it) {
      const std::uint64_t a = *it - f.a0;
      if (a > space_.limit - f.top) break;
      if (!promising(depth, space_.limit - f.top - a, a)) break;
      if (!f.accepts(space_, a)) continue;
      if (++nodes_ > opt_.budget) {
        exhausted_ = true;
        return;
      }
      f.push(a);
      record(f);
      descend(f);
      f.pop();
      if (exhausted_) return;
    }
  }

  const SearchSpace& space_;
  const SearchOptions& opt_;
  int best_ = -1;
  std::optional<HilbertCube> witness_;
  std::vector<HilbertCube> all_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
};

bool better(int depth, const HilbertCube& cube, int best, const std::optional<HilbertCube>& witness) {
  if (depth != best) return depth > best;
  if (!witness) return true;
  if (cube.a0() != witness->a0()) return cube.a0() < witness->a0();
  return cube.steps() < witness->steps();
}

}  // namespace

CubeSearchResult max_dimension_exact(const SetDescriptor& set, std::uint64_t limit, const SearchOptions& options) {
  CubeSearchResult out;
  out.limit = limit;
  out.set = set.to_string();
  const SearchSpace space = make_space(set, limit);
  ExactSearch(space, options).run(out);
  return out;
}

CubeSearchResult max_dimension_greedy(const SetDescriptor& set, std::uint64_t limit, std::uint64_t seed,
                                      const SearchOptions& options, unsigned restarts) {
  CubeSearchResult out;
  out.limit = limit;
  out.set = set.to_string();
  out.mode = SearchMode::Greedy;
  const SearchSpace space = make_space(set, limit);
  if (space.members.empty()) return out;

  std::mt19937_64 rng(seed);
  std::vector<std::uint64_t> candidates;
  for (unsigned r = 0; r < std::max(restarts, 1u); ++r) {
    Frontier f;
    // first restart is the deterministic smallest-first walk
    f.a0 = options.subset_sum_mode ? 0 : (r == 0 ? space.members.front() : space.members[rng() % space.members.size()]);
    f.sums = {f.a0};
    f.top = f.a0;
    while (true) {
      candidates.clear();
      const std::uint64_t lo = min_next_step(f, options.distinct_steps);
      for (auto it = std::lower_bound(space.members.begin(), space.members.end(), f.a0 + lo); it != space.members.end();
           ++it) {
        const std::uint64_t a = *it - f.a0;
        if (a > space.limit - f.top) break;
        if (f.accepts(space, a)) candidates.push_back(a);
      }
      if (candidates.empty()) break;
      f.push(r == 0 ? candidates.front() : candidates[rng() % candidates.size()]);
      ++out.nodes_expanded;
    }
    const auto depth = static_cast<int>(f.steps.size());
    HilbertCube cube = f.cube(options.distinct_steps);
    if (better(depth, cube, out.best_dimension, out.witness)) {
      out.best_dimension = depth;
      out.witness = std::move(cube);
    }
  }
  return out;
}

HomogeneousAp max_homogeneous_ap(const SetDescriptor& set, std::uint64_t limit) {
  const std::vector<bool> table = membership_table(set, limit);
  HomogeneousAp best;
  for (std::uint64_t s = 1; s <= limit; ++s) {
    // lengths above best need (best + 1) s <= limit
    if ((best.length + 1) > limit / s) break;
    std::uint64_t len = 0;
    while ((len + 1) <= limit / s && table[(len + 1) * s]) ++len;
    if (len > best.length) best = {len, s};
  }
  return best;
}

}  // namespace cubesieve
