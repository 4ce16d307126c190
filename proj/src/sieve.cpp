#include "cubesieve/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cubesieve {
namespace {

// One modulus' contribution: log p to the numerator, log p * weight to the
// denominator (weight = 1/nu, or sum Z^2 / |B|^2 for the weighted form).
struct Term {
  std::uint64_t modulus;
  double log_p;
  double weight;
};

SieveBoundReport evaluate(std::vector<Term> terms, double log_n, SieveVariant variant) {
  if (!(log_n > 0.0)) throw std::invalid_argument("sieve: log N must be positive");
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.modulus < b.modulus; });
  SieveBoundReport r;
  r.log_n = log_n;
  r.variant = variant;
  r.numerator = -log_n;
  r.denominator = -log_n;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i > 0 && terms[i].modulus == terms[i - 1].modulus) {
      throw std::invalid_argument("sieve: duplicate modulus " + std::to_string(terms[i].modulus));
    }
    r.numerator += terms[i].log_p;
    r.denominator += terms[i].log_p * terms[i].weight;
    r.moduli_used.push_back(terms[i].modulus);
  }
  if (r.denominator > kDenominatorTolerance) r.bound = r.numerator / r.denominator;
  return r;
}

// (prime, exponent) if n is a prime power p^i with i >= 1
std::optional<std::pair<std::uint64_t, unsigned>> as_prime_power(std::uint64_t n) {
  if (n < 2) return std::nullopt;
  std::uint64_t p = 0;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) return std::make_pair(n, 1u);
  unsigned e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  if (n != 1) return std::nullopt;
  return std::make_pair(p, e);
}

struct ClassStats {
  std::uint64_t nu = 0;
  double sum_sq = 0.0;
};

ClassStats class_stats(std::span<const std::uint64_t> set, std::uint64_t p, std::vector<std::uint64_t>& scratch) {
  scratch.clear();
  for (std::uint64_t a : set) scratch.push_back(a % p);
  std::sort(scratch.begin(), scratch.end());
  ClassStats s;
  for (std::size_t i = 0; i < scratch.size();) {
    std::size_t j = i;
    while (j < scratch.size() && scratch[j] == scratch[i]) ++j;
    ++s.nu;
    const auto run = static_cast<double>(j - i);
    s.sum_sq += run * run;
    i = j;
  }
  return s;
}

std::vector<Term> terms_up_to(std::span<const std::uint64_t> set, const PrimeSet& primes, NuModel model,
                              std::uint64_t y, SieveVariant variant) {
  if (variant == SieveVariant::Weighted && model != NuModel::Measured) {
    throw std::invalid_argument("weighted sieve needs measured profiles");
  }
  if (model == NuModel::Measured && set.empty()) throw std::invalid_argument("measured profiles need a nonempty set");
  std::vector<Term> terms;
  std::vector<std::uint64_t> scratch;
  const auto count = static_cast<double>(set.size());
  for (std::uint64_t p : primes.list(y)) {
    const double log_p = std::log(static_cast<double>(p));
    double weight;
    if (model == NuModel::Measured) {
      const ClassStats s = class_stats(set, p, scratch);
      weight = variant == SieveVariant::Weighted ? s.sum_sq / (count * count) : 1.0 / static_cast<double>(s.nu);
    } else {
      weight = 1.0 / model_nu(model, p);
    }
    terms.push_back({p, log_p, weight});
  }
  return terms;
}

}  // namespace

ResidueProfile profile(std::span<const std::uint64_t> set, std::uint64_t modulus) {
  if (set.empty()) throw std::invalid_argument("profile: empty set");
  const auto pp = as_prime_power(modulus);
  if (!pp) throw std::invalid_argument("profile: " + std::to_string(modulus) + " is not a prime power");
  ResidueProfile r;
  r.modulus = modulus;
  r.prime = pp->first;
  r.exponent = pp->second;
  r.counts.assign(modulus, 0);
  for (std::uint64_t a : set) ++r.counts[a % modulus];
  r.total = set.size();
  r.nu = static_cast<std::uint64_t>(std::count_if(r.counts.begin(), r.counts.end(), [](auto c) { return c > 0; }));
  return r;
}

SieveBoundReport gallagher_bound(std::span<const ClassBound> moduli, double log_n) {
  std::vector<Term> terms;
  for (const ClassBound& c : moduli) {
    if (!(c.nu > 0.0)) throw std::invalid_argument("sieve: nu must be positive");
    terms.push_back({c.modulus, std::log(static_cast<double>(c.prime)), 1.0 / c.nu});
  }
  return evaluate(std::move(terms), log_n, SieveVariant::Plain);
}

SieveBoundReport gallagher_bound(std::span<const ResidueProfile> profiles, double log_n) {
  std::vector<ClassBound> moduli;
  for (const ResidueProfile& pr : profiles) {
    moduli.push_back({pr.modulus, pr.prime, static_cast<double>(pr.nu)});
  }
  return gallagher_bound(moduli, log_n);
}

SieveBoundReport gallagher_bound_weighted(std::span<const ResidueProfile> profiles, std::uint64_t count,
                                          double log_n) {
  if (count == 0) throw std::invalid_argument("weighted sieve: empty multiset");
  const auto c = static_cast<double>(count);
  std::vector<Term> terms;
  for (const ResidueProfile& pr : profiles) {
    if (pr.exponent != 1) throw std::invalid_argument("weighted sieve: modulus " + std::to_string(pr.modulus) + " is not prime");
    if (pr.total != count) {
      throw std::invalid_argument("weighted sieve: profile mod " + std::to_string(pr.modulus) + " covers " +
                                  std::to_string(pr.total) + " integers, expected " + std::to_string(count));
    }
    double sum_sq = 0.0;
    for (std::uint64_t z : pr.counts) sum_sq += static_cast<double>(z) * static_cast<double>(z);
    terms.push_back({pr.modulus, std::log(static_cast<double>(pr.prime)), sum_sq / (c * c)});
  }
  return evaluate(std::move(terms), log_n, SieveVariant::Weighted);
}

NuModel parse_nu_model(const std::string& name) {
  if (name == "measured") return NuModel::Measured;
  if (name == "five_ceil_sqrt") return NuModel::FiveCeilSqrt;
  if (name == "two_sqrt") return NuModel::TwoSqrt;
  if (name == "half_p_plus_one") return NuModel::HalfPPlusOne;
  throw std::invalid_argument("unknown nu model '" + name + "'");
}

std::string to_string(NuModel model) {
  switch (model) {
    case NuModel::Measured: return "measured";
    case NuModel::FiveCeilSqrt: return "five_ceil_sqrt";
    case NuModel::TwoSqrt: return "two_sqrt";
    case NuModel::HalfPPlusOne: return "half_p_plus_one";
  }
  return "?";
}

double model_nu(NuModel model, std::uint64_t p) {
  switch (model) {
    case NuModel::FiveCeilSqrt: {
      std::uint64_t c = 0;
      while (c * c < 4 * p) ++c;
      return static_cast<double>(5 * c + 1);
    }
    case NuModel::TwoSqrt: return 2.0 * std::sqrt(static_cast<double>(p));
    case NuModel::HalfPPlusOne: return static_cast<double>((p + 2) / 2);
    case NuModel::Measured: break;
  }
  throw std::invalid_argument("model_nu: measured profiles have no closed form");
}

SieveBoundReport sieve_at_cutoff(std::span<const std::uint64_t> set, const PrimeSet& primes, NuModel model,
                                 double log_n, std::uint64_t y, SieveVariant variant) {
  return evaluate(terms_up_to(set, primes, model, y, variant), log_n, variant);
}

CutoffSearch optimize_cutoff(std::span<const std::uint64_t> set, const PrimeSet& primes, NuModel model, double log_n,
                             std::span<const std::uint64_t> y_grid, SieveVariant variant, double tau) {
  if (y_grid.empty()) throw std::invalid_argument("optimize_cutoff: empty y grid");
  if (!std::is_sorted(y_grid.begin(), y_grid.end())) throw std::invalid_argument("optimize_cutoff: y grid not ascending");
  if (!(tau > 0.0)) throw std::invalid_argument("optimize_cutoff: tau must be positive");
  CutoffSearch out;
  out.y_grid.assign(y_grid.begin(), y_grid.end());
  const double c2 = (20.0 / tau) * (20.0 / tau);
  out.paper_y = static_cast<std::uint64_t>(c2 * log_n * log_n);

  // one pass of per-prime terms up to the largest cutoff, then prefixes
  const std::uint64_t y_max = std::max(y_grid.back(), out.paper_y);
  const std::vector<Term> all = terms_up_to(set, primes, model, y_max, variant);
  auto prefix = [&](std::uint64_t y) {
    auto end = std::upper_bound(all.begin(), all.end(), y, [](std::uint64_t v, const Term& t) { return v < t.modulus; });
    return evaluate(std::vector<Term>(all.begin(), end), log_n, variant);
  };
  for (std::size_t i = 0; i < y_grid.size(); ++i) {
    out.reports.push_back(prefix(y_grid[i]));
    const auto& b = out.reports.back().bound;
    if (b && (!out.best || *b < *out.reports[*out.best].bound)) out.best = i;
  }
  out.paper_report = prefix(out.paper_y);
  return out;
}

}  // namespace cubesieve
