#include "cubesieve/harness.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "cubesieve/cube.hpp"
#include "cubesieve/instances.hpp"
#include "cubesieve/sunflower.hpp"
#include "cubesieve/text.hpp"
#include "cubesieve/zq.hpp"

namespace cubesieve {

std::string fixed6(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  return buf;
}

Experiment parse_experiment(const std::string& name) {
  if (name == "f2" || name == "f2_scan") return Experiment::F2Scan;
  if (name == "f1" || name == "f1_scan") return Experiment::F1Scan;
  if (name == "f4" || name == "f4_scan") return Experiment::F4Scan;
  if (name == "sieve" || name == "sieve_compare") return Experiment::SieveCompare;
  if (name == "verify" || name == "verify_all") return Experiment::VerifyAll;
  throw std::invalid_argument("unknown experiment '" + name + "'");
}

std::string to_string(Experiment e) {
  switch (e) {
    case Experiment::F2Scan: return "f2";
    case Experiment::F1Scan: return "f1";
    case Experiment::F4Scan: return "f4";
    case Experiment::SieveCompare: return "sieve";
    case Experiment::VerifyAll: return "verify";
  }
  return "?";
}

std::vector<std::uint64_t> parse_grid(const std::string& text_in) {
  const std::string_view text = text::trim(text_in);
  if (text.find(':') != std::string_view::npos) {
    const auto parts = text::split(text, ':');
    if (parts.size() != 3) throw std::invalid_argument("grid 'a:b:step' expects three fields");
    const auto a = text::parse_int<std::uint64_t>(parts[0]);
    const auto b = text::parse_int<std::uint64_t>(parts[1]);
    const auto step = text::parse_int<std::uint64_t>(parts[2]);
    if (step == 0) throw std::invalid_argument("grid step must be positive");
    std::vector<std::uint64_t> out;
    for (std::uint64_t v = a; v <= b; v += step) out.push_back(v);
    return out;
  }
  return text::parse_int_list<std::uint64_t>(text);
}

namespace {

bool parse_bool(const std::string& v) {
  if (v == "1" || v == "true" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "no") return false;
  throw std::invalid_argument("not a boolean: '" + v + "'");
}

}  // namespace

void ExperimentConfig::apply(const std::string& key, const std::string& value) {
  if (key == "experiment") experiment = parse_experiment(value);
  else if (key == "n_grid") n_grid = parse_grid(value);
  else if (key == "budget") budget = text::parse_int<std::uint64_t>(value);
  else if (key == "seed") seed = text::parse_int<std::uint64_t>(value);
  else if (key == "output") output_path = value;
  else if (key == "threads") threads = std::max(1u, text::parse_int<unsigned>(value));
  else if (key == "restarts") greedy_restarts = text::parse_int<unsigned>(value);
  else if (key == "r") r = text::parse_int<unsigned>(value);
  else if (key == "primes") primes = value;
  else if (key == "family") family = value;
  else if (key == "nu") nu_model = parse_nu_model(value);
  else if (key == "y_grid") y_grid = parse_grid(value);
  else if (key == "tau") tau = std::stod(value);
  else if (key == "instances") instances = text::parse_int<std::uint64_t>(value);
  else if (key == "inject_fault") inject_fault = parse_bool(value);
  else throw std::invalid_argument("unknown config key '" + key + "'");
}

void ExperimentConfig::validate() const {
  if (experiment == Experiment::VerifyAll) return;
  if (n_grid.empty()) throw std::invalid_argument("experiment needs a nonempty N grid");
  for (std::size_t i = 1; i < n_grid.size(); ++i) {
    if (n_grid[i] <= n_grid[i - 1]) throw std::invalid_argument("N grid must be strictly ascending");
  }
  if (n_grid.front() < 1) throw std::invalid_argument("N grid values must be positive");
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config file '" + path + "'");
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    const std::string_view body = text::trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    out[std::string(text::trim(body.substr(0, eq)))] = std::string(text::trim(body.substr(eq + 1)));
  }
  return out;
}

namespace {

// Runs fn(i) for every grid index on up to `threads` workers; results keep
// grid order.
template <typename T, typename Fn>
std::vector<T> map_grid(std::size_t count, unsigned threads, Fn fn) {
  std::vector<T> out(count);
  for (std::size_t start = 0; start < count; start += threads) {
    std::vector<std::future<T>> batch;
    for (std::size_t i = start; i < std::min(count, start + threads); ++i) {
      batch.push_back(std::async(threads > 1 ? std::launch::async : std::launch::deferred, fn, i));
    }
    for (std::size_t k = 0; k < batch.size(); ++k) out[start + k] = batch[k].get();
  }
  return out;
}

DimensionRecord scan_point(const SetDescriptor& set, std::uint64_t n, const ExperimentConfig& config) {
  SearchOptions opt;
  opt.budget = config.budget;
  CubeSearchResult result = max_dimension_exact(set, n, opt);
  if (!result.exact) {
    const CubeSearchResult greedy = max_dimension_greedy(set, n, config.seed, opt, config.greedy_restarts);
    if (greedy.best_dimension > result.best_dimension) {
      const std::uint64_t nodes = result.nodes_expanded + greedy.nodes_expanded;
      result = greedy;
      result.nodes_expanded = nodes;
    }
    result.mode = SearchMode::Greedy;
    result.exact = false;
  }
  DimensionRecord rec;
  rec.n = n;
  rec.dimension = result.best_dimension;
  rec.mode = to_string(result.mode);
  rec.exact = result.exact;
  rec.witness = result.witness ? result.witness->to_string() : "none";
  rec.log_n = std::log(static_cast<double>(n));
  const double d = std::max(rec.dimension, 0);
  rec.ratio_log = rec.log_n > 0 ? d / rec.log_n : 0.0;
  rec.ratio_sqrt_log = rec.log_n > 0 ? d / std::sqrt(rec.log_n) : 0.0;
  rec.nodes = result.nodes_expanded;
  return rec;
}

}  // namespace

std::vector<DimensionRecord> run_dimension_scan(const SetDescriptor& set, const ExperimentConfig& config) {
  config.validate();
  auto records = map_grid<DimensionRecord>(config.n_grid.size(), config.threads, [&](std::size_t i) {
    return scan_point(set, config.n_grid[i], config);
  });
  // post-pass: re-verify every witness from its text form alone
  for (DimensionRecord& rec : records) {
    rec.verified = rec.witness == "none" ? rec.dimension < 0 : verify(HilbertCube::parse(rec.witness), set, rec.n).ok;
  }
  return records;
}

std::vector<DimensionRecord> run_f2_scan(const ExperimentConfig& config) {
  return run_dimension_scan(Squareful{}, config);
}

std::vector<DimensionRecord> run_f1_scan(const ExperimentConfig& config) {
  return run_dimension_scan(RFull{config.r, PrimeSet::parse(config.primes)}, config);
}

std::vector<DimensionRecord> run_f4_scan(const ExperimentConfig& config) {
  return run_dimension_scan(Semigroup{PrimeSet::parse(config.primes)}, config);
}

void write_dimension_csv(std::ostream& os, const std::vector<DimensionRecord>& records) {
  os << "N,dimension,mode,exact,witness,log_n,d_over_log_n,d_over_sqrt_log_n,nodes,verified\n";
  for (const DimensionRecord& r : records) {
    os << r.n << ',' << r.dimension << ',' << r.mode << ',' << (r.exact ? 1 : 0) << ',' << r.witness << ','
       << fixed6(r.log_n) << ',' << fixed6(r.ratio_log) << ',' << fixed6(r.ratio_sqrt_log) << ',' << r.nodes << ','
       << (r.verified ? 1 : 0) << '\n';
  }
}

std::vector<std::string> dimension_findings(const std::vector<DimensionRecord>& records, double max_ratio) {
  std::vector<std::string> out;
  int running_max = -1;
  for (const DimensionRecord& r : records) {
    if (r.ratio_log > max_ratio) {
      out.push_back("N=" + std::to_string(r.n) + ": d/log N = " + fixed6(r.ratio_log) + " exceeds " +
                    fixed6(max_ratio) + " (witness " + r.witness + ")");
    }
    if (r.dimension < running_max) {
      out.push_back("N=" + std::to_string(r.n) + ": d = " + std::to_string(r.dimension) +
                    " is below an earlier grid point's " + std::to_string(running_max) + " (witness " + r.witness +
                    ", mode " + r.mode + ")");
    }
    if (!r.verified) out.push_back("N=" + std::to_string(r.n) + ": witness " + r.witness + " fails re-verification");
    running_max = std::max(running_max, r.dimension);
  }
  return out;
}

namespace {

std::vector<std::uint64_t> sieve_family(const std::string& family, std::uint64_t n) {
  if (family == "squares") {
    std::vector<std::uint64_t> out;
    for (std::uint64_t k = 1; k * k <= n; ++k) out.push_back(k * k);
    return out;
  }
  return enumerate(SetDescriptor::parse(family), n);
}

}  // namespace

std::vector<SieveCompareRecord> run_sieve_compare(const ExperimentConfig& config) {
  config.validate();
  const PrimeSet primes = PrimeSet::parse(config.primes);
  return map_grid<SieveCompareRecord>(config.n_grid.size(), config.threads, [&](std::size_t i) {
    const std::uint64_t n = config.n_grid[i];
    const std::vector<std::uint64_t> family = sieve_family(config.family, n);
    const double log_n = std::log(static_cast<double>(std::max<std::uint64_t>(n, 2)));
    std::vector<std::uint64_t> grid = config.y_grid;
    if (grid.empty()) {
      const auto paper_y = static_cast<std::uint64_t>((20.0 / config.tau) * (20.0 / config.tau) * log_n * log_n);
      for (std::uint64_t y = 16; y <= 2 * paper_y; y *= 2) grid.push_back(y);
    }
    SieveCompareRecord rec;
    rec.n = n;
    rec.truth = family.size();
    rec.nu_model = to_string(config.nu_model);
    const CutoffSearch search = optimize_cutoff(family, primes, config.nu_model, log_n, grid, SieveVariant::Plain, config.tau);
    rec.y_paper = search.paper_y;
    rec.at_paper_y = search.paper_report;
    if (search.best) {
      rec.y_best = search.y_grid[*search.best];
      rec.at_best_y = search.reports[*search.best];
    } else {
      rec.y_best = search.y_grid.back();
      rec.at_best_y = search.reports.back();
    }
    return rec;
  });
}

void write_sieve_csv(std::ostream& os, const std::vector<SieveCompareRecord>& records) {
  auto bound = [](const SieveBoundReport& r) { return r.bound ? fixed6(*r.bound) : std::string("unbounded"); };
  os << "N,truth,nu_model,y_paper,numerator_paper,denominator_paper,bound_paper,y_best,bound_best,best_over_truth\n";
  for (const SieveCompareRecord& r : records) {
    os << r.n << ',' << r.truth << ',' << r.nu_model << ',' << r.y_paper << ',' << fixed6(r.at_paper_y.numerator) << ','
       << fixed6(r.at_paper_y.denominator) << ',' << bound(r.at_paper_y) << ',' << r.y_best << ',' << bound(r.at_best_y)
       << ',';
    if (r.at_best_y.bound && r.truth > 0) {
      os << fixed6(*r.at_best_y.bound / static_cast<double>(r.truth));
    } else {
      os << "unbounded";
    }
    os << '\n';
  }
}

std::size_t VerifyReport::counterexamples() const {
  std::size_t total = 0;
  for (const SuiteResult& s : suites) total += s.counterexamples.size();
  return total;
}

namespace {

SuiteResult suite_olson() {
  SuiteResult s{"olson_exhaustive", 0, {}};
  for (std::uint64_t p : {5u, 7u, 11u, 13u}) {
    const OlsonReport r = verify_olson_exhaustive(p);
    s.cases += r.cases_checked;
    for (const auto& c : r.counterexamples) {
      s.counterexamples.push_back("p=" + std::to_string(p) + " B={" + text::join(c.set, ",") + "} target " +
                                  std::to_string(c.target));
    }
  }
  return s;
}

SuiteResult suite_minimal_cover() {
  SuiteResult s{"minimal_cover_k", 0, {}};
  for (std::uint64_t p : primes_up_to(23)) {
    const std::uint64_t k = minimal_cover_k(p);
    std::uint64_t floor_two_sqrt = 0;
    while ((floor_two_sqrt + 1) * (floor_two_sqrt + 1) <= 4 * p) ++floor_two_sqrt;
    ++s.cases;
    if (k > floor_two_sqrt + 1) {
      s.counterexamples.push_back("p=" + std::to_string(p) + " k=" + std::to_string(k) + " exceeds floor(2 sqrt p)+1");
    }
  }
  return s;
}

SuiteResult suite_cauchy_davenport() {
  SuiteResult s{"cauchy_davenport", 0, {}};
  for (std::uint64_t p : {3u, 5u, 7u, 11u}) {
    const std::uint64_t full = std::uint64_t{1} << p;
    std::vector<std::vector<std::uint64_t>> sets(full);
    for (std::uint64_t mask = 1; mask < full; ++mask) {
      for (std::uint64_t r = 0; r < p; ++r) {
        if (mask >> r & 1) sets[mask].push_back(r);
      }
    }
    for (std::uint64_t a = 1; a < full; ++a) {
      for (std::uint64_t b = 1; b < full; ++b) {
        ++s.cases;
        const std::size_t size = sumset_mod_p(sets[a], sets[b], p).size();
        if (size < std::min<std::size_t>(p, sets[a].size() + sets[b].size() - 1)) {
          s.counterexamples.push_back("p=" + std::to_string(p) + " A={" + text::join(sets[a], ",") + "} B={" +
                                      text::join(sets[b], ",") + "}");
        }
      }
    }
  }
  return s;
}

SuiteResult suite_lift_zero(const ExperimentConfig& config) {
  SuiteResult s{"lift_zero", 0, {}};
  std::mt19937_64 rng(config.seed);
  bool fault_pending = config.inject_fault;
  for (auto [p, m] : {std::pair<std::uint64_t, std::uint64_t>{71, 2}, {73, 2}, {79, 3}}) {
    for (std::uint64_t i = 0; i < config.instances; ++i) {
      const auto inst = random_lift_zero_instance(p, m, rng);
      if (!inst) continue;
      ++s.cases;
      LiftZeroResult r = find_lift_zero(*inst);
      const std::string where = "(p,m)=(" + std::to_string(p) + "," + std::to_string(m) + ") instance " + std::to_string(i);
      if (!r.witness) {
        s.counterexamples.push_back(where + ": no lift-zero subset although the hypotheses hold");
        continue;
      }
      if (fault_pending) {
        // test hook: corrupt one witness index before re-validation
        auto& idx = r.witness->indices.front();
        idx = idx + 1 < inst->elements.size() && r.witness->indices.size() == 1 ? idx + 1 : (idx == 0 ? 1 : idx - 1);
        fault_pending = false;
      }
      const std::string problem = validate_witness(*r.witness, inst->elements);
      if (!problem.empty()) s.counterexamples.push_back(where + ": " + problem);
    }
  }
  return s;
}

SuiteResult suite_schwarzwald(const ExperimentConfig& config) {
  // smallest primes where |B mod p| >= 5 ceil(2 sqrt p) + 2 is satisfiable
  SuiteResult s{"schwarzwald_p109", 0, {}};
  std::mt19937_64 rng(config.seed + 1);
  for (std::uint64_t i = 0; i < config.instances; ++i) {
    const auto inst = random_schwarzwald_instance(109, 2, 160, rng);
    if (!inst) break;
    ++s.cases;
    for (auto strategy : {SchwarzwaldStrategy::Direct, SchwarzwaldStrategy::Paper}) {
      const char* name = strategy == SchwarzwaldStrategy::Direct ? "direct" : "paper";
      const SchwarzwaldResult r = schwarzwald(inst->set, inst->a0, strategy);
      const std::string where = std::string(name) + " instance " + std::to_string(i);
      if (!r.witness) {
        s.counterexamples.push_back(where + ": no subset found although the hypotheses hold");
      } else if (auto problem = validate_witness(*r.witness, inst->set.elements); !problem.empty()) {
        s.counterexamples.push_back(where + ": " + problem);
      }
    }
  }
  return s;
}

SuiteResult suite_sieve_soundness(const ExperimentConfig& config) {
  SuiteResult s{"sieve_soundness", 0, {}};
  std::mt19937_64 rng(config.seed + 2);
  const std::vector<std::uint64_t> small_primes = primes_up_to(200);
  const std::uint64_t n = 10'000;
  const double log_n = std::log(static_cast<double>(n));
  for (std::uint64_t i = 0; i < std::max<std::uint64_t>(config.instances / 2, 1); ++i) {
    // sets confined to few classes mod a random small modulus give finite bounds
    const std::uint64_t modulus = 2 + rng() % 6;
    std::vector<std::uint64_t> a;
    for (std::uint64_t x = 1 + rng() % modulus; x <= n; x += modulus) {
      if (rng() % 3 == 0) a.push_back(x);
    }
    if (a.empty()) a.push_back(1);
    std::vector<ResidueProfile> profiles;
    for (std::uint64_t p : small_primes) {
      if (rng() % 2 == 0) profiles.push_back(profile(a, p));
    }
    ++s.cases;
    const SieveBoundReport plain = gallagher_bound(profiles, log_n);
    const SieveBoundReport weighted = gallagher_bound_weighted(profiles, a.size(), log_n);
    const std::string where = "instance " + std::to_string(i) + " |A|=" + std::to_string(a.size());
    if (plain.bound && static_cast<double>(a.size()) > *plain.bound + 1e-9) {
      s.counterexamples.push_back(where + ": plain bound " + fixed6(*plain.bound) + " below |A|");
    }
    if (plain.bound && weighted.bound && *weighted.bound > *plain.bound + 1e-9) {
      s.counterexamples.push_back(where + ": weighted bound exceeds plain bound");
    }
  }
  return s;
}

SuiteResult suite_sunflower(const ExperimentConfig& config) {
  SuiteResult s{"sunflower", 0, {}};
  std::mt19937_64 rng(config.seed + 3);
  for (std::uint64_t i = 0; i < config.instances; ++i) {
    const std::size_t h = 1 + rng() % 3;
    const std::size_t size = 3 + rng() % 18;
    const std::int64_t universe = static_cast<std::int64_t>(h + 2 + rng() % 8);
    std::vector<IntSet> sets;
    std::size_t attempts = 0;
    while (sets.size() < size && attempts++ < 1000) {
      IntSet set;
      const std::size_t k = 1 + rng() % h;
      while (set.size() < k) {
        const std::int64_t x = 1 + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(universe));
        if (std::find(set.begin(), set.end(), x) == set.end()) set.push_back(x);
      }
      std::sort(set.begin(), set.end());
      if (std::find(sets.begin(), sets.end(), set) == sets.end()) sets.push_back(set);
    }
    if (sets.size() < 3) continue;
    const SetFamily family(sets, h);
    ++s.cases;
    const SunflowerResult greedy = find_sunflower(family, 3, SunflowerMode::Greedy);
    const SunflowerResult exact = find_sunflower(family, 3, SunflowerMode::Exact);
    const std::string where = "family " + std::to_string(i);
    if (greedy.witness && !is_sunflower(family, *greedy.witness)) s.counterexamples.push_back(where + ": greedy witness invalid");
    if (exact.witness && !is_sunflower(family, *exact.witness)) s.counterexamples.push_back(where + ": exact witness invalid");
    if (greedy.witness && !exact.witness) s.counterexamples.push_back(where + ": exact search misses greedy's sunflower");
  }
  return s;
}

}  // namespace

VerifyReport run_verify_all(const ExperimentConfig& config) {
  VerifyReport report;
  report.suites.push_back(suite_olson());
  report.suites.push_back(suite_minimal_cover());
  report.suites.push_back(suite_cauchy_davenport());
  report.suites.push_back(suite_lift_zero(config));
  report.suites.push_back(suite_schwarzwald(config));
  report.suites.push_back(suite_sieve_soundness(config));
  report.suites.push_back(suite_sunflower(config));
  return report;
}

void write_verify_report(std::ostream& os, const VerifyReport& report) {
  os << "suite,cases,counterexamples\n";
  for (const SuiteResult& s : report.suites) os << s.name << ',' << s.cases << ',' << s.counterexamples.size() << '\n';
  for (const SuiteResult& s : report.suites) {
    for (const std::string& c : s.counterexamples) os << "# " << s.name << ": " << c << '\n';
  }
}

}  // namespace cubesieve
