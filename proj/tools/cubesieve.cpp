#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cubesieve/arithsets.hpp"
#include "cubesieve/cube.hpp"
#include "cubesieve/harness.hpp"
#include "cubesieve/sieve.hpp"
#include "cubesieve/sunflower.hpp"
#include "cubesieve/text.hpp"
#include "cubesieve/zq.hpp"

namespace cs = cubesieve;

namespace {

constexpr const char* kVersion = "cubesieve 1.0.0";

enum Exit { kOk = 0, kUsage = 1, kCounterexample = 2, kBudget = 3 };

struct usage_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::vector<std::uint64_t> u64_list(const std::string& s) { return cs::text::parse_int_list<std::uint64_t>(s); }

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

void print_witness(std::ostream& os, const std::optional<cs::SubsetWitness>& w) {
  os << "indices,sum_mod_q,q,facts\n";
  if (!w) {
    os << "\"\",,,none\n";
    return;
  }
  std::vector<std::string> facts;
  for (const cs::Fact& f : w->facts) facts.push_back(f.to_string());
  os << quoted(cs::text::join(w->indices, ",")) << ',' << w->sum_mod_q << ',' << w->q << ','
     << quoted(cs::text::join(facts, "; ")) << '\n';
}

// Reads one set per line; blank lines and '#' comments are skipped.
std::vector<cs::IntSet> read_family(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw usage_error("cannot read family file '" + path + "'");
  std::vector<cs::IntSet> sets;
  std::string line;
  while (std::getline(in, line)) {
    const auto body = cs::text::trim(line);
    if (body.empty() || body.front() == '#') continue;
    sets.push_back(cs::text::parse_int_list<std::int64_t>(body));
  }
  return sets;
}

std::vector<std::uint64_t> read_elements_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw usage_error("cannot read elements file '" + path + "'");
  std::vector<std::uint64_t> out;
  std::string line;
  while (std::getline(in, line)) {
    for (auto field : cs::text::split(line, ',')) {
      const auto t = cs::text::trim(field);
      if (!t.empty()) out.push_back(cs::text::parse_int<std::uint64_t>(t));
    }
  }
  return out;
}

CLI::App* add_command(CLI::App& app, const std::string& name, const std::string& help) {
  CLI::App* sub = app.add_subcommand(name, help);
  sub->set_version_flag("--version", kVersion);
  return sub;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sieve, subset-sum and Hilbert cube experiments"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  int status = kOk;
  std::function<int()> action;

  // membership
  std::string set_text;
  std::string values_text;
  auto* membership = add_command(app, "membership", "Test integers for membership in a set");
  membership->add_option("--set", set_text, "Set descriptor")->required();
  membership->add_option("--n", values_text, "Comma-separated integers")->required();
  membership->callback([&] {
    action = [&] {
      const auto set = cs::SetDescriptor::parse(set_text);
      std::cout << "n,member\n";
      for (auto n : u64_list(values_text)) std::cout << n << ',' << (cs::is_member(set, n) ? 1 : 0) << '\n';
      return int{kOk};
    };
  });

  // enumerate
  std::uint64_t limit = 0;
  std::string out_path;
  auto* enumerate = add_command(app, "enumerate", "List members of a set up to a limit");
  enumerate->add_option("--set", set_text, "Set descriptor")->required();
  enumerate->add_option("--limit", limit, "Upper bound N")->required();
  enumerate->add_option("--out", out_path, "Write CSV to this file instead of stdout");
  enumerate->callback([&] {
    action = [&] {
      const auto members = cs::enumerate(cs::SetDescriptor::parse(set_text), limit);
      if (out_path.empty()) {
        for (auto n : members) std::cout << n << '\n';
      } else {
        std::ofstream out(out_path);
        if (!out) throw usage_error("cannot write '" + out_path + "'");
        out << "n\n";
        for (auto n : members) out << n << '\n';
      }
      return int{kOk};
    };
  });

  // olson
  std::uint64_t p = 0;
  std::uint64_t m = 1;
  unsigned ell = 2;
  std::uint64_t target = 0;
  std::uint64_t a0 = 0;
  std::string elements_text;
  std::string strategy_text = "direct";
  auto* olson = add_command(app, "olson", "Find a nonempty subset with a given sum mod p");
  olson->add_option("--p", p, "Prime")->required();
  olson->add_option("--elements", elements_text, "Comma-separated residues")->required();
  olson->add_option("--target", target, "Target residue")->required();
  olson->callback([&] {
    action = [&] {
      if (!cs::is_prime(p)) throw usage_error("--p must be prime");
      auto elems = u64_list(elements_text);
      std::optional<cs::SubsetWitness> w;
      try {
        w = cs::subset_sum_find(elems, target % p, p);
      } catch (const std::logic_error& e) {
        std::cerr << "counterexample: " << e.what() << '\n';
        return int{kCounterexample};
      }
      print_witness(std::cout, w);
      return int{kOk};
    };
  });

  // liftzero
  auto* liftzero = add_command(app, "liftzero", "Find a subset summing to 0 mod p but not mod pm");
  liftzero->add_option("--p", p, "Prime")->required();
  liftzero->add_option("--m", m, "Cofactor m > 1")->required();
  liftzero->add_option("--elements", elements_text, "Comma-separated residues mod pm")->required();
  liftzero->callback([&] {
    action = [&] {
      const cs::ResidueMultiset set(cs::Modulus(p, m), u64_list(elements_text));
      const auto r = cs::find_lift_zero(set);
      print_witness(std::cout, r.witness);
      if (r.counterexample()) {
        std::cerr << "counterexample: hypotheses hold but no subset exists\n";
        return int{kCounterexample};
      }
      return int{kOk};
    };
  });

  // schwarzwald
  auto* schwarz = add_command(app, "schwarzwald", "Shifted lift-zero subset over Z_{p^l}");
  schwarz->add_option("--p", p, "Prime")->required();
  schwarz->add_option("--ell", ell, "Exponent l >= 2")->required();
  schwarz->add_option("--a0", a0, "Shift")->required();
  schwarz->add_option("--elements", elements_text, "Comma-separated residues mod p^l")->required();
  schwarz->add_option("--strategy", strategy_text, "direct|paper")->check(CLI::IsMember({"direct", "paper"}));
  schwarz->callback([&] {
    action = [&] {
      std::uint64_t mm = 1;
      for (unsigned i = 1; i < ell; ++i) mm *= p;
      const cs::ResidueMultiset set(cs::Modulus(p, mm), u64_list(elements_text));
      const auto strategy = strategy_text == "paper" ? cs::SchwarzwaldStrategy::Paper : cs::SchwarzwaldStrategy::Direct;
      const auto r = cs::schwarzwald(set, a0, strategy);
      print_witness(std::cout, r.witness);
      if (r.counterexample()) {
        std::cerr << "counterexample: hypotheses hold but no subset exists\n";
        return int{kCounterexample};
      }
      return int{kOk};
    };
  });

  // sieve-bound
  std::string elements_file;
  std::string primes_text = "all";
  std::uint64_t y = 0;
  std::string y_grid_text;
  std::string nu_text = "measured";
  std::string variant_text = "plain";
  double log_n = 0.0;
  auto* sieve = add_command(app, "sieve-bound", "Larger sieve upper bound for a finite set");
  auto* sieve_set = sieve->add_option("--set", set_text, "Set descriptor (enumerated up to e^log-n)");
  auto* sieve_file = sieve->add_option("--elements-file", elements_file, "Integers, comma or newline separated");
  sieve_set->excludes(sieve_file);
  sieve->add_option("--primes", primes_text, "Prime set");
  auto* y_opt = sieve->add_option("--y", y, "Prime cutoff");
  auto* grid_opt = sieve->add_option("--y-grid", y_grid_text, "Cutoff grid a:b:step or a,b,c");
  y_opt->excludes(grid_opt);
  sieve->add_option("--nu", nu_text, "measured|five_ceil_sqrt|two_sqrt|half_p_plus_one");
  sieve->add_option("--log-n", log_n, "log N")->required();
  sieve->add_option("--variant", variant_text, "plain|weighted")->check(CLI::IsMember({"plain", "weighted"}));
  sieve->callback([&] {
    action = [&] {
      if (sieve_set->count() + sieve_file->count() != 1) throw usage_error("give exactly one of --set, --elements-file");
      if (y_opt->count() + grid_opt->count() != 1) throw usage_error("give exactly one of --y, --y-grid");
      if (!(log_n > 0)) throw usage_error("--log-n must be positive");
      std::vector<std::uint64_t> elems;
      if (sieve_file->count()) {
        elems = read_elements_file(elements_file);
      } else {
        elems = cs::enumerate(cs::SetDescriptor::parse(set_text), static_cast<std::uint64_t>(std::floor(std::exp(log_n))));
      }
      const auto grid = y_opt->count() ? std::vector<std::uint64_t>{y} : cs::parse_grid(y_grid_text);
      const auto primes = cs::PrimeSet::parse(primes_text);
      const auto variant = variant_text == "weighted" ? cs::SieveVariant::Weighted : cs::SieveVariant::Plain;
      const auto search = cs::optimize_cutoff(elems, primes, cs::parse_nu_model(nu_text), log_n, grid, variant);
      std::cout << "y,numerator,denominator,bound\n";
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto& r = search.reports[i];
        std::cout << grid[i] << ',' << cs::fixed6(r.numerator) << ',' << cs::fixed6(r.denominator) << ','
                  << (r.bound ? cs::fixed6(*r.bound) : std::string("unbounded")) << '\n';
      }
      return int{kOk};
    };
  });

  // cube-search
  std::string mode_text = "exact";
  std::uint64_t budget = 100'000'000;
  std::uint64_t seed = 1;
  bool subset_sum = false;
  bool distinct = false;
  auto* cube_search = add_command(app, "cube-search", "Largest Hilbert cube inside a set up to N");
  cube_search->add_option("--set", set_text, "Set descriptor")->required();
  cube_search->add_option("--limit", limit, "Upper bound N")->required();
  cube_search->add_option("--mode", mode_text, "exact|greedy")->check(CLI::IsMember({"exact", "greedy"}));
  cube_search->add_option("--budget", budget, "Node budget");
  cube_search->add_option("--seed", seed, "Greedy seed");
  cube_search->add_flag("--subset-sum", subset_sum, "Require a0 = 0");
  cube_search->add_flag("--distinct", distinct, "Require distinct steps");
  cube_search->callback([&] {
    action = [&] {
      const auto set = cs::SetDescriptor::parse(set_text);
      cs::SearchOptions opt;
      opt.subset_sum_mode = subset_sum;
      opt.distinct_steps = distinct;
      opt.budget = budget;
      const auto r = mode_text == "exact" ? cs::max_dimension_exact(set, limit, opt)
                                          : cs::max_dimension_greedy(set, limit, seed, opt);
      std::cout << "N,mode,dimension,witness,nodes,exact_flag\n"
                << limit << ',' << cs::to_string(r.mode) << ',' << r.best_dimension << ','
                << (r.witness ? r.witness->to_string() : "none") << ',' << r.nodes_expanded << ',' << (r.exact ? 1 : 0)
                << '\n';
      return mode_text == "exact" && !r.exact ? int{kBudget} : int{kOk};
    };
  });

  // cube-verify
  std::string steps_text;
  auto* cube_verify = add_command(app, "cube-verify", "Check that a Hilbert cube lies inside a set");
  cube_verify->add_option("--a0", a0, "Base point")->required();
  cube_verify->add_option("--steps", steps_text, "Comma-separated steps")->required();
  cube_verify->add_option("--set", set_text, "Set descriptor")->required();
  cube_verify->add_option("--limit", limit, "Upper bound N")->required();
  cube_verify->add_flag("--subset-sum", subset_sum, "Require a0 = 0");
  cube_verify->add_flag("--distinct", distinct, "Require distinct steps");
  cube_verify->callback([&] {
    action = [&] {
      if (subset_sum && a0 != 0) throw usage_error("--subset-sum requires --a0 0");
      const cs::HilbertCube cube(a0, u64_list(steps_text), distinct);
      const auto v = cs::verify(cube, cs::SetDescriptor::parse(set_text), limit);
      std::cout << "N,cube,ok,offender\n"
                << limit << ',' << cube.to_string() << ',' << (v.ok ? 1 : 0) << ','
                << (v.offender ? std::to_string(*v.offender) : std::string()) << '\n';
      return v.ok ? int{kOk} : int{kCounterexample};
    };
  });

  // ap-max
  auto* ap_max = add_command(app, "ap-max", "Longest homogeneous progression s, 2s, ... inside a set");
  ap_max->add_option("--set", set_text, "Set descriptor")->required();
  ap_max->add_option("--limit", limit, "Upper bound N")->required();
  ap_max->callback([&] {
    action = [&] {
      const auto ap = cs::max_homogeneous_ap(cs::SetDescriptor::parse(set_text), limit);
      std::cout << "N,length,step\n" << limit << ',' << ap.length << ',' << ap.step << '\n';
      return int{kOk};
    };
  });

  // sunflower
  std::string family_file;
  std::size_t petals = 3;
  auto* sunflower = add_command(app, "sunflower", "Search a set family for a sunflower");
  sunflower->add_option("--family-file", family_file, "One set per line, comma-separated")->required();
  sunflower->add_option("--petals", petals, "Number of petals v >= 3")->required();
  sunflower->add_option("--mode", mode_text, "exact|greedy")->check(CLI::IsMember({"exact", "greedy"}));
  sunflower->callback([&] {
    action = [&] {
      const cs::SetFamily family(read_family(family_file));
      const auto r = cs::find_sunflower(family, petals, mode_text == "exact" ? cs::SunflowerMode::Exact
                                                                             : cs::SunflowerMode::Greedy);
      std::cout << "found,kernel,petals,absence_proven\n";
      if (r.witness) {
        std::cout << "1," << quoted(cs::text::join(r.witness->kernel, ",")) << ','
                  << quoted(cs::text::join(r.witness->petals, ",")) << ",0\n";
      } else {
        std::cout << "0,\"\",\"\"," << (r.absence_proven ? 1 : 0) << '\n';
      }
      return int{kOk};
    };
  });

  // repcount
  std::size_t h = 2;
  auto* repcount = add_command(app, "repcount", "Largest number of h-subsets sharing one sum");
  repcount->set_help_flag("--help", "Print this help message and exit");
  repcount->add_option("--elements", elements_text, "Distinct positive integers")->required();
  repcount->add_option("--h", h, "Subset size")->required();
  repcount->add_option("--limit", limit, "Largest sum considered")->required();
  repcount->callback([&] {
    action = [&] {
      const auto r = cs::rep_count_g(u64_list(elements_text), h, limit);
      std::cout << "h,limit,g,target\n"
                << h << ',' << limit << ',' << r.g << ',' << (r.target ? std::to_string(*r.target) : std::string())
                << '\n';
      return int{kOk};
    };
  });

  // experiment
  std::string experiment_name;
  std::string config_file;
  std::map<std::string, std::string> flag_values;
  auto* experiment = add_command(app, "experiment", "Run a CSV experiment (f2, f1, f4, sieve, verify)");
  experiment->add_option("name", experiment_name, "f2|f1|f4|sieve|verify")->required();
  experiment->add_option("--config", config_file, "key=value file; flags override it");
  struct FlagSpec {
    const char* flag;
    const char* key;
    const char* help;
  };
  const FlagSpec specs[] = {
      {"--grid", "n_grid", "N grid a:b:step or a,b,c"},
      {"--budget", "budget", "Node budget per grid point"},
      {"--seed", "seed", "Random seed"},
      {"--out", "output", "Output CSV path"},
      {"--threads", "threads", "Worker count"},
      {"--restarts", "restarts", "Greedy restarts"},
      {"--r", "r", "r for the r-full scan"},
      {"--primes", "primes", "Prime set"},
      {"--family", "family", "squares or a set descriptor"},
      {"--nu", "nu", "Class-count model"},
      {"--y-grid", "y_grid", "Sieve cutoff grid"},
      {"--tau", "tau", "Density parameter"},
      {"--instances", "instances", "Random instances per verification suite"},
  };
  std::vector<std::pair<CLI::Option*, std::string>> flag_opts;
  for (const auto& spec : specs) {
    flag_opts.emplace_back(experiment->add_option(spec.flag, flag_values[spec.key], spec.help), spec.key);
  }
  bool inject_fault = false;
  experiment->add_flag("--inject-fault", inject_fault, "Corrupt one witness (harness self-test)");
  experiment->callback([&] {
    action = [&] {
      cs::ExperimentConfig cfg;
      cfg.experiment = cs::parse_experiment(experiment_name);
      if (!config_file.empty()) {
        for (const auto& [k, v] : cs::read_config_file(config_file)) {
          if (k != "experiment") cfg.apply(k, v);
        }
      }
      for (const auto& [opt, key] : flag_opts) {
        if (opt->count()) cfg.apply(key, flag_values[key]);
      }
      if (inject_fault) cfg.inject_fault = true;
      cfg.validate();

      std::ofstream file;
      if (!cfg.output_path.empty()) {
        file.open(cfg.output_path);
        if (!file) throw usage_error("cannot write '" + cfg.output_path + "'");
      }
      std::ostream& out = cfg.output_path.empty() ? std::cout : file;
      switch (cfg.experiment) {
        case cs::Experiment::F2Scan:
        case cs::Experiment::F1Scan:
        case cs::Experiment::F4Scan: {
          const auto records = cfg.experiment == cs::Experiment::F2Scan   ? cs::run_f2_scan(cfg)
                               : cfg.experiment == cs::Experiment::F1Scan ? cs::run_f1_scan(cfg)
                                                                          : cs::run_f4_scan(cfg);
          cs::write_dimension_csv(out, records);
          for (const auto& finding : cs::dimension_findings(records)) std::cerr << "finding: " << finding << '\n';
          for (const auto& r : records) {
            if (!r.verified) return int{kCounterexample};
          }
          return int{kOk};
        }
        case cs::Experiment::SieveCompare:
          cs::write_sieve_csv(out, cs::run_sieve_compare(cfg));
          return int{kOk};
        case cs::Experiment::VerifyAll: {
          const auto report = cs::run_verify_all(cfg);
          cs::write_verify_report(out, report);
          return report.counterexamples() ? int{kCounterexample} : int{kOk};
        }
      }
      return int{kOk};
    };
  });

  // verify
  std::string verify_target;
  std::uint64_t instances = 100;
  auto* verify = add_command(app, "verify", "Exhaustive or randomized checks (olson, cover, all)");
  verify->add_option("target", verify_target, "olson|cover|all")->check(CLI::IsMember({"olson", "cover", "all"}));
  verify->add_option("--p", p, "Prime for olson and cover");
  verify->add_option("--seed", seed, "Random seed for all");
  verify->add_option("--instances", instances, "Random instances per suite for all");
  verify->add_flag("--inject-fault", inject_fault, "Corrupt one witness (harness self-test)");
  verify->callback([&] {
    action = [&] {
      if (verify_target.empty()) throw usage_error("verify needs a target: olson, cover or all");
      if (verify_target == "olson") {
        if (p == 0) throw usage_error("verify olson needs --p");
        const auto r = cs::verify_olson_exhaustive(p);
        std::cout << "p,min_size,sets_checked,cases_checked,counterexamples\n"
                  << r.p << ',' << r.min_size << ',' << r.sets_checked << ',' << r.cases_checked << ','
                  << r.counterexamples.size() << '\n';
        return r.counterexamples.empty() ? int{kOk} : int{kCounterexample};
      }
      if (verify_target == "cover") {
        if (p == 0) throw usage_error("verify cover needs --p");
        std::cout << "p,k\n" << p << ',' << cs::minimal_cover_k(p) << '\n';
        return int{kOk};
      }
      cs::ExperimentConfig cfg;
      cfg.experiment = cs::Experiment::VerifyAll;
      cfg.seed = seed;
      cfg.instances = instances;
      cfg.inject_fault = inject_fault;
      const auto report = cs::run_verify_all(cfg);
      cs::write_verify_report(std::cout, report);
      return report.counterexamples() ? int{kCounterexample} : int{kOk};
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  try {
    status = action();
  } catch (const usage_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return status;
}
