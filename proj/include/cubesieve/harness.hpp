#pragma once

// Experiment orchestration: dimension-vs-N scans, sieve-vs-truth
// comparisons and the aggregated verification suite. Every experiment is a
// pure function of its configuration; rows come out in grid order whatever
// the worker count, so a fixed seed gives byte-identical CSV.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "cubesieve/arithsets.hpp"
#include "cubesieve/sieve.hpp"

namespace cubesieve {

enum class Experiment { F2Scan, F1Scan, F4Scan, SieveCompare, VerifyAll };

Experiment parse_experiment(const std::string& name);
std::string to_string(Experiment e);

struct ExperimentConfig {
  Experiment experiment = Experiment::F2Scan;
  std::vector<std::uint64_t> n_grid;
  std::uint64_t budget = 100'000'000;
  std::uint64_t seed = 1;
  std::string output_path;  // empty: stdout
  unsigned threads = 1;
  unsigned greedy_restarts = 64;

  // f1 / f4 scans
  unsigned r = 2;
  std::string primes = "all";

  // sieve comparison
  std::string family = "squares";  // or a set descriptor
  NuModel nu_model = NuModel::Measured;
  std::vector<std::uint64_t> y_grid;  // empty: powers of two up to 2 * prescribed y
  double tau = 1.0;

  // verification suite
  std::uint64_t instances = 100;
  bool inject_fault = false;

  /// Applies one key=value setting; throws std::invalid_argument for unknown
  /// keys or malformed values.
  void apply(const std::string& key, const std::string& value);
  /// Throws std::invalid_argument for an empty or non-ascending N grid.
  void validate() const;
};

/// key=value lines, '#' comments, blank lines ignored.
std::map<std::string, std::string> read_config_file(const std::string& path);

/// Parses "a:b:step" (arithmetic) or "a,b,c" (explicit list).
std::vector<std::uint64_t> parse_grid(const std::string& text);

struct DimensionRecord {
  std::uint64_t n = 0;
  int dimension = -1;
  std::string mode;  // exact | greedy
  bool exact = false;
  std::string witness;
  double log_n = 0.0;
  double ratio_log = 0.0;       // d / log N
  double ratio_sqrt_log = 0.0;  // d / sqrt(log N)
  std::uint64_t nodes = 0;
  bool verified = false;  // re-checked through cube::verify after the scan
};

/// Dimension scan over the N grid for an arbitrary set: exact search within
/// the budget, falling back to the better of the partial exact result and a
/// seeded greedy run.
std::vector<DimensionRecord> run_dimension_scan(const SetDescriptor& set, const ExperimentConfig& config);
/// Squareful numbers.
std::vector<DimensionRecord> run_f2_scan(const ExperimentConfig& config);
/// r-full numbers relative to config.primes.
std::vector<DimensionRecord> run_f1_scan(const ExperimentConfig& config);
/// Semigroup generated by config.primes.
std::vector<DimensionRecord> run_f4_scan(const ExperimentConfig& config);

void write_dimension_csv(std::ostream& os, const std::vector<DimensionRecord>& records);

/// Rows whose d / log N exceeds `max_ratio` or whose d drops below an
/// earlier row, as human-readable findings that include the witness.
std::vector<std::string> dimension_findings(const std::vector<DimensionRecord>& records, double max_ratio = 5.0);

struct SieveCompareRecord {
  std::uint64_t n = 0;
  std::uint64_t truth = 0;
  std::string nu_model;
  std::uint64_t y_paper = 0;
  SieveBoundReport at_paper_y;
  std::uint64_t y_best = 0;
  SieveBoundReport at_best_y;
};

std::vector<SieveCompareRecord> run_sieve_compare(const ExperimentConfig& config);
void write_sieve_csv(std::ostream& os, const std::vector<SieveCompareRecord>& records);

struct SuiteResult {
  std::string name;
  std::uint64_t cases = 0;
  std::vector<std::string> counterexamples;
};

struct VerifyReport {
  std::vector<SuiteResult> suites;
  std::size_t counterexamples() const;
};

/// Runs every module's verification suite at its caps.
VerifyReport run_verify_all(const ExperimentConfig& config);
void write_verify_report(std::ostream& os, const VerifyReport& report);

/// Formats a real with six decimals, the fixed precision of every CSV.
std::string fixed6(double value);

}  // namespace cubesieve
