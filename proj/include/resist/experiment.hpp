#pragma once

// Seeded Monte Carlo drivers. Each run returns its CSV rows and a JSON
// summary; nothing here touches the filesystem except emit().

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"
#include "resist/config.hpp"

namespace resist {

/// Per-trial seed: splitmix64(seed + 0x9E3779B97F4A7C15 * (trial + 1)).
/// Trials can be replayed individually and in any order.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t trial);

struct TrialRecord {
  std::size_t trial_index = 0;
  std::uint64_t derived_seed = 0;
  std::size_t d_min = 0;
  std::size_t ell = 0;
  std::optional<std::size_t> closure_size;  // empty when the cap was hit
  bool certificate = false;
  std::optional<double> xh;
  std::optional<double> norm_value;
  bool norm_is_one = false;
  std::optional<double> runtime_ms;
};

/// Header plus one row per record, in the TrialRecord field order.
std::string trial_records_csv(const std::vector<TrialRecord>& records);

struct RunResult {
  std::string csv;
  nlohmann::json summary;
  /// Invariant violations; nonempty maps to exit code 2.
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

/// 95% normal-approximation halfwidth for a fraction p over `count` trials.
double confidence_halfwidth(double p, std::size_t count);

/// Pr[d < ell] for n coordinates assigned uniformly to `patterns` level
/// sets, where d is the smallest nonempty level-set size.
double exact_dmin_below(std::size_t n, std::size_t patterns, std::size_t ell);

RunResult run_resistance_trials(const ExperimentConfig& cfg);
RunResult run_moment_audit(const ExperimentConfig& cfg);
RunResult run_tail_audit(const ExperimentConfig& cfg);
RunResult run_cayley_scan(const ExperimentConfig& cfg);
RunResult run_kappa(const ExperimentConfig& cfg);
RunResult run_catalog(const ExperimentConfig& cfg);

RunResult run_experiment(const ExperimentConfig& cfg);

/// Path of the JSON summary written next to a CSV output path.
std::string summary_path(const std::string& output);

/// Writes the CSV (if any) to cfg.output and the summary next to it. Does
/// nothing when cfg.output is empty.
void emit(const RunResult& result, const ExperimentConfig& cfg);

}  // namespace resist
