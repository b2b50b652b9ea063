#pragma once

// Experiment configuration: flat key=value files with command-line
// overrides.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace resist {

/// Malformed or incomplete configuration; the CLI maps it to exit code 1.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Experiment { resist, moments, tails, cayley, kappa, catalog };

std::string to_string(Experiment e);
Experiment parse_experiment(std::string_view name);

struct ExperimentConfig {
  Experiment experiment = Experiment::catalog;
  std::string group;  // base-group id, without the ^n suffix
  std::optional<std::size_t> n;
  std::optional<std::size_t> t;
  std::optional<std::size_t> trials;
  std::string rho;  // "fixed:<idx>", "<group>:<idx>" or "plancherel"
  std::string method = "auto";
  std::uint64_t seed = 0;
  std::optional<double> alpha;
  std::string output;
  std::size_t ell = 2;         // tails: threshold for Pr[d < ell]
  std::size_t cap = 200000;    // closure cap
  bool timing = false;         // fill runtime_ms (breaks byte-identical output)
};

/// Raw key/value pairs. Keys outside the known set are rejected.
using ConfigValues = std::map<std::string, std::string>;

/// Parses "key = value" lines; '#' starts a comment.
ConfigValues parse_config_text(std::string_view text);
ConfigValues read_config_file(const std::string& path);

/// Builds a validated config for `experiment` from file values overridden
/// by flag values. Throws UsageError on unknown keys, bad values or missing
/// required fields.
ExperimentConfig parse_config(Experiment experiment, const ConfigValues& file_values,
                              const ConfigValues& flag_values);

}  // namespace resist
