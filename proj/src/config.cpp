#include "resist/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

#include "resist/group.hpp"

namespace resist {

namespace {

constexpr std::array kKnownKeys = {"experiment", "group", "n",  "t",   "trials", "rho",   "method",
                                   "seed",       "alpha", "output", "ell", "cap",    "timing"};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (value.empty() || ec != std::errc() || ptr != value.data() + value.size())
    throw UsageError("invalid value for '" + key + "': '" + value + "'");
  return out;
}

double parse_double(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double out = 0;
  try {
    out = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (value.empty() || used != value.size()) throw UsageError("invalid value for '" + key + "': '" + value + "'");
  return out;
}

std::size_t parse_positive(const std::string& key, const std::string& value) {
  const auto v = parse_number<std::size_t>(key, value);
  if (v == 0) throw UsageError("'" + key + "' must be positive");
  return v;
}

}  // namespace

std::string to_string(Experiment e) {
  switch (e) {
    case Experiment::resist: return "resist";
    case Experiment::moments: return "moments";
    case Experiment::tails: return "tails";
    case Experiment::cayley: return "cayley";
    case Experiment::kappa: return "kappa";
    case Experiment::catalog: return "catalog";
  }
  return "unknown";
}

Experiment parse_experiment(std::string_view name) {
  for (auto e : {Experiment::resist, Experiment::moments, Experiment::tails, Experiment::cayley, Experiment::kappa,
                 Experiment::catalog})
    if (to_string(e) == name) return e;
  throw UsageError("unknown experiment '" + std::string(name) + "'");
}

ConfigValues parse_config_text(std::string_view text) {
  ConfigValues out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw UsageError("config line " + std::to_string(line_no) + ": expected key=value");
    const std::string key(trim(line.substr(0, eq)));
    if (key.empty()) throw UsageError("config line " + std::to_string(line_no) + ": empty key");
    if (out.count(key)) throw UsageError("config line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    out[key] = std::string(trim(line.substr(eq + 1)));
  }
  return out;
}

ConfigValues read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

ExperimentConfig parse_config(Experiment experiment, const ConfigValues& file_values,
                              const ConfigValues& flag_values) {
  ConfigValues merged = file_values;
  for (const auto& [k, v] : flag_values) merged[k] = v;
  for (const auto& [k, v] : merged)
    if (std::find(kKnownKeys.begin(), kKnownKeys.end(), k) == kKnownKeys.end())
      throw UsageError("unknown config key '" + k + "'");

  ExperimentConfig cfg;
  cfg.experiment = experiment;
  if (auto it = merged.find("experiment"); it != merged.end() && parse_experiment(it->second) != experiment)
    throw UsageError("config is for experiment '" + it->second + "', not '" + to_string(experiment) + "'");

  if (auto it = merged.find("group"); it != merged.end()) {
    try {
      const ProductGroupSpec spec = parse_product_group(it->second);
      build_base_group(spec.base);  // reject unknown identifiers early
      cfg.group = spec.base;
      cfg.n = spec.n;
    } catch (const GroupError& e) {
      throw UsageError(e.what());
    }
  }
  if (auto it = merged.find("n"); it != merged.end()) {
    const std::size_t n = parse_positive("n", it->second);
    if (cfg.n && *cfg.n != n) throw UsageError("group power and 'n' disagree");
    cfg.n = n;
  }
  if (auto it = merged.find("t"); it != merged.end()) cfg.t = parse_positive("t", it->second);
  if (auto it = merged.find("trials"); it != merged.end()) cfg.trials = parse_positive("trials", it->second);
  if (auto it = merged.find("rho"); it != merged.end()) cfg.rho = it->second;
  if (auto it = merged.find("method"); it != merged.end()) cfg.method = it->second;
  if (auto it = merged.find("seed"); it != merged.end()) cfg.seed = parse_number<std::uint64_t>("seed", it->second);
  if (auto it = merged.find("alpha"); it != merged.end()) {
    cfg.alpha = parse_double("alpha", it->second);
    if (!(*cfg.alpha > 0)) throw UsageError("'alpha' must be positive");
  }
  if (auto it = merged.find("output"); it != merged.end()) cfg.output = it->second;
  if (auto it = merged.find("ell"); it != merged.end()) cfg.ell = parse_positive("ell", it->second);
  if (auto it = merged.find("cap"); it != merged.end()) cfg.cap = parse_positive("cap", it->second);
  if (auto it = merged.find("timing"); it != merged.end()) {
    if (it->second != "true" && it->second != "false") throw UsageError("'timing' must be true or false");
    cfg.timing = it->second == "true";
  }

  auto require = [&](bool present, const char* key) {
    if (!present) throw UsageError("missing required field '" + std::string(key) + "' for " + to_string(experiment));
  };
  require(!cfg.group.empty(), "group");
  switch (experiment) {
    case Experiment::catalog: break;
    case Experiment::kappa: require(!cfg.rho.empty(), "rho"); break;
    case Experiment::resist: require(!cfg.rho.empty(), "rho"); [[fallthrough]];
    case Experiment::moments:
    case Experiment::tails:
    case Experiment::cayley:
      require(cfg.n.has_value(), "n");
      require(cfg.t.has_value(), "t");
      require(cfg.trials.has_value(), "trials");
      break;
  }

  const bool cayley = experiment == Experiment::cayley;
  const std::array<std::string_view, 4> norm_methods = {"cert", "power", "dense", "auto"};
  const std::array<std::string_view, 3> cayley_methods = {"dense", "irrep", "auto"};
  const bool ok = cayley ? std::find(cayley_methods.begin(), cayley_methods.end(), cfg.method) != cayley_methods.end()
                         : std::find(norm_methods.begin(), norm_methods.end(), cfg.method) != norm_methods.end();
  if (!ok) throw UsageError("invalid method '" + cfg.method + "'");
  return cfg;
}

}  // namespace resist
