// Command-line driver for the resistance experiments.
//
//   resist <catalog|kappa|resist|moments|tails|cayley> [--config file] [flags]
//
// Exit codes: 0 success, 1 usage error, 2 invariant violated.

#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "resist/config.hpp"
#include "resist/experiment.hpp"
#include "resist/group.hpp"
#include "resist/lab.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Group representations that resist random sampling: experiments on K^n"};
  app.require_subcommand(1);

  const std::vector<std::pair<std::string, std::string>> subcommands = {
      {"catalog", "Print the irreducible representations of a base group as JSON"},
      {"kappa", "Compute kappa for an admissible irrep"},
      {"resist", "Monte Carlo trials of the averaged-operator norm"},
      {"moments", "Audit exact Plancherel moments of X_H"},
      {"tails", "Audit the tail bounds on the pattern statistic d"},
      {"cayley", "Scan Cayley-graph second eigenvalues over t"}};

  std::map<std::string, std::string> flag_storage;
  std::string config_path;
  const std::vector<std::string> keys = {"group", "n",    "t",      "trials", "rho", "method",
                                         "seed",  "alpha", "output", "ell",    "cap", "timing"};
  for (const auto& [name, help] : subcommands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "key=value config file; flags override it");
    for (const auto& key : keys) sub->add_option("--" + key, flag_storage[key]);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    const CLI::App* sub = app.get_subcommands().front();
    resist::ConfigValues flags;
    for (const auto& key : keys)
      if (sub->count("--" + key) > 0) flags[key] = flag_storage[key];
    const resist::ConfigValues file = config_path.empty() ? resist::ConfigValues{} : resist::read_config_file(config_path);
    const resist::ExperimentConfig cfg = resist::parse_config(resist::parse_experiment(sub->get_name()), file, flags);

    const resist::RunResult result = resist::run_experiment(cfg);
    resist::emit(result, cfg);
    std::cout << result.summary.dump(2) << '\n';
    if (!result.ok()) {
      for (const auto& v : result.violations) std::cerr << "invariant violated: " << v << '\n';
      return 2;
    }
    return 0;
  } catch (const resist::UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const resist::GroupError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const resist::NotAdmissible& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
