#pragma once

// kappa_rho, the restriction statistic X_H with its exact Plancherel
// moments, and closed-form evaluators for the tail and resistance bounds.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "resist/group.hpp"
#include "resist/pattern.hpp"
#include "resist/repr.hpp"

namespace resist {

class NotAdmissible : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Admissibility {
  bool admissible = false;
  std::vector<std::string> reasons;  // one entry per failed condition
};

/// K nonabelian with trivial center, rho faithful with d_rho >= 2.
Admissibility is_admissible(const BaseGroup& k, const UnitaryRep& rho);

struct KappaResult {
  std::size_t kappa = 0;
  /// Smallest k with |chi(h)/d|^k < 1/(|K|-1) for every h != 1.
  std::size_t analytic_cutoff = 0;
  /// <chi^k, 1>_K for k = 1 .. max(analytic_cutoff, 2).
  std::vector<double> checked_values;
};

/// Least kappa >= 2 such that rho^{(x)k} contains the trivial representation
/// for every k >= kappa. Throws NotAdmissible.
KappaResult kappa(const IrrepCatalog& cat, const UnitaryRep& rho);

/// Fraction of rho's dimension fixed by H.
double xh_value(const IrrepCatalog& cat, const PlancherelIndex& rho, const SubgroupEnum& h);

struct MomentReport {
  std::size_t subgroup_order = 0;
  double mean_exact = 0;
  double variance_exact = 0;
  double mean_formula = 0;
  double variance_formula = 0;
  /// |H| sum_{h != 1} 1/|h^G|; may exceed 1.
  double chebyshev_bound = 0;
  /// Plancherel mass of the irreps with X_H = 0, by enumeration.
  double prob_xh_zero_exact = 0;
};

inline constexpr std::size_t kMomentEnumerationCap = 100000;

/// Exact first and second moments of X_H under the Plancherel measure on
/// K^n, by enumeration over all irrep tuples, next to the conjugacy-class
/// formulas. Throws std::invalid_argument past kMomentEnumerationCap tuples.
MomentReport plancherel_moments(const IrrepCatalog& cat, std::size_t n, const SubgroupEnum& h);

struct BoundValue {
  double value = 0;
  bool vacuous = false;
};

struct Lemma2Bounds {
  /// Pr[d <= n / (2|K|^t)] <= 4|K|^{2t}/n
  BoundValue part1;
  /// Pr[d < ell] <= n^ell |K|^t exp(-n/|K|^t)
  BoundValue part2;
};

Lemma2Bounds bound_lemma2(std::size_t n, std::size_t t, std::size_t k_order, std::size_t ell);

/// 1 - n^kappa |K|^t exp(-n/|K|^t); vacuous when <= 0.
BoundValue bound_theorem1(std::size_t n, std::size_t t, std::size_t k_order, std::size_t kappa);

struct Theorem2Bounds {
  /// 2 alpha / sqrt(n) + (2^{-1/alpha} |K|^alpha)^{sqrt(n)}
  BoundValue bound;
  /// 1 - sqrt(2) / (n log2|K|)^{1/4}, both for the Plancherel mass and the
  /// per-representation guarantee.
  BoundValue mass;
  BoundValue guarantee;
  bool in_regime = false;       // 2|K|^t <= alpha sqrt(n)
  bool mass_in_regime = false;  // 4|K|^t sqrt(log2|K|) <= sqrt(n)
};

/// Throws std::invalid_argument for alpha <= 0.
Theorem2Bounds bound_theorem2(std::size_t n, std::size_t t, std::size_t k_order, double alpha);

/// alpha = 1 / (2 sqrt(log2 |K|)).
double default_alpha(std::size_t k_order);

struct BoundReport {
  BoundValue lemma2_part1;
  BoundValue lemma2_part2;
  std::size_t lemma2_ell = 0;
  std::optional<BoundValue> theorem1_bound;
  Theorem2Bounds theorem2;
  double alpha = 0;
};

BoundReport bound_report(std::size_t n, std::size_t t, std::size_t k_order, std::optional<std::size_t> kappa,
                         double alpha, std::size_t ell);

void to_json(nlohmann::json& j, const KappaResult& r);
void to_json(nlohmann::json& j, const MomentReport& r);
void to_json(nlohmann::json& j, const BoundReport& r);

}  // namespace resist
