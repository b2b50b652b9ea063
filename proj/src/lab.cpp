#include "resist/lab.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace resist {

namespace {

double to_double(const BigInt& x) { return x.convert_to<double>(); }

double ratio(const BigInt& num, const BigInt& den) {
  using Float = boost::multiprecision::cpp_bin_float_50;
  return static_cast<double>(Float(num) / Float(den));
}

BoundValue probability_bound(double v) { return {v, v >= 1.0}; }

}  // namespace

Admissibility is_admissible(const BaseGroup& k, const UnitaryRep& rho) {
  Admissibility a;
  if (k.is_abelian()) a.reasons.push_back("group is abelian");
  if (!k.has_trivial_center()) a.reasons.push_back("group has nontrivial center");
  if (!rho.is_faithful) a.reasons.push_back("representation is not faithful");
  if (rho.dim < 2) a.reasons.push_back("representation has dimension < 2");
  a.admissible = a.reasons.empty();
  return a;
}

KappaResult kappa(const IrrepCatalog& cat, const UnitaryRep& rho) {
  const BaseGroup& k = cat.group();
  const Admissibility adm = is_admissible(k, rho);
  if (!adm.admissible) {
    std::string msg = rho.name + " is not admissible:";
    for (const auto& r : adm.reasons) msg += " " + r + ";";
    throw NotAdmissible(msg);
  }

  const double d = static_cast<double>(rho.dim);
  double ratio_max = 0.0;
  for (std::size_t h = 1; h < k.order(); ++h) ratio_max = std::max(ratio_max, std::abs(rho.character[h]) / d);
  if (ratio_max >= 1.0) throw NotAdmissible(rho.name + ": |chi(h)| reaches d for some h != 1");

  KappaResult out;
  const double target = 1.0 / static_cast<double>(k.order() - 1);
  out.analytic_cutoff = 1;
  while (std::pow(ratio_max, static_cast<double>(out.analytic_cutoff)) >= target) ++out.analytic_cutoff;

  const std::size_t last = std::max<std::size_t>(out.analytic_cutoff, 2);
  std::size_t last_zero = 0;
  for (std::size_t power = 1; power <= last; ++power) {
    Complex sum = 0;
    for (const auto& cls : k.classes())
      sum += static_cast<double>(cls.size()) * std::pow(rho.character[cls.front()], static_cast<double>(power));
    sum /= static_cast<double>(k.order());
    out.checked_values.push_back(sum.real());
    if (round_multiplicity(sum) == 0) last_zero = power;
  }
  out.kappa = std::max<std::size_t>(2, last_zero + 1);
  return out;
}

double xh_value(const IrrepCatalog& cat, const PlancherelIndex& rho, const SubgroupEnum& h) {
  return ratio(restricted_trivial_multiplicity(cat, rho, h), dimension(cat, rho));
}

MomentReport plancherel_moments(const IrrepCatalog& cat, std::size_t n, const SubgroupEnum& h) {
  if (h.n() != n) throw std::invalid_argument("plancherel_moments: subgroup length mismatch");
  const BaseGroup& k = cat.group();
  std::size_t tuples = 1;
  for (std::size_t j = 0; j < n; ++j) {
    tuples *= cat.size();
    if (tuples > kMomentEnumerationCap) throw std::invalid_argument("plancherel_moments: too many irrep tuples");
  }

  MomentReport r;
  r.subgroup_order = h.size();
  const double group_order = std::pow(static_cast<double>(k.order()), static_cast<double>(n));
  PlancherelIndex rho{std::vector<std::size_t>(n, 0)};
  double second = 0.0;
  for (std::size_t code = 0; code < tuples; ++code) {
    std::size_t c = code;
    double dim = 1.0;
    for (std::size_t j = n; j-- > 0;) {
      rho.indices[j] = c % cat.size();
      c /= cat.size();
      dim *= static_cast<double>(cat[rho.indices[j]].dim);
    }
    const double weight = dim * dim / group_order;
    const BigInt mult = restricted_trivial_multiplicity(cat, rho, h);
    const double x = to_double(mult) / dim;
    r.mean_exact += weight * x;
    second += weight * x * x;
    if (mult == 0) r.prob_xh_zero_exact += weight;
  }
  r.variance_exact = second - r.mean_exact * r.mean_exact;

  // |h^G ∩ H| counts elements of H whose coordinates lie in the same K-classes
  // as h; coordinates sharing a pattern class share their value.
  std::map<std::vector<std::size_t>, std::size_t> signature_count;
  std::vector<std::vector<std::size_t>> signatures(h.size(), std::vector<std::size_t>(h.ell()));
  for (std::size_t i = 0; i < h.size(); ++i) {
    for (std::size_t c = 0; c < h.ell(); ++c) signatures[i][c] = k.class_of(h.value(i, c));
    ++signature_count[signatures[i]];
  }
  std::vector<std::size_t> class_sizes(h.ell(), 0);
  for (auto c : h.class_of()) ++class_sizes[c];

  const double order = static_cast<double>(h.size());
  double var_sum = 0.0, cheb_sum = 0.0;
  for (std::size_t i = 1; i < h.size(); ++i) {
    BigInt conj = 1;
    for (std::size_t c = 0; c < h.ell(); ++c)
      conj *= boost::multiprecision::pow(BigInt(k.class_size(h.value(i, c))), static_cast<unsigned>(class_sizes[c]));
    var_sum += ratio(BigInt(signature_count[signatures[i]]), conj);
    cheb_sum += ratio(BigInt(1), conj);
  }
  r.mean_formula = 1.0 / order;
  r.variance_formula = var_sum / (order * order);
  r.chebyshev_bound = order * cheb_sum;
  return r;
}

Lemma2Bounds bound_lemma2(std::size_t n, std::size_t t, std::size_t k_order, std::size_t ell) {
  const double nn = static_cast<double>(n);
  const double kt = std::pow(static_cast<double>(k_order), static_cast<double>(t));
  Lemma2Bounds b;
  b.part1 = probability_bound(4.0 * kt * kt / nn);
  b.part2 = probability_bound(std::exp(static_cast<double>(ell) * std::log(nn) + std::log(kt) - nn / kt));
  return b;
}

BoundValue bound_theorem1(std::size_t n, std::size_t t, std::size_t k_order, std::size_t kappa) {
  const double nn = static_cast<double>(n);
  const double kt = std::pow(static_cast<double>(k_order), static_cast<double>(t));
  const double v = 1.0 - std::exp(static_cast<double>(kappa) * std::log(nn) + std::log(kt) - nn / kt);
  return {v, v <= 0.0};
}

Theorem2Bounds bound_theorem2(std::size_t n, std::size_t t, std::size_t k_order, double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("bound_theorem2: alpha must be positive");
  const double nn = static_cast<double>(n);
  const double root = std::sqrt(nn);
  const double kt = std::pow(static_cast<double>(k_order), static_cast<double>(t));
  const double log_k = std::log2(static_cast<double>(k_order));

  Theorem2Bounds b;
  b.in_regime = 2.0 * kt <= alpha * root;
  b.mass_in_regime = 4.0 * kt * std::sqrt(log_k) <= root;
  // (2^{-1/alpha} |K|^alpha)^{sqrt n} evaluated in log space.
  const double log_base = -std::log(2.0) / alpha + alpha * std::log(static_cast<double>(k_order));
  b.bound = probability_bound(2.0 * alpha / root + std::exp(root * log_base));
  const double mass = 1.0 - std::sqrt(2.0) / std::pow(nn * log_k, 0.25);
  b.mass = {mass, mass <= 0.0};
  b.guarantee = b.mass;
  return b;
}

double default_alpha(std::size_t k_order) { return 1.0 / (2.0 * std::sqrt(std::log2(static_cast<double>(k_order)))); }

BoundReport bound_report(std::size_t n, std::size_t t, std::size_t k_order, std::optional<std::size_t> kappa,
                         double alpha, std::size_t ell) {
  BoundReport r;
  const Lemma2Bounds l2 = bound_lemma2(n, t, k_order, ell);
  r.lemma2_part1 = l2.part1;
  r.lemma2_part2 = l2.part2;
  r.lemma2_ell = ell;
  if (kappa) r.theorem1_bound = bound_theorem1(n, t, k_order, *kappa);
  r.theorem2 = bound_theorem2(n, t, k_order, alpha);
  r.alpha = alpha;
  return r;
}

namespace {

nlohmann::json bound_json(const BoundValue& b) { return {{"value", b.value}, {"vacuous", b.vacuous}}; }

}  // namespace

void to_json(nlohmann::json& j, const KappaResult& r) {
  j = {{"kappa", r.kappa}, {"analytic_cutoff", r.analytic_cutoff}, {"checked_values", r.checked_values}};
}

void to_json(nlohmann::json& j, const MomentReport& r) {
  j = {{"subgroup_order", r.subgroup_order},
       {"mean_exact", r.mean_exact},
       {"variance_exact", r.variance_exact},
       {"mean_formula", r.mean_formula},
       {"variance_formula", r.variance_formula},
       {"chebyshev_bound", r.chebyshev_bound},
       {"prob_xh_zero_exact", r.prob_xh_zero_exact}};
}

void to_json(nlohmann::json& j, const BoundReport& r) {
  j = {{"lemma2_part1", bound_json(r.lemma2_part1)},
       {"lemma2_part2", bound_json(r.lemma2_part2)},
       {"lemma2_ell", r.lemma2_ell},
       {"theorem1_bound", r.theorem1_bound ? bound_json(*r.theorem1_bound) : nlohmann::json(nullptr)},
       {"theorem2_bound", bound_json(r.theorem2.bound)},
       {"theorem2_mass", bound_json(r.theorem2.mass)},
       {"theorem2_guarantee", bound_json(r.theorem2.guarantee)},
       {"theorem2_in_regime", r.theorem2.in_regime},
       {"theorem2_mass_in_regime", r.theorem2.mass_in_regime},
       {"alpha", r.alpha}};
}

}  // namespace resist
