#include "resist/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "resist/group.hpp"
#include "resist/lab.hpp"
#include "resist/norm.hpp"
#include "resist/pattern.hpp"
#include "resist/repr.hpp"

namespace resist {

namespace {

using nlohmann::json;

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <typename T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

const UnitaryRep& parse_fixed_rho(const IrrepCatalog& cat, const std::string& rho) {
  std::string_view name = rho;
  if (name.starts_with("fixed:")) name.remove_prefix(6);
  try {
    return cat.find(name);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::vector<ProductElement> draw_generators(const BaseGroup& k, std::size_t n, std::size_t t,
                                            std::mt19937_64& rng) {
  std::vector<ProductElement> gens;
  gens.reserve(t);
  for (std::size_t m = 0; m < t; ++m) gens.push_back(uniform_product_element(k, n, rng));
  return gens;
}

json base_summary(const ExperimentConfig& cfg) {
  return {{"experiment", to_string(cfg.experiment)},
          {"group", cfg.group},
          {"n", optional_json(cfg.n)},
          {"t", optional_json(cfg.t)},
          {"trials", optional_json(cfg.trials)},
          {"seed", cfg.seed}};
}

std::size_t checked_power(std::size_t base, std::size_t exp, std::size_t cap) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (out > cap / std::max<std::size_t>(base, 1)) return cap + 1;
    out *= base;
  }
  return out;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t trial) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (trial + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::string trial_records_csv(const std::vector<TrialRecord>& records) {
  std::ostringstream out;
  out << "trial_index,derived_seed,d_min,ell,closure_size_or_cap,certificate,xh,norm_value,norm_is_one,runtime_ms\n";
  for (const auto& r : records) {
    out << r.trial_index << ',' << r.derived_seed << ',' << r.d_min << ',' << r.ell << ',';
    if (r.closure_size) out << *r.closure_size;
    else out << "cap";
    out << ',' << (r.certificate ? "true" : "false") << ',';
    if (r.xh) out << format_double(*r.xh);
    out << ',';
    if (r.norm_value) out << format_double(*r.norm_value);
    out << ',' << (r.norm_is_one ? "true" : "false") << ',';
    if (r.runtime_ms) out << format_double(*r.runtime_ms);
    out << '\n';
  }
  return out.str();
}

double confidence_halfwidth(double p, std::size_t count) {
  if (count == 0) return 0.0;
  return 1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(count));
}

double exact_dmin_below(std::size_t n, std::size_t patterns, std::size_t ell) {
  if (patterns == 0) throw std::invalid_argument("exact_dmin_below: no patterns");
  if (ell <= 1) return 0.0;
  if (static_cast<double>(patterns) * static_cast<double>(n) * static_cast<double>(n) > 2e9)
    throw std::invalid_argument("exact_dmin_below: instance too large");

  // f[c] = Pr[c coordinates spread over j patterns leave every pattern with
  // count 0 or >= ell], built up one pattern at a time.
  auto allowed = [&](std::size_t k) { return k == 0 || k >= ell; };
  std::vector<double> f(n + 1, 0.0), g(n + 1);
  for (std::size_t c = 0; c <= n; ++c) f[c] = allowed(c) ? 1.0 : 0.0;
  std::vector<double> lfact(n + 1, 0.0);
  for (std::size_t c = 1; c <= n; ++c) lfact[c] = lfact[c - 1] + std::log(static_cast<double>(c));

  for (std::size_t j = 2; j <= patterns; ++j) {
    const double lp = std::log(1.0 / static_cast<double>(j));
    const double lq = std::log1p(-1.0 / static_cast<double>(j));
    for (std::size_t c = 0; c <= n; ++c) {
      double sum = 0.0;
      for (std::size_t k = 0; k <= c; ++k) {
        if (!allowed(k) || f[c - k] == 0.0) continue;
        const double lw = lfact[c] - lfact[k] - lfact[c - k] + static_cast<double>(k) * lp +
                          static_cast<double>(c - k) * lq;
        sum += std::exp(lw) * f[c - k];
      }
      g[c] = sum;
    }
    f.swap(g);
  }
  return std::clamp(1.0 - f[n], 0.0, 1.0);
}

RunResult run_resistance_trials(const ExperimentConfig& cfg) {
  const BaseGroup k = build_base_group(cfg.group);
  const IrrepCatalog cat(k);
  const std::size_t n = *cfg.n, t = *cfg.t, trials = *cfg.trials;
  const bool plancherel = cfg.rho == "plancherel";

  std::optional<std::size_t> fixed_rep;
  std::optional<std::size_t> kap;
  if (!plancherel) {
    const UnitaryRep& rep = parse_fixed_rho(cat, cfg.rho);
    fixed_rep = rep.index;
    kap = kappa(cat, rep).kappa;
  }

  RunResult result;
  std::vector<TrialRecord> records;
  std::size_t norm_one = 0, d_ge_kappa = 0, certified = 0, xh_known = 0, xh_zero_known = 0, xh_zero_bound = 0,
              numeric = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    const auto start = std::chrono::steady_clock::now();
    TrialRecord rec;
    rec.trial_index = i;
    rec.derived_seed = derive_seed(cfg.seed, i);
    std::mt19937_64 rng(rec.derived_seed);
    const auto gens = draw_generators(k, n, t, rng);
    const PlancherelIndex rho = plancherel ? plancherel_sample(cat, n, rng) : uniform_index_tuple(*fixed_rep, n);

    const PatternPartition part = pattern_partition(gens);
    rec.d_min = part.d_min;
    rec.ell = part.ell;
    const bool kappa_cert = kap && part.d_min >= *kap;
    d_ge_kappa += kappa_cert;

    std::optional<SubgroupEnum> h;
    if (cfg.method != "cert") h = subgroup_closure(k, gens, cfg.cap);
    if (h) {
      rec.closure_size = h->size();
      try {
        rec.xh = xh_value(cat, rho, *h);
      } catch (const ResidueTooLarge&) {
        // Leave X_H empty; the floating-point path lost integrality.
      }
    }
    rec.certificate = kappa_cert || htilde_certificate(part, cat, rho) || (rec.xh && *rec.xh > 0.0);

    const std::size_t dim_cap = cfg.method == "dense" ? kDenseDimCap : kPowerDimCap;
    if (cfg.method != "cert") {
      const AveragedOperator op(cat, rho, gens);
      if (op.dim() <= dim_cap) {
        const NormEstimate est = cfg.method == "dense" ? average_norm_dense(op) : average_norm_power(op);
        rec.norm_value = est.value;
        ++numeric;
        if (rec.certificate && !est.is_one)
          result.violations.push_back("trial " + std::to_string(i) + ": certificate holds but norm is " +
                                      format_double(est.value));
        if (t == 1 && !est.is_one)
          result.violations.push_back("trial " + std::to_string(i) + ": single unitary has norm " +
                                      format_double(est.value));
      }
    }
    // A single unitary always has norm one.
    rec.norm_is_one = rec.certificate || t == 1 || (rec.norm_value && *rec.norm_value > 1.0 - kIsOneThreshold);

    norm_one += rec.norm_is_one;
    certified += rec.certificate;
    if (rec.xh) {
      ++xh_known;
      xh_zero_known += *rec.xh == 0.0;
    }
    // Unknown X_H without a certificate counts as zero.
    xh_zero_bound += rec.xh ? *rec.xh == 0.0 : !rec.certificate;
    if (cfg.timing)
      rec.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    records.push_back(std::move(rec));
  }

  const double total = static_cast<double>(trials);
  const double f_one = norm_one / total, f_cert = certified / total, f_zero = xh_zero_bound / total;
  json s = base_summary(cfg);
  s["rho"] = cfg.rho;
  s["method"] = cfg.method;
  s["kappa"] = optional_json(kap);
  s["fraction_norm_one"] = f_one;
  s["fraction_d_ge_kappa"] = kap ? json(d_ge_kappa / total) : json(nullptr);
  s["fraction_certificate"] = f_cert;
  s["fraction_xh_zero"] = f_zero;
  s["fraction_xh_zero_among_computed"] = xh_known ? json(xh_zero_known / static_cast<double>(xh_known)) : json(nullptr);
  s["xh_computed_trials"] = xh_known;
  s["numeric_norm_trials"] = numeric;
  s["confidence_halfwidth"] = {{"fraction_norm_one", confidence_halfwidth(f_one, trials)},
                               {"fraction_d_ge_kappa", kap ? json(confidence_halfwidth(d_ge_kappa / total, trials))
                                                           : json(nullptr)},
                               {"fraction_certificate", confidence_halfwidth(f_cert, trials)},
                               {"fraction_xh_zero", confidence_halfwidth(f_zero, trials)}};
  const double alpha = cfg.alpha.value_or(default_alpha(k.order()));
  const BoundReport bounds = bound_report(n, t, k.order(), kap, alpha, kap.value_or(cfg.ell));
  s["paper_bound_values"] = bounds;
  s["theorem2_check"] = {{"pr_xh_zero_estimate", f_zero},
                         {"bound", bounds.theorem2.bound.value},
                         {"bound_vacuous", bounds.theorem2.bound.vacuous},
                         {"holds", bounds.theorem2.bound.vacuous || f_zero <= bounds.theorem2.bound.value}};
  if (kap && d_ge_kappa > norm_one) result.violations.push_back("fraction_norm_one < fraction_d_ge_kappa");
  s["violations"] = result.violations;

  result.csv = trial_records_csv(records);
  result.summary = std::move(s);
  return result;
}

RunResult run_moment_audit(const ExperimentConfig& cfg) {
  const BaseGroup k = build_base_group(cfg.group);
  const IrrepCatalog cat(k);
  const std::size_t n = *cfg.n, t = *cfg.t, trials = *cfg.trials;
  if (checked_power(cat.size(), n, kMomentEnumerationCap) > kMomentEnumerationCap)
    throw UsageError("moments: |irreps|^n exceeds the enumeration cap");

  RunResult result;
  std::ostringstream csv;
  csv << "trial_index,derived_seed,t,closure_size,mean_exact,mean_formula,variance_exact,variance_formula,"
         "prob_xh_zero_exact,chebyshev_bound\n";
  std::size_t instances = 0, capped = 0, cheb_violations = 0;
  double max_mean_dev = 0.0, max_var_dev = 0.0;
  for (std::size_t i = 0; i < trials; ++i) {
    const std::uint64_t seed = derive_seed(cfg.seed, i);
    std::mt19937_64 rng(seed);
    const std::size_t ti = 1 + i % t;
    const auto gens = draw_generators(k, n, ti, rng);
    const auto h = subgroup_closure(k, gens, cfg.cap);
    csv << i << ',' << seed << ',' << ti << ',';
    if (!h) {
      ++capped;
      csv << "cap,,,,,,\n";
      continue;
    }
    ++instances;
    const MomentReport m = plancherel_moments(cat, n, *h);
    max_mean_dev = std::max(max_mean_dev, std::abs(m.mean_exact - m.mean_formula));
    max_var_dev = std::max(max_var_dev, std::abs(m.variance_exact - m.variance_formula));
    if (m.prob_xh_zero_exact > m.chebyshev_bound) ++cheb_violations;
    csv << m.subgroup_order << ',' << format_double(m.mean_exact) << ',' << format_double(m.mean_formula) << ','
        << format_double(m.variance_exact) << ',' << format_double(m.variance_formula) << ','
        << format_double(m.prob_xh_zero_exact) << ',' << format_double(m.chebyshev_bound) << '\n';
  }

  if (instances == 0) result.violations.push_back("no enumerable instances: every closure exceeded the cap");
  if (max_mean_dev >= 1e-10) result.violations.push_back("mean deviation " + format_double(max_mean_dev));
  if (max_var_dev >= 1e-10) result.violations.push_back("variance deviation " + format_double(max_var_dev));
  if (cheb_violations) result.violations.push_back(std::to_string(cheb_violations) + " Chebyshev bound violations");

  json s = base_summary(cfg);
  s["instances"] = instances;
  s["capped"] = capped;
  s["max_mean_deviation"] = max_mean_dev;
  s["max_variance_deviation"] = max_var_dev;
  s["chebyshev_violations"] = cheb_violations;
  s["violations"] = result.violations;
  result.csv = csv.str();
  result.summary = std::move(s);
  return result;
}

RunResult run_tail_audit(const ExperimentConfig& cfg) {
  const BaseGroup k = build_base_group(cfg.group);
  const std::size_t n = *cfg.n, t = *cfg.t, trials = *cfg.trials;
  const double kt = std::pow(static_cast<double>(k.order()), static_cast<double>(t));
  const double threshold = static_cast<double>(n) / (2.0 * kt);

  RunResult result;
  std::ostringstream csv;
  csv << "trial_index,derived_seed,d_min,ell\n";
  std::size_t below_threshold = 0, below_ell = 0;
  bool range_ok = true;
  for (std::size_t i = 0; i < trials; ++i) {
    const std::uint64_t seed = derive_seed(cfg.seed, i);
    std::mt19937_64 rng(seed);
    const PatternPartition p = pattern_partition(draw_generators(k, n, t, rng));
    range_ok = range_ok && p.d_min >= 1 && p.d_min <= n;
    below_threshold += static_cast<double>(p.d_min) <= threshold;
    below_ell += p.d_min < cfg.ell;
    csv << i << ',' << seed << ',' << p.d_min << ',' << p.ell << '\n';
  }
  if (!range_ok) result.violations.push_back("d_min outside [1, n]");

  const Lemma2Bounds bounds = bound_lemma2(n, t, k.order(), cfg.ell);
  std::optional<double> exact1, exact2;
  const std::size_t patterns = checked_power(k.order(), t, 1u << 20);
  try {
    exact1 = exact_dmin_below(n, patterns, static_cast<std::size_t>(std::floor(threshold)) + 1);
    exact2 = exact_dmin_below(n, patterns, cfg.ell);
  } catch (const std::invalid_argument&) {
  }

  const double total = static_cast<double>(trials);
  auto audit = [&](double empirical, const BoundValue& bound, const std::optional<double>& exact) {
    const double q = exact.value_or(empirical);
    const double sigma = std::sqrt(q * (1.0 - q) / total);
    return json{{"empirical", empirical},
                {"bound", bound.value},
                {"bound_vacuous", bound.vacuous},
                {"exact", optional_json(exact)},
                {"binomial_sigma", sigma},
                {"confidence_halfwidth", confidence_halfwidth(empirical, trials)},
                {"holds", empirical <= bound.value + 3.0 * sigma}};
  };
  json s = base_summary(cfg);
  s["threshold"] = threshold;
  s["ell"] = cfg.ell;
  s["part1"] = audit(below_threshold / total, bounds.part1, exact1);
  s["part2"] = audit(below_ell / total, bounds.part2, exact2);
  s["d_range_ok"] = range_ok;
  s["violations"] = result.violations;
  result.csv = csv.str();
  result.summary = std::move(s);
  return result;
}

RunResult run_cayley_scan(const ExperimentConfig& cfg) {
  const BaseGroup k = build_base_group(cfg.group);
  const IrrepCatalog cat(k);
  const std::size_t n = *cfg.n, t_max = *cfg.t, trials = *cfg.trials;

  const std::size_t vertices = checked_power(k.order(), n, kCayleyVertexCap);
  const std::size_t tuples = checked_power(cat.size(), n, kCayleyTupleCap);
  std::size_t max_dim = 1;
  std::size_t top_dim = 0;
  for (const auto& r : cat.reps()) top_dim = std::max(top_dim, r.dim);
  max_dim = checked_power(top_dim, n, kDenseDimCap);
  const bool dense_ok = vertices <= kCayleyVertexCap;
  const bool irrep_ok = tuples <= kCayleyTupleCap && max_dim <= kDenseDimCap;

  bool use_dense = cfg.method == "dense" || (cfg.method == "auto" && dense_ok);
  if (use_dense && !dense_ok) throw UsageError("cayley: |K|^n exceeds the dense vertex cap");
  if (!use_dense && !irrep_ok) throw UsageError("cayley: irrep tuples exceed the per-irrep caps");
  const bool cross_check = cfg.method == "auto" && dense_ok && irrep_ok && vertices <= 1024;

  RunResult result;
  std::ostringstream csv;
  csv << "t,trials,mean,min,max,fraction_disconnected\n";
  json per_t = json::array();
  double max_dev = 0.0;
  for (std::size_t t = 1; t <= t_max; ++t) {
    double sum = 0.0, lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    std::size_t disconnected = 0;
    for (std::size_t i = 0; i < trials; ++i) {
      std::mt19937_64 rng(derive_seed(cfg.seed, (t - 1) * trials + i));
      const auto gens = draw_generators(k, n, t, rng);
      const double lambda = cayley_second_eigenvalue(
          cat, n, gens, use_dense ? CayleyMethod::dense_adjacency : CayleyMethod::per_irrep);
      if (cross_check) {
        const double other = cayley_second_eigenvalue(cat, n, gens, CayleyMethod::per_irrep);
        max_dev = std::max(max_dev, std::abs(lambda - other));
      }
      if (lambda < 0.0 || lambda > 1.0 + 1e-9)
        result.violations.push_back("second eigenvalue " + format_double(lambda) + " outside [0, 1]");
      sum += lambda;
      lo = std::min(lo, lambda);
      hi = std::max(hi, lambda);
      disconnected += lambda > 1.0 - 1e-9;
    }
    const double mean = sum / static_cast<double>(trials);
    const double frac = static_cast<double>(disconnected) / static_cast<double>(trials);
    csv << t << ',' << trials << ',' << format_double(mean) << ',' << format_double(lo) << ','
        << format_double(hi) << ',' << format_double(frac) << '\n';
    per_t.push_back({{"t", t}, {"mean", mean}, {"min", lo}, {"max", hi}, {"fraction_disconnected", frac}});
  }
  if (cross_check && max_dev >= 1e-8)
    result.violations.push_back("dense and per-irrep eigenvalues differ by " + format_double(max_dev));

  json s = base_summary(cfg);
  s["method"] = use_dense ? "dense-adjacency" : "per-irrep";
  s["per_t"] = per_t;
  s["max_crosscheck_deviation"] = cross_check ? json(max_dev) : json(nullptr);
  s["violations"] = result.violations;
  result.csv = csv.str();
  result.summary = std::move(s);
  return result;
}

RunResult run_kappa(const ExperimentConfig& cfg) {
  const IrrepCatalog cat(build_base_group(cfg.group));
  const UnitaryRep& rep = parse_fixed_rho(cat, cfg.rho);
  const Admissibility adm = is_admissible(cat.group(), rep);
  json s = {{"experiment", "kappa"}, {"group", cfg.group}, {"rho", rep.name}, {"dim", rep.dim},
            {"admissible", adm.admissible}, {"reasons", adm.reasons}};
  s["result"] = kappa(cat, rep);
  RunResult result;
  result.summary = std::move(s);
  return result;
}

RunResult run_catalog(const ExperimentConfig& cfg) {
  const IrrepCatalog cat(build_base_group(cfg.group));
  const BaseGroup& k = cat.group();
  json classes = json::array();
  for (const auto& c : k.classes()) classes.push_back({{"size", c.size()}, {"representative", k.label(c.front())}});
  json irreps = json::array();
  for (const auto& r : cat.reps()) {
    json chars = json::array();
    for (const auto& z : r.character) chars.push_back({z.real(), z.imag()});
    irreps.push_back({{"group", k.id()},
                      {"index", r.index},
                      {"name", r.name},
                      {"dim", r.dim},
                      {"faithful", r.is_faithful},
                      {"character", chars}});
  }
  json labels = json::array();
  for (std::size_t g = 0; g < k.order(); ++g) labels.push_back(k.label(static_cast<Elem>(g)));
  RunResult result;
  result.summary = {{"experiment", "catalog"}, {"group", k.id()},          {"order", k.order()},
                    {"elements", labels},      {"center_size", k.center().size()},
                    {"admissible", k.is_admissible()}, {"classes", classes}, {"irreps", irreps}};
  return result;
}

RunResult run_experiment(const ExperimentConfig& cfg) {
  switch (cfg.experiment) {
    case Experiment::resist: return run_resistance_trials(cfg);
    case Experiment::moments: return run_moment_audit(cfg);
    case Experiment::tails: return run_tail_audit(cfg);
    case Experiment::cayley: return run_cayley_scan(cfg);
    case Experiment::kappa: return run_kappa(cfg);
    case Experiment::catalog: return run_catalog(cfg);
  }
  throw UsageError("unknown experiment");
}

std::string summary_path(const std::string& output) {
  if (output.size() > 4 && output.ends_with(".csv")) return output.substr(0, output.size() - 4) + ".summary.json";
  return output + ".summary.json";
}

void emit(const RunResult& result, const ExperimentConfig& cfg) {
  if (cfg.output.empty()) return;
  const bool has_csv = !result.csv.empty();
  const std::string json_path = has_csv ? summary_path(cfg.output) : cfg.output;
  if (has_csv) {
    std::ofstream out(cfg.output, std::ios::binary);
    if (!out) throw UsageError("cannot write '" + cfg.output + "'");
    out << result.csv;
  }
  std::ofstream js(json_path, std::ios::binary);
  if (!js) throw UsageError("cannot write '" + json_path + "'");
  js << result.summary.dump(2) << '\n';
}

}  // namespace resist
