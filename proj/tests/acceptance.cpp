// Acceptance suite: one PASS/FAIL line per criterion, with wall time
// checked against each criterion's budget. Exit status is nonzero when any
// line fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "resist/experiment.hpp"
#include "resist/lab.hpp"
#include "resist/norm.hpp"

using namespace resist;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

ProductElement pe(std::vector<Elem> c) { return ProductElement{std::move(c)}; }

std::vector<ProductElement> draw(const BaseGroup& k, std::size_t n, std::size_t t, std::mt19937_64& rng) {
  std::vector<ProductElement> gens;
  for (std::size_t m = 0; m < t; ++m) gens.push_back(uniform_product_element(k, n, rng));
  return gens;
}

Outcome algebraic_ground_truth() {
  Outcome o;
  std::size_t checks = 0;
  for (const char* id : {"S3", "S4", "D5", "D7", "Z2", "Z3", "Z4", "Z5", "Z6", "Z7", "Z8"}) {
    const IrrepCatalog cat = irrep_catalog(build_base_group(id));
    const BaseGroup& k = cat.group();
    const std::size_t n = k.order();
    const std::string tag = std::string(id) + ": ";
    auto e = [](std::size_t x) { return static_cast<Elem>(x); };

    for (std::size_t a = 0; a < n; ++a) {
      o.require(k.mul(0, e(a)) == a && k.mul(e(a), 0) == a, tag + "identity");
      o.require(k.mul(e(a), k.inv(e(a))) == 0, tag + "inverse");
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          o.require(k.mul(k.mul(e(a), e(b)), e(c)) == k.mul(e(a), k.mul(e(b), e(c))), tag + "associativity");
    }

    std::size_t sum_sq = 0;
    for (const auto& r : cat.reps()) {
      sum_sq += r.dim * r.dim;
      const Matrix id_d = Matrix::Identity(r.dim, r.dim);
      for (std::size_t a = 0; a < n; ++a) {
        o.require((r.matrices[a] * r.matrices[a].adjoint() - id_d).cwiseAbs().maxCoeff() < 1e-9, tag + "unitarity");
        for (std::size_t b = 0; b < n; ++b)
          o.require((r.matrices[k.mul(e(a), e(b))] - r.matrices[a] * r.matrices[b]).cwiseAbs().maxCoeff() < 1e-9,
                    tag + "homomorphism");
      }
      for (const auto& s : cat.reps()) {
        Complex ip = 0;
        for (std::size_t g = 0; g < n; ++g) ip += r.character[g] * std::conj(s.character[g]);
        ip /= static_cast<double>(n);
        o.require(std::abs(ip - Complex(r.index == s.index ? 1.0 : 0.0)) < 1e-9, tag + "orthonormality");
        ++checks;
      }
    }
    o.require(sum_sq == n, tag + "sum of squared dimensions");

    for (std::size_t g1 = 0; g1 < n; ++g1) {
      Complex reg = 0;
      for (const auto& r : cat.reps()) reg += static_cast<double>(r.dim) * r.character[g1];
      o.require(std::abs(reg - Complex(g1 == 0 ? static_cast<double>(n) : 0.0)) < 1e-9, tag + "regular character");
      for (std::size_t g2 = 0; g2 < n; ++g2) {
        Complex bi = 0;
        for (const auto& r : cat.reps()) bi += r.character[g1] * std::conj(r.character[g2]);
        std::size_t fixed = 0;
        for (std::size_t g = 0; g < n; ++g) fixed += k.mul(k.mul(e(g1), e(g)), k.inv(e(g2))) == g;
        o.require(std::abs(bi - Complex(static_cast<double>(fixed))) < 1e-9, tag + "biregular character");
        ++checks;
      }
    }
  }
  o.detail = o.pass ? std::to_string(checks) + " character checks over 11 groups" : o.detail;
  return o;
}

Outcome kappa_correctness() {
  Outcome o;
  const IrrepCatalog s3 = irrep_catalog(build_base_group("S3"));
  const IrrepCatalog d5 = irrep_catalog(build_base_group("D5"));
  const KappaResult a = kappa(s3, s3.find("2"));
  const KappaResult b = kappa(d5, d5.find("2"));
  o.require(a.kappa == 2, "kappa(S3, std) = " + std::to_string(a.kappa));
  o.require(b.kappa == 4, "kappa(D5, std) = " + std::to_string(b.kappa));

  // Independent power sums over elements up to the analytic cutoff.
  const UnitaryRep& rho = d5.find("2");
  std::vector<double> sums;
  for (std::size_t p = 1; p <= b.analytic_cutoff; ++p) {
    Complex s = 0;
    for (const auto& z : rho.character) s += std::pow(z, static_cast<double>(p));
    sums.push_back(s.real() / 10.0);
  }
  o.require(std::abs(sums[2]) < 1e-9, "<chi^3, 1> for D5 is not 0");
  for (std::size_t p = 4; p <= sums.size(); ++p)
    o.require(sums[p - 1] > 0.5, "<chi^" + std::to_string(p) + ", 1> vanishes past kappa");
  for (std::size_t p = 0; p < sums.size(); ++p)
    o.require(std::abs(sums[p] - b.checked_values[p]) < 1e-9, "power sums disagree with kappa()");
  if (o.pass) {
    std::ostringstream s;
    s << "kappa(S3,std)=2, kappa(D5,std)=4, <chi^3,1>=" << sums[2] << ", cutoff " << b.analytic_cutoff;
    o.detail = s.str();
  }
  return o;
}

// Fifty seeded S3^2 instances with t cycling through 1..3.
std::vector<SubgroupEnum> moment_instances(const BaseGroup& k) {
  std::vector<SubgroupEnum> out;
  for (std::size_t i = 0; i < 50; ++i) {
    std::mt19937_64 rng(derive_seed(2024, i));
    if (auto h = subgroup_closure(k, draw(k, 2, 1 + i % 3, rng))) out.push_back(std::move(*h));
  }
  return out;
}

Outcome moment_identities() {
  Outcome o;
  const IrrepCatalog cat = irrep_catalog(build_base_group("S3"));
  const auto hs = moment_instances(cat.group());
  o.require(hs.size() == 50, "closure did not complete");
  double worst_mean = 0, worst_var = 0;
  for (const auto& h : hs) {
    const MomentReport m = plancherel_moments(cat, 2, h);
    worst_mean = std::max(worst_mean, std::abs(m.mean_exact - 1.0 / static_cast<double>(h.size())));
    worst_var = std::max(worst_var, std::abs(m.variance_exact - m.variance_formula));
  }
  o.require(worst_mean < 1e-10, "mean deviation");
  o.require(worst_var < 1e-10, "variance deviation");

  const auto diag = *subgroup_closure(cat.group(), {pe({1, 1}), pe({4, 4})});
  const MomentReport d = plancherel_moments(cat, 2, diag);
  for (double v : {d.mean_exact, d.mean_formula}) o.require(std::abs(v - 1.0 / 6.0) < 1e-10, "diagonal mean");
  for (double v : {d.variance_exact, d.variance_formula}) o.require(std::abs(v - 1.0 / 18.0) < 1e-10, "diagonal variance");
  if (o.pass) {
    std::ostringstream s;
    s << "max |mean-1/|H||=" << worst_mean << ", max |var diff|=" << worst_var << "; diagonal 1/6, 1/18";
    o.detail = s.str();
  }
  return o;
}

Outcome chebyshev_bound() {
  Outcome o;
  const IrrepCatalog cat = irrep_catalog(build_base_group("S3"));
  std::size_t informative = 0;
  for (const auto& h : moment_instances(cat.group())) {
    const MomentReport m = plancherel_moments(cat, 2, h);
    o.require(m.prob_xh_zero_exact <= m.chebyshev_bound + 1e-12, "Pr[X_H=0] exceeds the Chebyshev bound");
    informative += m.chebyshev_bound < 1.0;
  }
  if (o.pass) o.detail = "50 instances, " + std::to_string(informative) + " with bound < 1";
  return o;
}

Outcome norm_cross_validation() {
  Outcome o;
  const IrrepCatalog cat = irrep_catalog(build_base_group("S3"));
  double worst = 0;
  std::size_t certified = 0;
  for (std::size_t i = 0; i < 500; ++i) {
    std::mt19937_64 rng(derive_seed(77, i));
    const std::size_t n = 1 + i % 5, t = 1 + (i / 5) % 3;
    const auto gens = draw(cat.group(), n, t, rng);
    const PlancherelIndex rho = plancherel_sample(cat, n, rng);
    const AveragedOperator op(cat, rho, gens);
    const double dense = average_norm_dense(op).value;
    const double power = average_norm_power(op).value;
    worst = std::max(worst, std::abs(dense - power));
    const auto h = subgroup_closure(cat.group(), gens);
    const bool cert = trivial_certificate(pattern_partition(gens), std::nullopt, h ? &*h : nullptr, cat, rho);
    certified += cert;
    if (cert) o.require(dense > 1.0 - 1e-6, "certificate with dense norm below 1");
    if (t == 1) o.require(dense > 1.0 - 1e-9 && power > 1.0 - 1e-9, "t=1 norm below 1");
  }
  o.require(worst < 1e-8, "power and dense differ");
  if (o.pass) {
    std::ostringstream s;
    s << "max |power-dense|=" << worst << ", " << certified << " certified";
    o.detail = s.str();
  }
  return o;
}

Outcome fixed_rep_resistance() {
  Outcome o;
  const auto cfg = parse_config(
      Experiment::resist, {{"group", "S3^60"}, {"t", "1"}, {"trials", "500"}, {"rho", "S3:2"}, {"seed", "1"}}, {});
  const RunResult r = run_resistance_trials(cfg);
  const double f = r.summary["fraction_d_ge_kappa"].get<double>();
  o.require(r.ok(), "run reported violations");
  o.require(f >= 0.98, "fraction d >= 2 below 0.98");
  o.require(r.summary["fraction_norm_one"].get<double>() >= f, "norm-one fraction below d >= kappa fraction");
  if (o.pass) {
    std::ostringstream s;
    s << "fraction d>=2 = " << f << ", exact Pr[d<2] = " << exact_dmin_below(60, 6, 2);
    o.detail = s.str();
  }
  return o;
}

Outcome plancherel_resistance() {
  Outcome o;
  const auto cfg = parse_config(
      Experiment::resist, {{"group", "S3^60"}, {"t", "1"}, {"trials", "500"}, {"rho", "plancherel"}, {"seed", "2"}},
      {});
  const RunResult r = run_resistance_trials(cfg);
  const double f = r.summary["fraction_certificate"].get<double>();
  const auto& check = r.summary["theorem2_check"];
  o.require(r.ok(), "run reported violations");
  o.require(f >= 0.9, "certified fraction below 0.9");
  o.require(check["holds"].get<bool>(), "Pr[X_H=0] estimate exceeds a non-vacuous bound");
  if (o.pass) {
    std::ostringstream s;
    s << "fraction certified = " << f << ", Pr[X_H=0] est = " << r.summary["fraction_xh_zero"].get<double>()
      << ", bound " << check["bound"].get<double>()
      << (r.summary["paper_bound_values"]["theorem2_in_regime"].get<bool>() ? "" : " (outside its regime)");
    o.detail = s.str();
  }
  return o;
}

Outcome dmin_tail_audit() {
  Outcome o;
  const auto cfg =
      parse_config(Experiment::tails, {{"group", "S3^120"}, {"t", "1"}, {"trials", "1000"}, {"seed", "3"}}, {});
  const RunResult r = run_tail_audit(cfg);
  const auto& p1 = r.summary["part1"];
  const auto& p2 = r.summary["part2"];
  o.require(r.ok(), "run reported violations");
  o.require(p1["empirical"].get<double>() <= std::min(1.0, 4.0 * 36.0 / 120.0), "part 1 exceeded");
  o.require(p2["holds"].get<bool>(), "part 2 exceeded");
  o.require(!p2["exact"].is_null(), "exact oracle missing");
  if (o.pass) {
    std::ostringstream s;
    s << "Pr[d<=10] emp " << p1["empirical"].get<double>() << "; Pr[d<2] emp " << p2["empirical"].get<double>()
      << ", exact " << p2["exact"].get<double>() << ", bound " << p2["bound"].get<double>();
    o.detail = s.str();
  }
  return o;
}

Outcome cayley_consistency() {
  Outcome o;
  const IrrepCatalog z2 = irrep_catalog(build_base_group("Z2"));
  const IrrepCatalog z4 = irrep_catalog(build_base_group("Z4"));
  const IrrepCatalog s3 = irrep_catalog(build_base_group("S3"));
  double worst = 0;
  auto both = [&](const IrrepCatalog& cat, std::size_t n, const std::vector<ProductElement>& gens) {
    const double a = cayley_second_eigenvalue(cat, n, gens, CayleyMethod::dense_adjacency);
    const double b = cayley_second_eigenvalue(cat, n, gens, CayleyMethod::per_irrep);
    worst = std::max(worst, std::abs(a - b));
    return a;
  };
  for (std::size_t i = 0; i < 20; ++i) {
    std::mt19937_64 rng(derive_seed(9, i));
    const std::size_t t = 1 + i % 4;
    both(z2, 4, draw(z2.group(), 4, t, rng));
    both(z4, 1, draw(z4.group(), 1, t, rng));
    both(z2, 2, draw(z2.group(), 2, t, rng));
    both(s3, 1, draw(s3.group(), 1, t, rng));
  }
  const double cycle = both(z4, 1, {pe({1})});
  const double k4 = both(z2, 2, {pe({1, 0}), pe({0, 1}), pe({1, 1})});
  o.require(worst < 1e-8, "dense and per-irrep disagree");
  o.require(std::abs(cycle - 1.0) < 1e-8, "Z4/{+-1} is not 1");
  o.require(std::abs(k4 - 1.0 / 3.0) < 1e-8, "Z2^2/all-nonzero is not 1/3");
  if (o.pass) {
    std::ostringstream s;
    s << "max deviation " << worst << ", Z4 " << cycle << ", Z2^2 " << k4;
    o.detail = s.str();
  }
  return o;
}

Outcome determinism() {
  Outcome o;
  const std::vector<std::pair<Experiment, ConfigValues>> runs = {
      {Experiment::resist, {{"group", "S3^8"}, {"t", "2"}, {"trials", "50"}, {"rho", "plancherel"}, {"seed", "11"}}},
      {Experiment::resist, {{"group", "D5^5"}, {"t", "2"}, {"trials", "30"}, {"rho", "D5:2"}, {"seed", "12"}}},
      {Experiment::moments, {{"group", "S3^3"}, {"t", "3"}, {"trials", "20"}, {"seed", "13"}}},
      {Experiment::tails, {{"group", "S4^50"}, {"t", "2"}, {"trials", "200"}, {"seed", "14"}}},
      {Experiment::cayley, {{"group", "S3^2"}, {"t", "3"}, {"trials", "5"}, {"seed", "15"}}},
  };
  for (const auto& [e, values] : runs) {
    const auto cfg = parse_config(e, values, {});
    const RunResult a = run_experiment(cfg);
    const RunResult b = run_experiment(cfg);
    o.require(!a.csv.empty() && a.csv == b.csv, to_string(e) + " CSV differs between runs");
    o.require(a.summary.dump() == b.summary.dump(), to_string(e) + " summary differs between runs");
  }
  if (o.pass) o.detail = std::to_string(runs.size()) + " configurations rerun byte-identically";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "algebraic ground truth", 10, algebraic_ground_truth},
      {2, "kappa correctness", 1, kappa_correctness},
      {3, "moment identities", 5, moment_identities},
      {4, "Chebyshev restriction bound", 5, chebyshev_bound},
      {5, "norm-engine cross-validation", 60, norm_cross_validation},
      {6, "fixed-rep resistance at n=60", 5, fixed_rep_resistance},
      {7, "Plancherel resistance at n=60", 30, plancherel_resistance},
      {8, "d_min tail audit", 5, dmin_tail_audit},
      {9, "Cayley consistency", 10, cayley_consistency},
      {10, "determinism", 60, determinism},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.budget_s) {
      o.pass = false;
      o.detail += " (over budget)";
    }
    failed += !o.pass;
    std::printf("[%s] %2d %s (%.2f s / %.0f s): %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs, c.budget_s,
                o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
