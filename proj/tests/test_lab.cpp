#include <cmath>
#include <random>

#include "doctest.h"
#include "resist/lab.hpp"

using namespace resist;

namespace {

constexpr Elem kTau = 1;
constexpr Elem kSigma = 4;

ProductElement pe(std::vector<Elem> c) { return ProductElement{std::move(c)}; }

// <chi^k, 1> by summing over elements rather than classes.
long long power_multiplicity(const BaseGroup& k, const UnitaryRep& rho, std::size_t power) {
  Complex s = 0;
  for (std::size_t g = 0; g < k.order(); ++g) s += std::pow(rho.character[g], static_cast<double>(power));
  return std::llround(s.real() / static_cast<double>(k.order()));
}

}  // namespace

TEST_CASE("kappa examples") {
  const IrrepCatalog s3 = irrep_catalog(build_base_group("S3"));
  const KappaResult a = kappa(s3, s3[2]);
  CHECK(a.kappa == 2);
  CHECK(a.checked_values.size() >= 2);
  CHECK(a.checked_values[0] == doctest::Approx(0.0));
  CHECK(a.checked_values[1] == doctest::Approx(1.0));

  const IrrepCatalog d5 = irrep_catalog(build_base_group("D5"));
  const KappaResult b = kappa(d5, d5[2]);
  CHECK(b.kappa == 4);
  CHECK(b.analytic_cutoff == 11);
  CHECK(b.checked_values[2] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("kappa is the least threshold past which every tensor power contains 1") {
  for (const char* id : {"S3", "S4", "D3", "D5", "D7"}) {
    const IrrepCatalog cat = irrep_catalog(build_base_group(id));
    for (const auto& rho : cat.reps()) {
      if (!is_admissible(cat.group(), rho).admissible) continue;
      CAPTURE(rho.name);
      const KappaResult r = kappa(cat, rho);
      for (std::size_t k = r.kappa; k <= r.analytic_cutoff + 10; ++k)
        CHECK(power_multiplicity(cat.group(), rho, k) > 0);
      if (r.kappa > 2) CHECK(power_multiplicity(cat.group(), rho, r.kappa - 1) == 0);
    }
  }
}

TEST_CASE("admissibility") {
  const IrrepCatalog z5 = irrep_catalog(build_base_group("Z5"));
  CHECK_FALSE(is_admissible(z5.group(), z5[1]).admissible);
  CHECK_THROWS_AS(kappa(z5, z5[1]), NotAdmissible);

  const IrrepCatalog s3 = irrep_catalog(build_base_group("S3"));
  const Admissibility sign = is_admissible(s3.group(), s3[1]);
  CHECK_FALSE(sign.admissible);
  CHECK(sign.reasons.size() == 2);  // not faithful, dimension 1

  const IrrepCatalog d4 = irrep_catalog(build_base_group("D4"));
  CHECK_FALSE(is_admissible(d4.group(), d4[4]).admissible);
  CHECK_THROWS_AS(kappa(d4, d4[4]), NotAdmissible);

  const IrrepCatalog s4 = irrep_catalog(build_base_group("S4"));
  CHECK_FALSE(is_admissible(s4.group(), s4[2]).admissible);
  CHECK(is_admissible(s4.group(), s4[3]).admissible);
}

TEST_CASE("X_H on the diagonal copy of S3") {
  const IrrepCatalog cat = irrep_catalog(build_base_group("S3"));
  const auto diag = *subgroup_closure(cat.group(), {pe({kTau, kTau}), pe({kSigma, kSigma})});
  CHECK(xh_value(cat, uniform_index_tuple(2, 2), diag) == doctest::Approx(0.25));
  CHECK(xh_value(cat, uniform_index_tuple(0, 2), diag) == doctest::Approx(1.0));
  CHECK(xh_value(cat, PlancherelIndex{{1, 0}}, diag) == doctest::Approx(0.0));
}

TEST_CASE("Plancherel moments") {
  const IrrepCatalog cat = irrep_catalog(build_base_group("S3"));
  const auto diag = *subgroup_closure(cat.group(), {pe({kTau, kTau}), pe({kSigma, kSigma})});
  const MomentReport r = plancherel_moments(cat, 2, diag);
  CHECK(r.subgroup_order == 6);
  CHECK(r.mean_exact == doctest::Approx(1.0 / 6.0));
  CHECK(r.mean_formula == doctest::Approx(1.0 / 6.0));
  CHECK(r.variance_exact == doctest::Approx(1.0 / 18.0));
  CHECK(r.variance_formula == doctest::Approx(r.variance_exact));

  const auto id = *subgroup_closure(cat.group(), {product_identity(3)});
  const MomentReport one = plancherel_moments(cat, 3, id);
  CHECK(one.mean_exact == doctest::Approx(1.0));
  CHECK(one.variance_exact == doctest::Approx(0.0));
  CHECK(one.prob_xh_zero_exact == doctest::Approx(0.0));
  CHECK(one.chebyshev_bound == doctest::Approx(0.0));

  const auto full = *subgroup_closure(cat.group(), {pe({kTau}), pe({kSigma})});
  const MomentReport k = plancherel_moments(cat, 1, full);
  CHECK(k.mean_exact == doctest::Approx(1.0 / 6.0));
  CHECK(k.prob_xh_zero_exact == doctest::Approx(5.0 / 6.0));

  CHECK_THROWS_AS(plancherel_moments(cat, 3, diag), std::invalid_argument);
}

TEST_CASE("mean and variance formulas match enumeration on random subgroups") {
  std::mt19937_64 rng(31);
  for (const char* id : {"S3", "D5"}) {
    const IrrepCatalog cat = irrep_catalog(build_base_group(id));
    for (int rep = 0; rep < 15; ++rep) {
      const std::size_t n = 1 + rep % 3;
      std::vector<ProductElement> gens = {uniform_product_element(cat.group(), n, rng)};
      if (rep % 2) gens.push_back(uniform_product_element(cat.group(), n, rng));
      const auto h = subgroup_closure(cat.group(), gens);
      REQUIRE(h);
      const MomentReport r = plancherel_moments(cat, n, *h);
      CHECK(r.mean_exact == doctest::Approx(1.0 / static_cast<double>(h->size())));
      CHECK(r.mean_formula == doctest::Approx(r.mean_exact));
      CHECK(r.variance_formula == doctest::Approx(r.variance_exact));
      // Chebyshev: Pr[X_H = 0] <= Var / mean^2.
      CHECK(r.prob_xh_zero_exact <= r.chebyshev_bound + 1e-12);
    }
  }
}

TEST_CASE("d_min tail bounds") {
  const Lemma2Bounds b = bound_lemma2(120, 1, 6, 2);
  CHECK(b.part1.value == doctest::Approx(1.2));
  CHECK(b.part1.vacuous);
  CHECK(b.part2.value == doctest::Approx(120.0 * 120.0 * 6.0 * std::exp(-20.0)));
  CHECK(b.part2.value == doctest::Approx(1.78e-4).epsilon(0.01));
  CHECK_FALSE(b.part2.vacuous);
  CHECK(bound_lemma2(60, 2, 6, 2).part2.vacuous);
}

TEST_CASE("fixed-representation resistance bound") {
  const BoundValue b = bound_theorem1(360, 1, 6, 2);
  CHECK_FALSE(b.vacuous);
  CHECK(b.value <= 1.0);
  CHECK(1.0 - b.value < 1e-15);
  CHECK(bound_theorem1(60, 2, 6, 2).vacuous);
}

TEST_CASE("Plancherel resistance bounds") {
  CHECK(default_alpha(6) == doctest::Approx(1.0 / (2.0 * std::sqrt(std::log2(6.0)))));
  CHECK_THROWS_AS(bound_theorem2(100, 1, 6, 0.0), std::invalid_argument);

  const Theorem2Bounds small = bound_theorem2(60, 2, 6, default_alpha(6));
  CHECK_FALSE(small.in_regime);
  const double sqrt_n = std::sqrt(60.0);
  const double alpha = default_alpha(6);
  const double expected = 2 * alpha / sqrt_n + std::pow(std::pow(2.0, -1.0 / alpha) * std::pow(6.0, alpha), sqrt_n);
  CHECK(small.bound.value == doctest::Approx(expected));
  CHECK(small.mass.value == doctest::Approx(1.0 - std::sqrt(2.0) / std::pow(60.0 * std::log2(6.0), 0.25)));

  // Deep in the regime the exponential term underflows harmlessly.
  const Theorem2Bounds big = bound_theorem2(100000000, 1, 6, 0.12);
  CHECK(big.in_regime);
  CHECK(big.bound.value == doctest::Approx(2 * 0.12 / 1e4));
  CHECK_FALSE(big.bound.vacuous);
}

TEST_CASE("bound report serializes") {
  const BoundReport r = bound_report(120, 1, 6, std::size_t{2}, default_alpha(6), 2);
  nlohmann::json j = r;
  CHECK(j.contains("alpha"));
  CHECK(r.theorem1_bound.has_value());
  CHECK_FALSE(bound_report(120, 1, 6, std::nullopt, default_alpha(6), 2).theorem1_bound.has_value());
}
