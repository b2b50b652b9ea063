#pragma once

// Unitary irreducible representations of the catalog groups, characters,
// multiplicities, tensor-power characters and Plancherel sampling.

#include <complex>
#include <cstddef>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "resist/group.hpp"
#include "resist/pattern.hpp"

namespace resist {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Class function on a base group, one value per element.
using Character = std::vector<Complex>;

/// Rounding a numerically computed multiplicity left a residue above 1e-6.
class ResidueTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kResidueTolerance = 1e-6;

struct UnitaryRep {
  std::string name;  // "<group-id>:<index>"
  std::size_t index = 0;
  std::size_t dim = 0;
  std::vector<Matrix> matrices;
  Character character;
  bool is_faithful = false;
  /// Integer character values, when every value is a rational integer. Used
  /// for exact arithmetic on large tensor products.
  std::optional<std::vector<long long>> integer_character;
};

/// All irreducible representations of a catalog group, up to equivalence.
/// Entry 0 is the trivial representation. Every representation is checked
/// for unitarity, the homomorphism property and irreducibility on
/// construction.
class IrrepCatalog {
 public:
  explicit IrrepCatalog(BaseGroup k);

  const BaseGroup& group() const { return group_; }
  std::size_t size() const { return reps_.size(); }
  const UnitaryRep& operator[](std::size_t i) const { return reps_.at(i); }
  const std::vector<UnitaryRep>& reps() const { return reps_; }

  /// Looks up "<group-id>:<index>" or a bare index.
  const UnitaryRep& find(std::string_view name) const;

 private:
  BaseGroup group_;
  std::vector<UnitaryRep> reps_;
};

IrrepCatalog irrep_catalog(const BaseGroup& k);

/// (1/|K|) sum_g chi(g) conj(psi(g)).
Complex inner_product(const Character& chi, const Character& psi, const BaseGroup& k);

/// Rounds to the nearest integer; throws ResidueTooLarge if the residue
/// exceeds 1e-6 or the value is negative.
long long round_multiplicity(Complex value);

/// Copies of the irrep with character `irrep_char` inside `any_char`.
long long multiplicity(const Character& irrep_char, const Character& any_char, const BaseGroup& k);

/// rho = rho_1 (x) ... (x) rho_n, one catalog index per coordinate.
struct PlancherelIndex {
  std::vector<std::size_t> indices;

  std::size_t size() const { return indices.size(); }
  bool operator==(const PlancherelIndex&) const = default;
};

/// The same irrep on every coordinate (rho^n).
PlancherelIndex uniform_index_tuple(std::size_t irrep, std::size_t n);

/// prod_j d_{rho_j}, exactly.
BigInt dimension(const IrrepCatalog& cat, const PlancherelIndex& rho);
double dimension_as_double(const IrrepCatalog& cat, const PlancherelIndex& rho);

/// prod_j chi_{rho_j}(g_j).
Complex product_character_at(const IrrepCatalog& cat, const PlancherelIndex& rho,
                             const ProductElement& g);

/// Draws each coordinate independently with probability d^2/|K|.
PlancherelIndex plancherel_sample(const IrrepCatalog& cat, std::size_t n, std::mt19937_64& rng);

/// Copies of the trivial representation in Res_H rho.
BigInt restricted_trivial_multiplicity(const IrrepCatalog& cat, const PlancherelIndex& rho,
                                       const SubgroupEnum& h);

/// Copies of the trivial representation in the diagonal restriction of
/// rho_{j1} (x) ... (x) rho_{jm} to K, i.e. <prod_j chi_j, 1>_K.
BigInt diagonal_trivial_multiplicity(const IrrepCatalog& cat, std::span<const std::size_t> irreps);

}  // namespace resist
