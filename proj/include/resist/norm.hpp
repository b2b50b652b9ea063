#pragma once

// Operator norms of averages of tensor-power unitaries: a matrix-free
// Kronecker power iteration, a dense oracle, the trivial-subrepresentation
// certificate, and Cayley-graph second eigenvalues.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "resist/group.hpp"
#include "resist/pattern.hpp"
#include "resist/repr.hpp"

namespace resist {

inline constexpr std::size_t kPowerDimCap = 8192;
inline constexpr std::size_t kDenseDimCap = 512;
inline constexpr double kIsOneThreshold = 1e-6;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// (M_1 (x) ... (x) M_n) v without forming the product. Coordinate 0 is the
/// most significant index of v. Factors may differ in size.
Vector kron_apply(std::span<const Matrix* const> factors, const Vector& v, bool adjoint = false);
Vector kron_apply(const std::vector<Matrix>& factors, const Vector& v);

/// (1/T) sum_m rho(h_m) for rho = rho_1 (x) ... (x) rho_n. When symmetrized,
/// the T = 2t terms are rho(h_m) and rho(h_m^-1).
///
/// Holds a reference to the catalog, which must outlive the operator.
class AveragedOperator {
 public:
  AveragedOperator(const IrrepCatalog& cat, PlancherelIndex rho, std::vector<ProductElement> gens,
                   bool symmetrized = false);

  /// prod_j d_{rho_j}, saturating at SIZE_MAX.
  std::size_t dim() const { return dim_; }
  std::size_t term_count() const { return terms_.size(); }
  bool symmetrized() const { return symmetrized_; }
  const PlancherelIndex& rho() const { return rho_; }
  const std::vector<ProductElement>& generators() const { return gens_; }

  Vector apply(const Vector& v) const;
  Vector apply_adjoint(const Vector& v) const;

  /// Explicit matrix built from Kronecker products; dim() <= kDenseDimCap.
  Matrix dense() const;

 private:
  const IrrepCatalog* cat_;
  PlancherelIndex rho_;
  std::vector<ProductElement> gens_;
  bool symmetrized_;
  std::size_t dim_;
  std::vector<std::vector<const Matrix*>> terms_;
};

enum class NormMethod { certificate, power, dense };
std::string to_string(NormMethod m);

struct NormEstimate {
  double value = 0.0;
  bool is_one = false;
  NormMethod method = NormMethod::power;
  std::size_t iterations = 0;
  bool converged = true;
};

struct PowerOptions {
  /// Relative residual ||A x - theta x|| at which a restart stops.
  double tol = 1e-12;
  /// Budget of applications of M^dagger M per restart.
  std::size_t max_iters = 5000;
  std::size_t restarts = 3;
  std::uint64_t seed = 0x5eed5eed5eed5eedULL;
};

/// Largest singular value by matrix-free Krylov (restarted Lanczos) iteration
/// on M^dagger M, maximized over random starts. `converged` is false when some restart hit max_iters; the best
/// value seen is still reported.
NormEstimate average_norm_power(const AveragedOperator& op, const PowerOptions& opts = {});

/// Largest singular value from the full eigendecomposition of M^dagger M.
NormEstimate average_norm_dense(const AveragedOperator& op);

/// True when Res_{H~} rho contains the trivial representation: every pattern
/// class C has a nonzero multiplicity of the trivial rep in the diagonal
/// restriction of (x)_{j in C} rho_j.
bool htilde_certificate(const PatternPartition& p, const IrrepCatalog& cat, const PlancherelIndex& rho);

/// Sufficient condition for norm exactly 1. With `kappa` set, rho must be
/// rho_0^n for an admissible rho_0 with that kappa, and d_min >= kappa
/// certifies. With `h` set, a positive restricted trivial multiplicity
/// certifies. false means "no certificate", not "norm < 1".
bool trivial_certificate(const PatternPartition& p, std::optional<std::size_t> kappa, const SubgroupEnum* h,
                         const IrrepCatalog& cat, const PlancherelIndex& rho);

enum class CayleyMethod { dense_adjacency, per_irrep };

inline constexpr std::size_t kCayleyVertexCap = 4096;
inline constexpr std::size_t kCayleyTupleCap = 100000;

/// Second-largest absolute eigenvalue of the normalized undirected Cayley
/// graph of K^n on gens and their inverses.
double cayley_second_eigenvalue(const IrrepCatalog& cat, std::size_t n, const std::vector<ProductElement>& gens,
                                CayleyMethod method);

}  // namespace resist
