#include "resist/norm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Eigenvalues>

namespace resist {

namespace {

using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

std::size_t saturating_mul(std::size_t a, std::size_t b) {
  if (a != 0 && b > std::numeric_limits<std::size_t>::max() / a) return std::numeric_limits<std::size_t>::max();
  return a * b;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Vector random_start(std::size_t dim, std::mt19937_64& rng) {
  auto unit = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0; };
  Vector v(static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = Complex(unit(), unit());
  return v / v.norm();
}

NormEstimate finish(double lambda, NormMethod method, std::size_t iterations, bool converged) {
  NormEstimate e;
  e.value = std::clamp(std::sqrt(std::max(lambda, 0.0)), 0.0, 1.0);
  e.is_one = e.value > 1.0 - kIsOneThreshold;
  e.method = method;
  e.iterations = iterations;
  e.converged = converged;
  return e;
}

}  // namespace

Vector kron_apply(std::span<const Matrix* const> factors, const Vector& v, bool adjoint) {
  std::size_t total = 1;
  for (const Matrix* m : factors) {
    if (m->rows() != m->cols()) throw DimensionError("kron_apply: factor is not square");
    total = saturating_mul(total, static_cast<std::size_t>(m->rows()));
  }
  if (total != static_cast<std::size_t>(v.size())) throw DimensionError("kron_apply: vector length mismatch");

  Vector cur = v;
  Vector next(v.size());
  std::size_t left = 1;
  for (std::size_t j = 0; j < factors.size(); ++j) {
    const Matrix& m = *factors[j];
    const auto d = static_cast<std::size_t>(m.rows());
    const std::size_t right = total / (left * d);
    const auto rows = static_cast<Eigen::Index>(d);
    const auto cols = static_cast<Eigen::Index>(right);
    for (std::size_t l = 0; l < left; ++l) {
      Eigen::Map<const RowMajor> in(cur.data() + l * d * right, rows, cols);
      Eigen::Map<RowMajor> out(next.data() + l * d * right, rows, cols);
      if (adjoint) out.noalias() = m.adjoint() * in;
      else out.noalias() = m * in;
    }
    cur.swap(next);
    left *= d;
  }
  return cur;
}

Vector kron_apply(const std::vector<Matrix>& factors, const Vector& v) {
  std::vector<const Matrix*> ptrs;
  ptrs.reserve(factors.size());
  for (const auto& m : factors) ptrs.push_back(&m);
  return kron_apply(ptrs, v);
}

AveragedOperator::AveragedOperator(const IrrepCatalog& cat, PlancherelIndex rho, std::vector<ProductElement> gens,
                                   bool symmetrized)
    : cat_(&cat), rho_(std::move(rho)), gens_(std::move(gens)), symmetrized_(symmetrized), dim_(1) {
  if (gens_.empty()) throw std::invalid_argument("AveragedOperator: no generators");
  for (const auto& g : gens_)
    if (g.size() != rho_.size()) throw std::invalid_argument("AveragedOperator: generator length mismatch");
  for (auto i : rho_.indices) dim_ = saturating_mul(dim_, cat[i].dim);

  const BaseGroup& k = cat.group();
  auto add_term = [&](const ProductElement& g) {
    std::vector<const Matrix*> factors(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) factors[j] = &cat[rho_.indices[j]].matrices[g.coords[j]];
    terms_.push_back(std::move(factors));
  };
  for (const auto& g : gens_) {
    add_term(g);
    if (symmetrized_) add_term(product_inv(g, k));
  }
}

Vector AveragedOperator::apply(const Vector& v) const {
  if (dim_ > kPowerDimCap) throw DimensionError("operator dimension exceeds the matrix-free cap");
  Vector out = Vector::Zero(v.size());
  for (const auto& term : terms_) out += kron_apply(term, v);
  return out / static_cast<double>(terms_.size());
}

Vector AveragedOperator::apply_adjoint(const Vector& v) const {
  if (dim_ > kPowerDimCap) throw DimensionError("operator dimension exceeds the matrix-free cap");
  Vector out = Vector::Zero(v.size());
  for (const auto& term : terms_) out += kron_apply(term, v, true);
  return out / static_cast<double>(terms_.size());
}

Matrix AveragedOperator::dense() const {
  if (dim_ > kDenseDimCap) throw DimensionError("operator dimension exceeds the dense cap");
  const auto dim = static_cast<Eigen::Index>(dim_);
  Matrix sum = Matrix::Zero(dim, dim);
  for (const auto& term : terms_) {
    Matrix prod = Matrix::Identity(1, 1);
    for (const Matrix* f : term) prod = kron(prod, *f);
    sum += prod;
  }
  return sum / static_cast<double>(terms_.size());
}

std::string to_string(NormMethod m) {
  switch (m) {
    case NormMethod::certificate: return "certificate";
    case NormMethod::power: return "power";
    case NormMethod::dense: return "dense";
  }
  return "unknown";
}

// Restarted Lanczos on M^dagger M with full reorthogonalization. Each cycle
// builds a Krylov basis from the current Ritz vector; the residual
// ||M^dagger M x - theta x|| bounds the eigenvalue error, so the stopping
// rule does not depend on how fast successive estimates move.
NormEstimate average_norm_power(const AveragedOperator& op, const PowerOptions& opts) {
  if (op.dim() > kPowerDimCap) throw DimensionError("operator dimension exceeds the matrix-free cap");
  const auto dim = static_cast<Eigen::Index>(op.dim());
  const Eigen::Index m = std::min<Eigen::Index>(dim, 40);
  auto gram = [&](const Vector& x) { return op.apply_adjoint(op.apply(x)); };

  std::mt19937_64 rng(opts.seed);
  double best = 0.0;
  std::size_t total_iters = 0;
  bool converged = true;
  for (std::size_t r = 0; r < std::max<std::size_t>(opts.restarts, 1); ++r) {
    Vector x = random_start(op.dim(), rng);
    double theta = 0.0;
    bool done = false;
    std::size_t used = 0;
    while (used < opts.max_iters && !done) {
      Matrix q(dim, m);
      std::vector<double> alpha, beta;
      q.col(0) = x;
      Eigen::Index k = 0;
      double tail = 0.0;
      for (; k < m; ++k) {
        Vector w = gram(q.col(k));
        ++used;
        alpha.push_back(q.col(k).dot(w).real());
        for (int pass = 0; pass < 2; ++pass) w -= q.leftCols(k + 1) * (q.leftCols(k + 1).adjoint() * w);
        tail = w.norm();
        if (k + 1 == m || tail < 1e-14) break;
        beta.push_back(tail);
        q.col(k + 1) = w / tail;
      }
      const Eigen::Index size = static_cast<Eigen::Index>(alpha.size());
      Eigen::MatrixXd t = Eigen::MatrixXd::Zero(size, size);
      for (Eigen::Index i = 0; i < size; ++i) t(i, i) = alpha[i];
      for (Eigen::Index i = 0; i + 1 < size; ++i) t(i, i + 1) = t(i + 1, i) = beta[i];
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
      theta = es.eigenvalues()[size - 1];
      const Eigen::VectorXd y = es.eigenvectors().col(size - 1);
      x = q.leftCols(size) * y.cast<Complex>();
      x /= x.norm();
      const double residual = (gram(x) - theta * x).norm();
      ++used;
      done = residual <= opts.tol * std::max(1.0, std::abs(theta)) || tail < 1e-14;
    }
    total_iters += used;
    converged = converged && done;
    best = std::max(best, theta);
  }
  return finish(best, NormMethod::power, total_iters, converged);
}

NormEstimate average_norm_dense(const AveragedOperator& op) {
  const Matrix m = op.dense();
  const Matrix gram = m.adjoint() * m;
  Eigen::SelfAdjointEigenSolver<Matrix> es(gram, Eigen::EigenvaluesOnly);
  return finish(es.eigenvalues().maxCoeff(), NormMethod::dense, 1, true);
}

bool htilde_certificate(const PatternPartition& p, const IrrepCatalog& cat, const PlancherelIndex& rho) {
  if (rho.size() != p.n()) throw std::invalid_argument("htilde_certificate: length mismatch");
  std::vector<std::size_t> irreps;
  for (const auto& cls : p.classes) {
    irreps.clear();
    for (auto j : cls)
      if (rho.indices[j] != 0) irreps.push_back(rho.indices[j]);
    if (irreps.empty()) continue;
    if (diagonal_trivial_multiplicity(cat, irreps) == 0) return false;
  }
  return true;
}

bool trivial_certificate(const PatternPartition& p, std::optional<std::size_t> kappa, const SubgroupEnum* h,
                         const IrrepCatalog& cat, const PlancherelIndex& rho) {
  if (kappa && p.d_min >= *kappa) return true;
  if (htilde_certificate(p, cat, rho)) return true;
  return h != nullptr && restricted_trivial_multiplicity(cat, rho, *h) > 0;
}

double cayley_second_eigenvalue(const IrrepCatalog& cat, std::size_t n, const std::vector<ProductElement>& gens,
                                CayleyMethod method) {
  if (gens.empty()) throw std::invalid_argument("cayley_second_eigenvalue: no generators");
  for (const auto& g : gens)
    if (g.size() != n) throw std::invalid_argument("cayley_second_eigenvalue: generator length mismatch");
  const BaseGroup& k = cat.group();

  if (method == CayleyMethod::dense_adjacency) {
    std::size_t vertices = 1;
    for (std::size_t j = 0; j < n; ++j) vertices = saturating_mul(vertices, k.order());
    if (vertices > kCayleyVertexCap) throw DimensionError("Cayley graph exceeds the dense vertex cap");
    if (vertices == 1) return 0.0;

    // Vertex x is the mixed-radix number with coordinate 0 most significant.
    auto decode = [&](std::size_t x) {
      ProductElement e{std::vector<Elem>(n)};
      for (std::size_t j = n; j-- > 0;) {
        e.coords[j] = static_cast<Elem>(x % k.order());
        x /= k.order();
      }
      return e;
    };
    auto encode = [&](const ProductElement& e) {
      std::size_t x = 0;
      for (Elem c : e.coords) x = x * k.order() + c;
      return x;
    };

    const double w = 1.0 / (2.0 * static_cast<double>(gens.size()));
    Eigen::MatrixXd adj = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(vertices), static_cast<Eigen::Index>(vertices));
    for (std::size_t x = 0; x < vertices; ++x) {
      const ProductElement ex = decode(x);
      for (const auto& g : gens) {
        adj(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(encode(product_mul(ex, g, k)))) += w;
        adj(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(encode(product_mul(ex, product_inv(g, k), k)))) += w;
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(adj, Eigen::EigenvaluesOnly);
    // Ascending order; the last eigenvalue is the trivial one.
    const Eigen::VectorXd& ev = es.eigenvalues();
    double second = 0.0;
    for (Eigen::Index i = 0; i + 1 < ev.size(); ++i) second = std::max(second, std::abs(ev[i]));
    return std::min(second, 1.0);
  }

  std::size_t tuples = 1;
  for (std::size_t j = 0; j < n; ++j) tuples = saturating_mul(tuples, cat.size());
  if (tuples > kCayleyTupleCap) throw DimensionError("too many irrep tuples for the per-irrep method");
  double second = 0.0;
  PlancherelIndex rho{std::vector<std::size_t>(n, 0)};
  for (std::size_t code = 1; code < tuples; ++code) {
    std::size_t c = code;
    for (std::size_t j = n; j-- > 0;) {
      rho.indices[j] = c % cat.size();
      c /= cat.size();
    }
    const AveragedOperator op(cat, rho, gens, true);
    if (op.dim() > kDenseDimCap) throw DimensionError("irrep tuple dimension exceeds the dense cap");
    second = std::max(second, average_norm_dense(op).value);
  }
  return second;
}

}  // namespace resist
