#include "resist/repr.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

namespace resist {

namespace {

constexpr double kMatrixTolerance = 1e-10;
constexpr double kCharacterTolerance = 1e-9;

UnitaryRep make_rep(const BaseGroup& k, std::size_t index, std::vector<Matrix> matrices) {
  UnitaryRep r;
  r.name = k.id() + ":" + std::to_string(index);
  r.index = index;
  r.dim = static_cast<std::size_t>(matrices.front().rows());
  r.matrices = std::move(matrices);
  r.character.reserve(k.order());
  for (const auto& m : r.matrices) r.character.push_back(m.trace());

  const Matrix id = Matrix::Identity(r.dim, r.dim);
  r.is_faithful = true;
  for (std::size_t g = 1; g < k.order(); ++g)
    if ((r.matrices[g] - id).cwiseAbs().maxCoeff() < kMatrixTolerance) r.is_faithful = false;

  std::vector<long long> ints;
  for (const auto& c : r.character) {
    const double re = std::round(c.real());
    if (std::abs(c.imag()) > 1e-12 || std::abs(c.real() - re) > 1e-12) return r;
    ints.push_back(static_cast<long long>(re));
  }
  r.integer_character = std::move(ints);
  return r;
}

Matrix scalar(Complex z) {
  Matrix m(1, 1);
  m(0, 0) = z;
  return m;
}

// Orthonormal basis (columns) of the complement of the all-ones vector.
Eigen::MatrixXd helmert(int m) {
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(m, m - 1);
  for (int k = 1; k < m; ++k) {
    const double s = std::sqrt(static_cast<double>(k) * (k + 1));
    for (int i = 0; i < k; ++i) b(i, k - 1) = 1.0 / s;
    b(k, k - 1) = -k / s;
  }
  return b;
}

// Permutation representation restricted to the complement of the invariant
// line; real orthogonal by construction.
Matrix standard_matrix(const std::vector<int>& perm) {
  const int m = static_cast<int>(perm.size());
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) p(perm[i], i) = 1.0;
  const Eigen::MatrixXd b = helmert(m);
  return (b.transpose() * p * b).cast<Complex>();
}

int parity(const std::vector<int>& perm) {
  std::vector<bool> seen(perm.size(), false);
  std::size_t cycles = 0;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    ++cycles;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(perm[j])) seen[j] = true;
  }
  return (perm.size() - cycles) % 2 == 0 ? 1 : -1;
}

// Action of a permutation of {0,1,2,3} on the three pair partitions
// {01|23}, {02|13}, {03|12}, indexed by the partner of 0 minus one.
std::vector<int> pair_partition_action(const std::vector<int>& s) {
  std::vector<int> out(3);
  for (int q = 0; q < 3; ++q) {
    const int p = q + 1;
    int rest[2], r = 0;
    for (int i = 1; i < 4; ++i)
      if (i != p) rest[r++] = i;
    int partner;
    if (s[0] == 0) partner = s[p];
    else if (s[p] == 0) partner = s[0];
    else if (s[rest[0]] == 0) partner = s[rest[1]];
    else partner = s[rest[0]];
    out[q] = partner - 1;
  }
  return out;
}

std::vector<std::vector<Matrix>> symmetric_irreps(int m) {
  const auto perms = symmetric_group_permutations(m);
  std::vector<std::vector<Matrix>> reps(m == 3 ? 3 : 5);
  for (const auto& p : perms) {
    const int sgn = parity(p);
    reps[0].push_back(scalar(1.0));
    reps[1].push_back(scalar(static_cast<double>(sgn)));
    if (m == 3) {
      reps[2].push_back(standard_matrix(p));
    } else {
      reps[2].push_back(standard_matrix(pair_partition_action(p)));
      const Matrix st = standard_matrix(p);
      reps[3].push_back(st);
      reps[4].push_back(st * static_cast<double>(sgn));
    }
  }
  return reps;
}

std::vector<std::vector<Matrix>> cyclic_irreps(std::size_t m) {
  std::vector<std::vector<Matrix>> reps(m);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t a = 0; a < m; ++a)
      reps[j].push_back(scalar(std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>((j * a) % m) /
                                                   static_cast<double>(m))));
  return reps;
}

// Element index k + m*e stands for r^k s^e.
std::vector<std::vector<Matrix>> dihedral_irreps(std::size_t m) {
  std::vector<std::pair<double, double>> linear = {{1, 1}, {1, -1}};
  if (m % 2 == 0) {
    linear.push_back({-1, 1});
    linear.push_back({-1, -1});
  }
  std::vector<std::vector<Matrix>> reps;
  for (auto [rv, sv] : linear) {
    std::vector<Matrix> mats;
    for (std::size_t a = 0; a < 2 * m; ++a)
      mats.push_back(scalar(std::pow(rv, static_cast<double>(a % m)) * (a / m ? sv : 1.0)));
    reps.push_back(std::move(mats));
  }
  for (std::size_t j = 1; 2 * j < m; ++j) {
    std::vector<Matrix> mats;
    for (std::size_t a = 0; a < 2 * m; ++a) {
      const double theta = 2.0 * std::numbers::pi * static_cast<double>((j * (a % m)) % m) / static_cast<double>(m);
      Eigen::Matrix2d rot;
      rot << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
      if (a / m) rot = rot * Eigen::Vector2d(1.0, -1.0).asDiagonal();
      mats.push_back(rot.cast<Complex>());
    }
    reps.push_back(std::move(mats));
  }
  return reps;
}

void verify(const BaseGroup& k, const std::vector<UnitaryRep>& reps) {
  const std::size_t n = k.order();
  std::size_t sum_sq = 0;
  for (const auto& r : reps) {
    sum_sq += r.dim * r.dim;
    const Matrix id = Matrix::Identity(r.dim, r.dim);
    for (std::size_t g = 0; g < n; ++g) {
      const Matrix& m = r.matrices[g];
      if ((m * m.adjoint() - id).cwiseAbs().maxCoeff() > kMatrixTolerance)
        throw std::logic_error(r.name + ": matrix is not unitary");
      for (std::size_t h = 0; h < n; ++h) {
        if ((r.matrices[k.mul(static_cast<Elem>(g), static_cast<Elem>(h))] - m * r.matrices[h])
                .cwiseAbs()
                .maxCoeff() > kMatrixTolerance)
          throw std::logic_error(r.name + ": not a homomorphism");
      }
    }
  }
  if (sum_sq != n) throw std::logic_error(k.id() + ": irrep dimensions do not satisfy sum d^2 = |K|");
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (std::size_t j = 0; j < reps.size(); ++j) {
      const Complex ip = inner_product(reps[i].character, reps[j].character, k);
      if (std::abs(ip - Complex(i == j ? 1.0 : 0.0)) > kCharacterTolerance)
        throw std::logic_error(k.id() + ": characters are not orthonormal");
    }
}

template <typename Int>
Int sum_class_products(const std::vector<std::vector<Int>>& per_class, const SubgroupEnum& h) {
  Int total = 0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    Int term = 1;
    for (std::size_t c = 0; c < h.ell() && term != 0; ++c) term *= per_class[c][h.value(i, c)];
    total += term;
  }
  return total;
}

}  // namespace

IrrepCatalog::IrrepCatalog(BaseGroup k) : group_(std::move(k)) {
  const std::string& id = group_.id();
  std::vector<std::vector<Matrix>> mats;
  if (id == "S3") mats = symmetric_irreps(3);
  else if (id == "S4") mats = symmetric_irreps(4);
  else if (id[0] == 'Z') mats = cyclic_irreps(group_.order());
  else if (id[0] == 'D') mats = dihedral_irreps(group_.order() / 2);
  else throw GroupError("no irrep catalog for group '" + id + "'");
  for (std::size_t i = 0; i < mats.size(); ++i) reps_.push_back(make_rep(group_, i, std::move(mats[i])));
  verify(group_, reps_);
}

const UnitaryRep& IrrepCatalog::find(std::string_view name) const {
  std::string_view digits = name;
  if (const auto colon = name.find(':'); colon != std::string_view::npos) {
    if (name.substr(0, colon) != group_.id())
      throw std::invalid_argument("irrep '" + std::string(name) + "' does not belong to " + group_.id());
    digits = name.substr(colon + 1);
  }
  std::size_t idx = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), idx);
  if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size() || idx >= reps_.size())
    throw std::invalid_argument("unknown irrep '" + std::string(name) + "' for " + group_.id());
  return reps_[idx];
}

IrrepCatalog irrep_catalog(const BaseGroup& k) { return IrrepCatalog(k); }

Complex inner_product(const Character& chi, const Character& psi, const BaseGroup& k) {
  if (chi.size() != k.order() || psi.size() != k.order())
    throw std::invalid_argument("inner_product: character length mismatch");
  Complex sum = 0;
  for (std::size_t g = 0; g < chi.size(); ++g) sum += chi[g] * std::conj(psi[g]);
  return sum / static_cast<double>(k.order());
}

long long round_multiplicity(Complex value) {
  const double r = std::round(value.real());
  if (std::abs(value - Complex(r)) > kResidueTolerance)
    throw ResidueTooLarge("multiplicity " + std::to_string(value.real()) + "+" + std::to_string(value.imag()) +
                          "i is not an integer");
  if (r < 0) throw ResidueTooLarge("negative multiplicity");
  return static_cast<long long>(r);
}

long long multiplicity(const Character& irrep_char, const Character& any_char, const BaseGroup& k) {
  return round_multiplicity(inner_product(any_char, irrep_char, k));
}

PlancherelIndex uniform_index_tuple(std::size_t irrep, std::size_t n) {
  return PlancherelIndex{std::vector<std::size_t>(n, irrep)};
}

BigInt dimension(const IrrepCatalog& cat, const PlancherelIndex& rho) {
  BigInt d = 1;
  for (auto i : rho.indices) d *= cat[i].dim;
  return d;
}

double dimension_as_double(const IrrepCatalog& cat, const PlancherelIndex& rho) {
  double d = 1;
  for (auto i : rho.indices) d *= static_cast<double>(cat[i].dim);
  return d;
}

Complex product_character_at(const IrrepCatalog& cat, const PlancherelIndex& rho, const ProductElement& g) {
  if (rho.size() != g.size()) throw std::invalid_argument("product_character_at: length mismatch");
  Complex out = 1;
  for (std::size_t j = 0; j < g.size(); ++j) out *= cat[rho.indices[j]].character[g.coords[j]];
  return out;
}

PlancherelIndex plancherel_sample(const IrrepCatalog& cat, std::size_t n, std::mt19937_64& rng) {
  PlancherelIndex out{std::vector<std::size_t>(n)};
  for (auto& idx : out.indices) {
    // An index in [0, |K|) lands in irrep i's block of d_i^2 slots.
    std::uint64_t u = uniform_index(rng, cat.group().order());
    std::size_t i = 0;
    while (u >= cat[i].dim * cat[i].dim) {
      u -= cat[i].dim * cat[i].dim;
      ++i;
    }
    idx = i;
  }
  return out;
}

BigInt restricted_trivial_multiplicity(const IrrepCatalog& cat, const PlancherelIndex& rho, const SubgroupEnum& h) {
  if (rho.size() != h.n()) throw std::invalid_argument("restricted_trivial_multiplicity: length mismatch");
  const std::size_t order = cat.group().order();
  bool integral = true;
  double log2_bound = std::log2(static_cast<double>(h.size()));
  for (auto i : rho.indices) {
    integral = integral && cat[i].integer_character.has_value();
    log2_bound += std::log2(static_cast<double>(cat[i].dim));
  }

  if (integral) {
    if (log2_bound < 120.0) {
      std::vector<std::vector<__int128>> per_class(h.ell(), std::vector<__int128>(order, 1));
      for (std::size_t j = 0; j < h.n(); ++j) {
        const auto& chi = *cat[rho.indices[j]].integer_character;
        for (std::size_t x = 0; x < order; ++x) per_class[h.class_of()[j]][x] *= chi[x];
      }
      const __int128 total = sum_class_products(per_class, h);
      const __int128 size = static_cast<__int128>(h.size());
      if (total % size != 0 || total < 0) throw ResidueTooLarge("restricted multiplicity is not a nonnegative integer");
      const __int128 q = total / size;
      BigInt out = static_cast<long long>(q >> 62);
      out <<= 62;
      out += static_cast<long long>(q & ((static_cast<__int128>(1) << 62) - 1));
      return out;
    }
    std::vector<std::vector<BigInt>> per_class(h.ell(), std::vector<BigInt>(order, 1));
    for (std::size_t j = 0; j < h.n(); ++j) {
      const auto& chi = *cat[rho.indices[j]].integer_character;
      for (std::size_t x = 0; x < order; ++x) per_class[h.class_of()[j]][x] *= chi[x];
    }
    const BigInt total = sum_class_products(per_class, h);
    if (total % h.size() != 0 || total < 0) throw ResidueTooLarge("restricted multiplicity is not a nonnegative integer");
    return total / h.size();
  }

  std::vector<std::vector<Complex>> per_class(h.ell(), std::vector<Complex>(order, 1.0));
  for (std::size_t j = 0; j < h.n(); ++j) {
    const auto& chi = cat[rho.indices[j]].character;
    for (std::size_t x = 0; x < order; ++x) per_class[h.class_of()[j]][x] *= chi[x];
  }
  std::complex<long double> total = 0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    Complex term = 1;
    for (std::size_t c = 0; c < h.ell(); ++c) term *= per_class[c][h.value(i, c)];
    total += std::complex<long double>(term.real(), term.imag());
  }
  total /= static_cast<long double>(h.size());
  return round_multiplicity(Complex(static_cast<double>(total.real()), static_cast<double>(total.imag())));
}

BigInt diagonal_trivial_multiplicity(const IrrepCatalog& cat, std::span<const std::size_t> irreps) {
  const std::size_t order = cat.group().order();
  bool integral = true;
  for (auto i : irreps) integral = integral && cat[i].integer_character.has_value();
  if (integral) {
    BigInt total = 0;
    for (std::size_t x = 0; x < order; ++x) {
      BigInt term = 1;
      for (auto i : irreps) {
        term *= (*cat[i].integer_character)[x];
        if (term == 0) break;
      }
      total += term;
    }
    if (total % order != 0 || total < 0) throw ResidueTooLarge("diagonal multiplicity is not a nonnegative integer");
    return total / order;
  }
  Complex total = 0;
  for (std::size_t x = 0; x < order; ++x) {
    Complex term = 1;
    for (auto i : irreps) term *= cat[i].character[x];
    total += term;
  }
  return round_multiplicity(total / static_cast<double>(order));
}

}  // namespace resist
