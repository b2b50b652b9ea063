#include "resist/group.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <limits>
#include <map>
#include <numeric>
#include <string>
#include <unordered_map>

#include "resist/pattern.hpp"

namespace resist {

namespace {

constexpr std::size_t kMaxOrder = 256;

using Perm = std::vector<int>;

// (a*b)(i) = a(b(i)): apply b first.
Perm compose(const Perm& a, const Perm& b) {
  Perm out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[b[i]];
  return out;
}

std::string cycle_label(const Perm& p) {
  std::string out;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == static_cast<int>(i)) continue;
    out += '(';
    std::size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      if (!first) out += ' ';
      out += std::to_string(j);
      first = false;
      j = static_cast<std::size_t>(p[j]);
    }
    out += ')';
  }
  return out.empty() ? "e" : out;
}

std::size_t fixed_points(const Perm& p) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < p.size(); ++i) c += p[i] == static_cast<int>(i);
  return c;
}

BaseGroup symmetric_group(int m) {
  const std::vector<Perm> perms = symmetric_group_permutations(m);

  std::map<Perm, Elem> index;
  for (std::size_t i = 0; i < perms.size(); ++i) index[perms[i]] = static_cast<Elem>(i);

  std::vector<std::vector<Elem>> mul(perms.size(), std::vector<Elem>(perms.size()));
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < perms.size(); ++a) {
    labels.push_back(cycle_label(perms[a]));
    for (std::size_t b = 0; b < perms.size(); ++b) mul[a][b] = index.at(compose(perms[a], perms[b]));
  }
  return BaseGroup("S" + std::to_string(m), std::move(mul), std::move(labels));
}

BaseGroup cyclic_group(std::size_t m) {
  std::vector<std::vector<Elem>> mul(m, std::vector<Elem>(m));
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < m; ++a) {
    labels.push_back(std::to_string(a));
    for (std::size_t b = 0; b < m; ++b) mul[a][b] = static_cast<Elem>((a + b) % m);
  }
  return BaseGroup("Z" + std::to_string(m), std::move(mul), std::move(labels));
}

// Dihedral group of order 2m; index k + m*e stands for r^k s^e.
BaseGroup dihedral_group(std::size_t m) {
  const std::size_t order = 2 * m;
  std::vector<std::vector<Elem>> mul(order, std::vector<Elem>(order));
  std::vector<std::string> labels(order);
  for (std::size_t a = 0; a < order; ++a) {
    const std::size_t ka = a % m, ea = a / m;
    labels[a] = (ka == 0 && ea == 0) ? "e" : "r^" + std::to_string(ka) + (ea ? " s" : "");
    if (ka == 0 && ea == 1) labels[a] = "s";
    for (std::size_t b = 0; b < order; ++b) {
      const std::size_t kb = b % m, eb = b / m;
      // r^ka s^ea r^kb s^eb = r^(ka +- kb) s^(ea+eb)
      const std::size_t k = ea ? (ka + m - kb) % m : (ka + kb) % m;
      mul[a][b] = static_cast<Elem>(k + m * ((ea + eb) % 2));
    }
  }
  return BaseGroup("D" + std::to_string(m), std::move(mul), std::move(labels));
}

std::size_t parse_positive(std::string_view digits, std::string_view whole) {
  std::size_t value = 0;
  const auto* end = digits.data() + digits.size();
  auto [ptr, ec] = std::from_chars(digits.data(), end, value);
  if (digits.empty() || ec != std::errc() || ptr != end)
    throw GroupError("malformed group parameter in '" + std::string(whole) + "'");
  return value;
}

}  // namespace

// Ordered by decreasing number of fixed points, then lexicographically, so
// the identity comes first and transpositions precede longer cycles.
std::vector<std::vector<int>> symmetric_group_permutations(int m) {
  Perm p(static_cast<std::size_t>(m));
  std::iota(p.begin(), p.end(), 0);
  std::vector<Perm> perms;
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  std::stable_sort(perms.begin(), perms.end(), [](const Perm& a, const Perm& b) {
    return fixed_points(a) > fixed_points(b);
  });
  return perms;
}

BaseGroup::BaseGroup(std::string id, std::vector<std::vector<Elem>> mul,
                     std::vector<std::string> labels)
    : id_(std::move(id)), labels_(std::move(labels)) {
  const std::size_t n = mul.size();
  if (n == 0 || n > kMaxOrder) throw GroupError(id_ + ": order out of range");
  if (labels_.size() != n) throw GroupError(id_ + ": label count mismatch");
  mul_.reserve(n * n);
  for (const auto& row : mul) {
    if (row.size() != n) throw GroupError(id_ + ": table is not square");
    for (Elem e : row) {
      if (e >= n) throw GroupError(id_ + ": table entry out of range");
      mul_.push_back(e);
    }
  }

  for (std::size_t a = 0; a < n; ++a) {
    if (mul_[a] != a || mul_[a * n] != a) throw GroupError(id_ + ": element 0 is not the identity");
  }
  inv_.assign(n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    std::size_t found = n;
    for (std::size_t b = 0; b < n; ++b) {
      if (mul_[a * n + b] == 0) {
        found = b;
        break;
      }
    }
    if (found == n || mul_[found * n + a] != 0) throw GroupError(id_ + ": missing two-sided inverse");
    inv_[a] = static_cast<Elem>(found);
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (mul_[mul_[a * n + b] * n + c] != mul_[a * n + mul_[b * n + c]])
          throw GroupError(id_ + ": table is not associative");

  class_of_.assign(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    if (class_of_[a] != n) continue;
    std::vector<Elem> cls;
    for (std::size_t g = 0; g < n; ++g) {
      const Elem c = this->mul(inv_[g], this->mul(static_cast<Elem>(a), static_cast<Elem>(g)));
      if (class_of_[c] == n) {
        class_of_[c] = classes_.size();
        cls.push_back(c);
      }
    }
    std::sort(cls.begin(), cls.end());
    classes_.push_back(std::move(cls));
  }

  for (std::size_t z = 0; z < n; ++z) {
    bool central = true;
    for (std::size_t g = 0; g < n && central; ++g) central = mul_[z * n + g] == mul_[g * n + z];
    if (central) center_.push_back(static_cast<Elem>(z));
  }
}

Elem BaseGroup::find(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return static_cast<Elem>(i);
  throw GroupError(id_ + ": no element labelled '" + std::string(label) + "'");
}

BaseGroup build_base_group(std::string_view spec) {
  if (spec == "S3") return symmetric_group(3);
  if (spec == "S4") return symmetric_group(4);
  if (!spec.empty() && spec[0] == 'Z') {
    const std::size_t m = parse_positive(spec.substr(1), spec);
    if (m < 1 || m > kMaxOrder) throw GroupError("cyclic order out of range in '" + std::string(spec) + "'");
    return cyclic_group(m);
  }
  if (!spec.empty() && spec[0] == 'D') {
    const std::size_t m = parse_positive(spec.substr(1), spec);
    if (m < 3 || 2 * m > kMaxOrder)
      throw GroupError("dihedral parameter must be >= 3 in '" + std::string(spec) + "'");
    return dihedral_group(m);
  }
  throw GroupError("unknown group identifier '" + std::string(spec) + "'");
}

ProductGroupSpec parse_product_group(std::string_view text) {
  const auto caret = text.find('^');
  if (caret == std::string_view::npos) return {std::string(text), std::nullopt};
  const std::size_t n = parse_positive(text.substr(caret + 1), text);
  if (n == 0) throw GroupError("product power must be positive in '" + std::string(text) + "'");
  return {std::string(text.substr(0, caret)), n};
}

ProductElement product_identity(std::size_t n) { return ProductElement{std::vector<Elem>(n, 0)}; }

bool is_identity(const ProductElement& a) {
  return std::all_of(a.coords.begin(), a.coords.end(), [](Elem e) { return e == 0; });
}

ProductElement product_mul(const ProductElement& a, const ProductElement& b, const BaseGroup& k) {
  if (a.size() != b.size()) throw std::invalid_argument("product_mul: length mismatch");
  ProductElement out{std::vector<Elem>(a.size())};
  for (std::size_t i = 0; i < a.size(); ++i) out.coords[i] = k.mul(a.coords[i], b.coords[i]);
  return out;
}

ProductElement product_inv(const ProductElement& a, const BaseGroup& k) {
  ProductElement out{std::vector<Elem>(a.size())};
  for (std::size_t i = 0; i < a.size(); ++i) out.coords[i] = k.inv(a.coords[i]);
  return out;
}

std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound <= 1) return 0;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

ProductElement uniform_product_element(const BaseGroup& k, std::size_t n, std::mt19937_64& rng) {
  ProductElement out{std::vector<Elem>(n)};
  for (auto& c : out.coords) c = static_cast<Elem>(uniform_index(rng, k.order()));
  return out;
}

SubgroupEnum::SubgroupEnum(std::vector<ProductElement> gens, std::vector<std::size_t> class_of,
                           std::size_t ell, std::vector<Elem> compressed)
    : gens_(std::move(gens)),
      class_of_(std::move(class_of)),
      ell_(ell),
      compressed_(std::move(compressed)) {}

ProductElement SubgroupEnum::element(std::size_t i) const {
  ProductElement out{std::vector<Elem>(n())};
  for (std::size_t j = 0; j < n(); ++j) out.coords[j] = value(i, class_of_[j]);
  return out;
}

std::vector<ProductElement> SubgroupEnum::elements() const {
  std::vector<ProductElement> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back(element(i));
  return out;
}

std::optional<SubgroupEnum> subgroup_closure(const BaseGroup& k,
                                             const std::vector<ProductElement>& gens,
                                             std::size_t cap) {
  if (gens.empty()) throw std::invalid_argument("subgroup_closure: empty generator list");
  if (cap == 0) throw std::invalid_argument("subgroup_closure: cap must be positive");
  const PatternPartition part = pattern_partition(gens);
  const std::size_t ell = part.ell;

  // Generators and their inverses, compressed to one value per class.
  std::vector<std::vector<Elem>> steps;
  for (const auto& g : gens) {
    std::vector<Elem> fwd(ell), back(ell);
    for (std::size_t c = 0; c < ell; ++c) {
      fwd[c] = g.coords[part.classes[c].front()];
      back[c] = k.inv(fwd[c]);
    }
    steps.push_back(std::move(fwd));
    steps.push_back(std::move(back));
  }

  auto key_of = [](const Elem* data, std::size_t len) {
    return std::string(reinterpret_cast<const char*>(data), len * sizeof(Elem));
  };

  std::vector<Elem> flat(ell, 0);
  std::unordered_map<std::string, std::size_t> seen;
  seen.emplace(key_of(flat.data(), ell), 0);
  std::vector<Elem> next(ell);
  for (std::size_t head = 0; head * ell < flat.size(); ++head) {
    for (const auto& step : steps) {
      for (std::size_t c = 0; c < ell; ++c) next[c] = k.mul(flat[head * ell + c], step[c]);
      if (seen.emplace(key_of(next.data(), ell), seen.size()).second) {
        if (seen.size() > cap) return std::nullopt;
        flat.insert(flat.end(), next.begin(), next.end());
      }
    }
  }
  return SubgroupEnum(gens, part.class_of, ell, std::move(flat));
}

}  // namespace resist
