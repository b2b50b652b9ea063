#pragma once

// Finite base groups K as explicit multiplication tables, elements of K^n,
// and subgroup generation by closure.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace resist {

/// Index of a base-group element; 0 is always the identity.
using Elem = std::uint16_t;

class GroupError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A finite group given by its full multiplication table.
///
/// Construction validates the group axioms exhaustively and derives the
/// conjugacy classes and the center. Immutable afterwards.
class BaseGroup {
 public:
  /// `mul[a][b]` is the index of a*b. Element 0 must be the identity.
  BaseGroup(std::string id, std::vector<std::vector<Elem>> mul,
            std::vector<std::string> labels);

  const std::string& id() const { return id_; }
  std::size_t order() const { return inv_.size(); }
  Elem identity() const { return 0; }
  Elem mul(Elem a, Elem b) const { return mul_[static_cast<std::size_t>(a) * order() + b]; }
  Elem inv(Elem a) const { return inv_[a]; }
  const std::string& label(Elem a) const { return labels_[a]; }

  /// Conjugacy classes ordered by their smallest member; members ascending.
  const std::vector<std::vector<Elem>>& classes() const { return classes_; }
  std::size_t class_of(Elem a) const { return class_of_[a]; }
  std::size_t class_size(Elem a) const { return classes_[class_of_[a]].size(); }
  const std::vector<Elem>& center() const { return center_; }

  bool is_abelian() const { return center_.size() == order(); }
  bool has_trivial_center() const { return center_.size() == 1; }
  /// Nonabelian with trivial center: usable as K for the resistance results.
  bool is_admissible() const { return !is_abelian() && has_trivial_center(); }

  /// Index of the element with the given label.
  Elem find(std::string_view label) const;

 private:
  std::string id_;
  std::vector<Elem> mul_;
  std::vector<Elem> inv_;
  std::vector<std::string> labels_;
  std::vector<std::vector<Elem>> classes_;
  std::vector<std::size_t> class_of_;
  std::vector<Elem> center_;
};

/// Builds a catalog group: "Z<m>" (m >= 1), "S3", "S4", "D<m>" (m >= 3,
/// order 2m). Throws GroupError on unknown or malformed identifiers.
BaseGroup build_base_group(std::string_view spec);

/// Permutations of {0..m-1} in the element order used by the catalog group
/// "S<m>"; perm[i] is the image of point i.
std::vector<std::vector<int>> symmetric_group_permutations(int m);

/// A group identifier with an optional power, as written on the command line
/// ("S3^60").
struct ProductGroupSpec {
  std::string base;
  std::optional<std::size_t> n;
};
ProductGroupSpec parse_product_group(std::string_view text);

/// An element of K^n.
struct ProductElement {
  std::vector<Elem> coords;

  std::size_t size() const { return coords.size(); }
  bool operator==(const ProductElement&) const = default;
};

ProductElement product_identity(std::size_t n);
bool is_identity(const ProductElement& a);
ProductElement product_mul(const ProductElement& a, const ProductElement& b, const BaseGroup& k);
ProductElement product_inv(const ProductElement& a, const BaseGroup& k);

/// Uniform index in [0, bound) by rejection; stable across standard
/// libraries, unlike std::uniform_int_distribution.
std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t bound);

ProductElement uniform_product_element(const BaseGroup& k, std::size_t n, std::mt19937_64& rng);

/// Subgroup of K^n generated by `gens`, stored compressed.
///
/// Every element is constant on the level sets of the generator pattern, so
/// each is kept as a vector over the ell class representatives.
class SubgroupEnum {
 public:
  SubgroupEnum(std::vector<ProductElement> gens, std::vector<std::size_t> class_of,
               std::size_t ell, std::vector<Elem> compressed);

  std::size_t size() const { return compressed_.size() / ell_; }
  std::size_t n() const { return class_of_.size(); }
  std::size_t ell() const { return ell_; }
  const std::vector<ProductElement>& generators() const { return gens_; }
  /// Pattern class of each coordinate.
  const std::vector<std::size_t>& class_of() const { return class_of_; }

  /// Value of element `i` on pattern class `c`.
  Elem value(std::size_t i, std::size_t c) const { return compressed_[i * ell_ + c]; }
  /// Element `i` expanded to length n. Element 0 is the identity.
  ProductElement element(std::size_t i) const;
  std::vector<ProductElement> elements() const;

 private:
  std::vector<ProductElement> gens_;
  std::vector<std::size_t> class_of_;
  std::size_t ell_;
  std::vector<Elem> compressed_;
};

inline constexpr std::size_t kDefaultClosureCap = 200000;

/// Breadth-first closure under the generators and their inverses. Returns
/// nullopt when more than `cap` elements would be needed.
std::optional<SubgroupEnum> subgroup_closure(const BaseGroup& k,
                                             const std::vector<ProductElement>& gens,
                                             std::size_t cap = kDefaultClosureCap);

}  // namespace resist
