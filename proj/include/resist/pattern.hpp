#pragma once

// Coordinate patterns of a generator list, the level-set partition of
// {0..n-1}, supports and conjugacy-class sizes in K^n.

#include <cstddef>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "resist/group.hpp"

namespace resist {

using BigInt = boost::multiprecision::cpp_int;

/// Level sets of the map i -> (h1_i, ..., ht_i).
struct PatternPartition {
  std::size_t t = 0;
  /// Concatenated patterns: pattern of coordinate i is [i*t, (i+1)*t).
  std::vector<Elem> pattern;
  /// Class id of each coordinate; ids follow first appearance.
  std::vector<std::size_t> class_of;
  /// Coordinates of each class, ascending.
  std::vector<std::vector<std::size_t>> classes;
  std::size_t ell = 0;
  std::size_t d_min = 0;

  std::size_t n() const { return class_of.size(); }
};

/// Throws std::invalid_argument on an empty list or mismatched lengths.
PatternPartition pattern_partition(const std::vector<ProductElement>& gens);

/// |K|^ell, the order of the subgroup of K^n constant on every class.
BigInt htilde_order(const PatternPartition& p, const BaseGroup& k);

/// Number of non-identity coordinates.
std::size_t support(const ProductElement& g);

/// Lower bound on the support of every non-identity element of the subgroup
/// generated by the partition's generators.
std::size_t support_lower_bound(const PatternPartition& p);

/// Size of the conjugacy class of g in K^n: product of coordinate class sizes.
BigInt conjugacy_class_size(const ProductElement& g, const BaseGroup& k);

}  // namespace resist
