#include "resist/pattern.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace resist {

PatternPartition pattern_partition(const std::vector<ProductElement>& gens) {
  if (gens.empty()) throw std::invalid_argument("pattern_partition: empty generator list");
  const std::size_t n = gens.front().size();
  for (const auto& g : gens)
    if (g.size() != n) throw std::invalid_argument("pattern_partition: generator lengths differ");

  PatternPartition p;
  p.t = gens.size();
  p.pattern.resize(n * p.t);
  p.class_of.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t m = 0; m < p.t; ++m) p.pattern[i * p.t + m] = gens[m].coords[i];

  // Patterns hashed as fixed-width byte strings of the t indices.
  std::unordered_map<std::string, std::size_t> ids;
  for (std::size_t i = 0; i < n; ++i) {
    std::string key(reinterpret_cast<const char*>(p.pattern.data() + i * p.t), p.t * sizeof(Elem));
    auto [it, inserted] = ids.emplace(std::move(key), p.classes.size());
    if (inserted) p.classes.emplace_back();
    p.classes[it->second].push_back(i);
    p.class_of[i] = it->second;
  }
  p.ell = p.classes.size();
  p.d_min = n;
  for (const auto& c : p.classes) p.d_min = std::min(p.d_min, c.size());
  return p;
}

BigInt htilde_order(const PatternPartition& p, const BaseGroup& k) {
  return boost::multiprecision::pow(BigInt(k.order()), static_cast<unsigned>(p.ell));
}

std::size_t support(const ProductElement& g) {
  return static_cast<std::size_t>(std::count_if(g.coords.begin(), g.coords.end(), [](Elem e) { return e != 0; }));
}

std::size_t support_lower_bound(const PatternPartition& p) { return p.d_min; }

BigInt conjugacy_class_size(const ProductElement& g, const BaseGroup& k) {
  BigInt out = 1;
  for (Elem e : g.coords) out *= k.class_size(e);
  return out;
}

}  // namespace resist
