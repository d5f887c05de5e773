#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qtensor/abelian.hpp"

namespace qtensor {

using ElementId = std::uint32_t;

/// A finite group stored as its full Cayley table.
///
/// Immutable after construction. from_table() checks closure, the Latin
/// square property, the identity, inverses and associativity (Light's test
/// over the generating sequence) and throws InputError naming the failing
/// axiom together with a witness.
class FiniteGroup {
 public:
  FiniteGroup() = default;

  /// `table[a * order + b]` is the index of a*b. When `generators` is empty a
  /// greedy generating sequence is chosen in element-index order.
  static FiniteGroup from_table(std::size_t order, std::vector<ElementId> table,
                                std::vector<ElementId> generators, std::string name,
                                std::size_t max_order = 10000);

  std::size_t order() const { return order_; }
  ElementId identity() const { return identity_; }
  const std::vector<ElementId>& generators() const { return generators_; }
  const std::string& name() const { return name_; }
  std::span<const ElementId> table() const { return table_; }

  ElementId mul(ElementId a, ElementId b) const { return table_[static_cast<std::size_t>(a) * order_ + b]; }
  ElementId inv(ElementId a) const { return inverse_[a]; }
  ElementId pow(ElementId a, std::int64_t n) const;
  /// a^b = b^-1 a b
  ElementId conj(ElementId a, ElementId b) const { return mul(mul(inv(b), a), b); }
  /// [a, b] = a^-1 b^-1 a b
  ElementId comm(ElementId a, ElementId b) const { return mul(mul(inv(a), inv(b)), mul(a, b)); }

  std::int64_t element_order(ElementId a) const { return orders_[a]; }
  std::int64_t exponent() const;
  bool is_abelian() const;

 private:
  std::size_t order_ = 0;
  std::vector<ElementId> table_;
  std::vector<ElementId> inverse_;
  std::vector<std::int64_t> orders_;
  ElementId identity_ = 0;
  std::vector<ElementId> generators_;
  std::string name_;
};

/// A subgroup of a FiniteGroup, as a sorted set of element indices.
class SubgroupElements {
 public:
  SubgroupElements() = default;
  SubgroupElements(const FiniteGroup& parent, std::vector<ElementId> members);

  const std::vector<ElementId>& members() const { return members_; }
  std::size_t order() const { return members_.size(); }
  bool contains(ElementId x) const { return x < mask_.size() && mask_[x] != 0; }
  bool trivial() const { return members_.size() <= 1; }
  const FiniteGroup* parent() const { return parent_; }

  bool operator==(const SubgroupElements& o) const { return members_ == o.members_; }

 private:
  const FiniteGroup* parent_ = nullptr;
  std::vector<ElementId> members_;
  std::vector<char> mask_;
};

SubgroupElements whole_group(const FiniteGroup& g);
SubgroupElements trivial_subgroup(const FiniteGroup& g);
SubgroupElements subgroup_generated(const FiniteGroup& g, std::span<const ElementId> gens);
/// Smallest normal subgroup of `g` containing `gens`.
SubgroupElements normal_closure(const FiniteGroup& g, std::span<const ElementId> gens);
/// [A, B] for normal subgroups A and B.
SubgroupElements commutator_subgroup(const FiniteGroup& g, const SubgroupElements& a, const SubgroupElements& b);
SubgroupElements derived_subgroup(const FiniteGroup& g);
SubgroupElements center(const FiniteGroup& g);
/// G'G^q, i.e. G' together with all q-th powers; G' itself when q == 0.
SubgroupElements power_commutator_subgroup(const FiniteGroup& g, std::int64_t q);
bool is_normal(const FiniteGroup& g, const SubgroupElements& n);

struct LowerCentralSeries {
  /// gamma_1 = G, gamma_2 = G', ... down to the first repeated term.
  std::vector<SubgroupElements> terms;
  /// Nilpotency class, or nullopt if the series stabilizes above 1.
  std::optional<int> nilpotency_class;
};

LowerCentralSeries lower_central_series(const FiniteGroup& g);

/// Order of x G' in G/G'.
std::int64_t coset_order(const FiniteGroup& g, ElementId x);

struct QuotientGroup {
  FiniteGroup group;
  /// Element of G -> element of G/N.
  std::vector<ElementId> projection;
  /// Smallest element of G in each coset.
  std::vector<ElementId> representative;
};

/// G/N materialized through its coset table. Generators of the quotient are
/// the distinct nontrivial images of the generators of G.
QuotientGroup quotient(const FiniteGroup& g, const SubgroupElements& n, std::string name = {});

/// Invariants of an abelian group, counted from element orders.
AbelianGroupStructure abelian_invariants(const FiniteGroup& g);
QuotientGroup abelianization(const FiniteGroup& g);
/// G/G'G^q; the abelianization when q == 0.
QuotientGroup reduced_abelianization(const FiniteGroup& g, std::int64_t q);

/// Elements b1..bk of an abelian group with o(bi) equal to the invariant
/// factors and <b1,...,bk> their internal direct product.
std::vector<ElementId> abelian_basis(const FiniteGroup& g);

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b, std::size_t max_order = 10000);

}  // namespace qtensor
