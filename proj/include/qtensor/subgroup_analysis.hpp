#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qtensor/abelian.hpp"
#include "qtensor/finite_group.hpp"
#include "qtensor/permutation_group.hpp"
#include "qtensor/regular_group.hpp"

namespace qtensor {

/// A subgroup of a RegularGroup as a sorted set of points.
class PointSubgroup {
 public:
  PointSubgroup() = default;
  PointSubgroup(std::size_t ambient_order, std::vector<Point> members);

  const std::vector<Point>& members() const { return members_; }
  std::size_t order() const { return members_.size(); }
  bool contains(Point x) const { return x < mask_.size() && mask_[x] != 0; }
  bool trivial() const { return members_.size() <= 1; }

  bool operator==(const PointSubgroup& o) const { return members_ == o.members_; }

 private:
  std::vector<Point> members_;
  std::vector<char> mask_;
};

/// x -> x^c for some fixed c, as a table over all points.
using PointAction = std::vector<Point>;

/// Conjugation tables for the given elements.
std::vector<PointAction> conjugation_actions(const RegularGroup& u, std::span<const Point> by);

PointSubgroup subgroup_closure(const RegularGroup& u, std::span<const Point> gens);
/// Smallest subgroup containing `gens` and closed under every action.
PointSubgroup normal_closure(const RegularGroup& u, std::span<const Point> gens, std::span<const PointAction> actions);
/// A short generating sequence, chosen greedily in point order.
std::vector<Point> subgroup_generators(const RegularGroup& u, const PointSubgroup& h);
/// [A, B] for A and B normalized by `actions`, which must include
/// conjugation by generators of A and B.
PointSubgroup commutator_subgroup(const RegularGroup& u, const PointSubgroup& a, const PointSubgroup& b,
                                  std::span<const PointAction> actions);
PointSubgroup intersection(const PointSubgroup& a, const PointSubgroup& b, std::size_t ambient_order);

bool is_abelian(const RegularGroup& u, const PointSubgroup& h);
/// Closed under conjugation by every action.
bool is_normalized(const PointSubgroup& h, std::span<const PointAction> actions);
/// Central in the group generated by the conjugating elements.
bool is_centralized(const PointSubgroup& h, std::span<const PointAction> actions);

struct PointSeries {
  std::vector<PointSubgroup> terms;
  std::optional<int> nilpotency_class;
};
/// gamma_1 = H, gamma_{i+1} = [gamma_i, H], down to the first repeat.
PointSeries lower_central_series(const RegularGroup& u, const PointSubgroup& h);

/// Invariants of H/L for L <= H normal with H/L abelian, from the counts
/// #{x in H : x^m in L}.
AbelianGroupStructure quotient_invariants(const RegularGroup& u, const PointSubgroup& h, const PointSubgroup& l);

struct SubgroupReport {
  std::uint64_t order = 1;
  bool is_abelian = true;
  /// Set when abelian and the order is within the cap.
  std::optional<AbelianGroupStructure> invariants;
  std::optional<std::uint64_t> derived_order;
  /// nullopt when not nilpotent (or beyond the cap).
  std::optional<int> nilpotency_class;
  /// d(H) = d(H/H'), for nilpotent H only.
  std::optional<std::size_t> min_generators;
  /// Invariants of H/H'.
  std::optional<AbelianGroupStructure> abelianization;
  bool capped = false;
};

inline constexpr std::size_t default_report_cap = 100'000;

SubgroupReport subgroup_report(const RegularGroup& u, const PointSubgroup& h);
SubgroupReport subgroup_report(const RegularGroup& u, std::span<const Point> gens);
/// Lists <gens> exhaustively when its order is at most `cap`; otherwise
/// only the order (from a stabilizer chain) is reported.
SubgroupReport subgroup_report(const PermutationGroup& g, std::span<const Permutation> gens,
                               std::size_t cap = default_report_cap);

/// Regular representation of a Cayley-table group on its generators;
/// `numbering` receives the point of each element.
RegularGroup regular_group(const FiniteGroup& g, std::vector<Point>* numbering = nullptr);

}  // namespace qtensor
