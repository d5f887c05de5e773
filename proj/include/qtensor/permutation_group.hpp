#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "qtensor/coset_enumeration.hpp"

namespace qtensor {

/// Images of 0..n-1. Products act left to right: (a * b)[i] = b[a[i]].
using Permutation = std::vector<std::uint32_t>;

Permutation identity_permutation(std::size_t degree);
Permutation compose(const Permutation& a, const Permutation& b);
Permutation inverse(const Permutation& p);
bool is_identity(const Permutation& p);
bool is_bijection(const Permutation& p, std::size_t degree);

/// A permutation group with a base and strong generating set built by the
/// deterministic Schreier-Sims algorithm. Transversals are kept as Schreier
/// vectors, so memory stays linear in the degree per base point.
class PermutationGroup {
 public:
  PermutationGroup() = default;
  /// `base_prefix` fixes the first base points (used to stabilize a block).
  PermutationGroup(std::size_t degree, std::vector<Permutation> generators, std::vector<std::uint32_t> base_prefix = {});
  /// Generator g acts as column 2g of a complete table.
  static PermutationGroup from_coset_table(const CosetTable& t);

  std::size_t degree() const { return degree_; }
  const std::vector<Permutation>& generators() const { return generators_; }
  std::vector<std::uint32_t> base() const;
  /// Product of the fundamental orbit lengths.
  mpz_class order() const;
  std::vector<std::size_t> orbit_lengths() const;
  bool contains(const Permutation& p) const;
  /// Strong generators fixing the first `level` base points.
  std::vector<Permutation> stabilizer_generators(std::size_t level) const;

 private:
  struct Level {
    std::uint32_t point = 0;
    std::vector<std::size_t> gens;  // indices into strong_
    std::vector<std::uint32_t> orbit;
    std::vector<std::int32_t> label;  // strong generator reaching the point, -1 outside, -2 for the base point
  };

  void rebuild_orbit(Level& l) const;
  /// Sifts p from `from`; returns the residue and the level it stopped at.
  std::pair<Permutation, std::size_t> strip(Permutation p, std::size_t from) const;
  Permutation transversal(const Level& l, std::uint32_t point) const;
  void add_strong(std::size_t from, std::size_t to, Permutation p);

  std::size_t degree_ = 0;
  std::vector<Permutation> generators_;
  std::vector<Permutation> strong_, strong_inv_;
  std::vector<Level> levels_;
};

/// Generators of the kernel of the homomorphism onto the group generated by
/// `target_action` (one permutation of an auxiliary set per generator of
/// g). Throws InputError when the assignment is not a homomorphism.
std::vector<Permutation> kernel_of_action(const PermutationGroup& g, std::span<const Permutation> target_action);

}  // namespace qtensor
