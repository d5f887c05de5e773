#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qtensor/integer_matrix.hpp"

namespace qtensor {

/// Isomorphism type of a finitely generated abelian group:
/// C_{d1} x ... x C_{dk} x Z^free_rank with d1 | d2 | ... | dk and every di >= 2.
class AbelianGroupStructure {
 public:
  AbelianGroupStructure() = default;

  /// Canonicalizes an arbitrary list of cyclic orders. An order of 0 stands
  /// for an infinite cyclic factor; orders of 1 are dropped.
  static AbelianGroupStructure from_cyclic_orders(const std::vector<std::int64_t>& orders);
  /// Cokernel of an integer relation matrix (rows are relations).
  static AbelianGroupStructure from_relation_matrix(const IntegerMatrix& relations);
  /// C_m^rank (or Z^rank when m == 0).
  static AbelianGroupStructure homocyclic(std::int64_t m, std::int64_t rank);

  const std::vector<std::int64_t>& torsion() const { return torsion_; }
  std::int64_t free_rank() const { return free_rank_; }

  bool trivial() const { return torsion_.empty() && free_rank_ == 0; }
  bool finite() const { return free_rank_ == 0; }
  /// Group order; nullopt when infinite.
  std::optional<mpz_class> order() const;
  /// Minimal number of generators.
  std::int64_t rank() const { return static_cast<std::int64_t>(torsion_.size()) + free_rank_; }
  /// Cyclic orders with infinite factors encoded as 0, torsion first.
  std::vector<std::int64_t> cyclic_orders() const;

  AbelianGroupStructure operator*(const AbelianGroupStructure& other) const;

  /// "C2 x C4 x Z^2", or "1" for the trivial group.
  std::string to_string() const;

  bool operator==(const AbelianGroupStructure&) const = default;

 private:
  std::vector<std::int64_t> torsion_;
  std::int64_t free_rank_ = 0;
};

/// Structure of a finite abelian group of the given order from the counts
/// #{x : x^m = 1}, queried only for prime powers m dividing the order.
AbelianGroupStructure abelian_structure_from_counts(std::uint64_t order,
                                                    const std::function<std::uint64_t(std::uint64_t)>& solutions);

/// Tensor product over Z_q (over Z when q == 0) of two reduced abelian groups,
/// computed factor by factor: C_m (x) C_n = C_gcd(m,n) with Z acting as the
/// gcd identity, followed by a gcd against q when q >= 1.
AbelianGroupStructure abelian_tensor(const AbelianGroupStructure& a, const AbelianGroupStructure& b,
                                     std::int64_t q);

}  // namespace qtensor
