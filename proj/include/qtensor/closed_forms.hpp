#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qtensor/abelian.hpp"
#include "qtensor/finite_group.hpp"

namespace qtensor {

/// A group known only partly: an explicit abelian factor times named
/// factors whose orders are not computed.
struct SymbolicStructure {
  AbelianGroupStructure abelian_part;
  std::vector<std::string> residual_factors;
  /// Named integer ranks, in insertion order.
  std::vector<std::pair<std::string, mpz_class>> rank_notes;
  /// Remarks on how a value was obtained, e.g. special cases.
  std::vector<std::string> notes;

  /// "Z^3 x F_2'" style rendering.
  std::string to_string() const;
  const mpz_class* rank(std::string_view name) const;
};

nlohmann::ordered_json to_json(const SymbolicStructure& s);

/// q-tensor square of the cyclic group of order n, with n == 0 meaning
/// infinite cyclic.
///
/// For q == 0 no hat factor exists and the result is C_n (C_inf for n == 0);
/// the ν enumeration of small cyclic groups confirms this reading.
AbelianGroupStructure cyclic_tensor(std::int64_t n, std::int64_t q);

/// F_n (x)^q F_n.
SymbolicStructure free_tensor(std::int64_t n, std::int64_t q);
/// N_{n,c} (x)^q N_{n,c} for the free nilpotent group of rank n and class c.
SymbolicStructure freenil_tensor(std::int64_t n, std::int64_t c, std::int64_t q);
/// N_{n,2} (x)^q N_{n,2} with its ranks filled in.
SymbolicStructure freenil2_structure(std::int64_t n, std::int64_t q);

/// Upper bound on the number of generators of G (x)^q G for G nilpotent of
/// class 2 with d(G) = n. `coprime_exponent` means gcd(q, exp G) == 1.
mpz_class bacon_bound(std::int64_t n, std::int64_t q, bool coprime_exponent = false);

/// Delta^q of a free abelian group of rank t.
AbelianGroupStructure delta_free_abelian(std::int64_t t, std::int64_t q);

struct GeneratorDescriptor {
  enum class Kind {
    /// [x_i, x_j^phi]
    tensor,
    /// [x_i, x_j^phi][x_j, x_i^phi]
    symmetric_product,
    /// [x_i, [x_j, x_k]^phi]
    tensor_of_commutator,
    /// x_i^
    hat,
  };
  Kind kind = Kind::tensor;
  /// 1-based indices into the generating sequence.
  std::vector<std::size_t> indices;

  std::string to_string(std::string_view letter = "g") const;
  friend bool operator==(const GeneratorDescriptor&, const GeneratorDescriptor&) = default;
};

/// Generators of G (x)^q G for G of class 2 generated by g_1..g_n, with the
/// distinct-index triples thinned by the Hall-Witt identity: for i < j < k
/// only [g_j, [g_i, g_k]^phi] and [g_k, [g_i, g_j]^phi] are kept. Hats are
/// included when q >= 1.
std::vector<GeneratorDescriptor> class2_generators(std::int64_t n, std::int64_t q);

struct AbelianizationGenerators {
  /// Lifts to G of a basis x_1..x_r of G^ab, and the orders of x_i G'.
  std::vector<ElementId> basis;
  std::vector<std::int64_t> orders;
  /// Generators of Delta^q(G).
  std::vector<GeneratorDescriptor> delta;
  /// Generators of E^q(G) modulo [G', G^phi], which E^q(G) also contains.
  std::vector<GeneratorDescriptor> extension;
};

/// Generators of Delta^q(G) and E^q(G) over a basis of G^ab.
AbelianizationGenerators abelianization_generators(const FiniteGroup& g, std::int64_t q);

}  // namespace qtensor
