#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qtensor/finite_group.hpp"
#include "qtensor/word.hpp"

namespace qtensor {

enum class GeneratorFamily : std::uint8_t { free, g_copy, phi_copy, hat };

struct GeneratorRole {
  GeneratorFamily family = GeneratorFamily::free;
  ElementId element = 0;

  friend bool operator==(const GeneratorRole&, const GeneratorRole&) = default;
};

enum class RelatorFamily : std::uint8_t { other, cayley_g, cayley_phi, nu_conj, r1, r2, r3, r4, r5, r6 };
inline constexpr std::size_t relator_family_count = 10;

/// "cayley-G", "cayley-Gφ", "nu-conj", "R1" ... "R6", or "other".
std::string relator_family_name(RelatorFamily f);
RelatorFamily relator_family_from_name(const std::string& name);
std::string generator_family_name(GeneratorFamily f);
GeneratorFamily generator_family_from_name(const std::string& name);

struct DedupReport {
  /// Indexed by RelatorFamily.
  std::array<std::size_t, relator_family_count> emitted{};
  std::array<std::size_t, relator_family_count> kept{};
  std::size_t trivial_removed = 0;
  std::size_t duplicates_removed = 0;

  friend bool operator==(const DedupReport&, const DedupReport&) = default;
};

/// A finite presentation. Presentations built from a group carry a role per
/// generator and a family tag per relator; generic ones leave `roles` empty
/// and tag every relator `other`.
struct FpPresentation {
  std::size_t generator_count = 0;
  std::vector<GeneratorRole> roles;
  std::vector<Word> relators;
  std::vector<RelatorFamily> provenance;
  DedupReport dedup;
  std::string name;
  /// -1 for generic presentations.
  std::int64_t q = -1;

  static FpPresentation generic(std::size_t generators, std::vector<Word> relators, std::string name = {});

  friend bool operator==(const FpPresentation&, const FpPresentation&) = default;
};

/// Generator naming for element-indexed presentations of nu^q(G): one
/// generator per nontrivial element in each family, identity mapped to the
/// empty word. Hats exist only when q >= 1.
class NuSymbols {
 public:
  NuSymbols() = default;
  NuSymbols(const FiniteGroup& g, std::int64_t q);

  std::size_t generator_count() const { return roles_.size(); }
  const std::vector<GeneratorRole>& roles() const { return roles_; }
  bool has_hats() const { return has_hats_; }

  Word g(ElementId e) const { return lookup(g_, e); }
  Word phi(ElementId e) const { return lookup(phi_, e); }
  Word hat(ElementId e) const;
  /// Hat generator id per element, nullopt for the identity; empty when q == 0.
  const std::vector<std::optional<GeneratorId>>& hat_table() const { return hat_; }

 private:
  static Word lookup(const std::vector<std::optional<GeneratorId>>& t, ElementId e) {
    return t[e] ? Word::generator(*t[e]) : Word{};
  }
  std::vector<GeneratorRole> roles_;
  std::vector<std::optional<GeneratorId>> g_, phi_, hat_;
  bool has_hats_ = false;
};

struct NuBuildOptions {
  /// Cap on emitted relators before deduplication.
  std::size_t max_relators = 5'000'000;
};

/// Element-indexed presentation of nu^q(G): Cayley relators of both copies,
/// the two conjugation families of nu(G) over G^3 and, when q >= 1, the six
/// hat families. Emission order is fixed (families in enum order, tuples in
/// lexicographic order); free-trivial and repeated relators are then dropped
/// and counted in `dedup`.
FpPresentation build_nu_q(const FiniteGroup& g, std::int64_t q, const NuBuildOptions& options = {});

/// Number of relators build_nu_q emits for a group of order m before dedup.
std::size_t nu_relator_count(std::size_t m, std::int64_t q);

/// The product word prod_{i=1}^{q-1} [k, (k1^-i)^phi]^(k^(q-1-i)), with the
/// powers resolved in G. Empty for q <= 1.
Word hat_product_word(const FiniteGroup& g, const NuSymbols& s, ElementId k, ElementId k1, std::int64_t q);

/// Image of a word in G under g -> g, g^phi -> g, k^ -> k^q. Requires roles.
ElementId evaluate_rho(const FiniteGroup& g, const FpPresentation& p, const Word& w);
/// Index of the first relator whose rho-image is not the identity.
std::optional<std::size_t> first_rho_violation(const FiniteGroup& g, const FpPresentation& p);

enum class ExportFormat { gap, json, text };
ExportFormat export_format_from_name(const std::string& name);
std::string export_presentation(const FpPresentation& p, ExportFormat format);
/// Reader for the JSON format; export then import is the identity.
FpPresentation import_presentation_json(const std::string& text);

}  // namespace qtensor
