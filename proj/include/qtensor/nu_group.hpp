#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "qtensor/coset_enumeration.hpp"
#include "qtensor/finite_group.hpp"
#include "qtensor/presentation.hpp"
#include "qtensor/regular_group.hpp"

namespace qtensor {

/// How the presentation of nu^q(G) handed to the enumerator is chosen.
///
/// `full` is the element-indexed presentation as built. `lean` uses copies
/// of the generating sequence S of G only (a_s, b_s and, for q >= 1, c_s)
/// with a short relator set; every relator of the full presentation is then
/// checked against the result after substituting words for its generators,
/// and failing ones are added until all hold. Both give the same group.
enum class RealizationStrategy { lean, full };

struct NuRealizationOptions {
  std::size_t max_cosets = 2'000'000;
  RealizationStrategy strategy = RealizationStrategy::lean;
  /// Lean strategy: enumerations before giving up.
  std::size_t max_rounds = 64;
  std::size_t max_relators = 5'000'000;
};

struct NuRealizationStats {
  std::size_t rounds = 0;
  std::size_t working_relators = 0;
  std::size_t working_length = 0;
  std::size_t full_relators = 0;
  std::size_t added_relators = 0;
  EnumerationStats enumeration;
};

/// Shortest words (over generator indices of g.generators()) for every
/// element, by breadth-first search over S and S^-1.
std::vector<Word> shortest_words(const FiniteGroup& g);

/// A short presentation of G on its generating sequence: shortest cycles of
/// the Cayley graph, added until a coset enumeration returns |G| cosets.
std::vector<Word> short_relators(const FiniteGroup& g);

/// nu^q(G), held as its action on the cosets of the copy of G.
///
/// The map sigma : g -> (g,1), g^phi -> (1,g), k^ -> 1 onto G x G has
/// kernel Upsilon = [G,G^phi]G^, which meets G trivially, so Upsilon acts
/// freely on these cosets and its orbit through the base coset is a regular
/// representation of it. Elements of nu^q(G) outside Upsilon are handled
/// as words over the enumerated generators.
class NuGroup {
 public:
  const FiniteGroup& base() const { return base_; }
  std::int64_t q() const { return q_; }
  /// |G| times the number of cosets.
  std::uint64_t order() const { return static_cast<std::uint64_t>(base_.order()) * action_.size(); }
  const CosetTable& action() const { return action_; }
  const RegularGroup& upsilon() const { return upsilon_; }

  std::size_t generator_count() const { return roles_.size(); }
  /// Role of each enumerated generator.
  const std::vector<GeneratorRole>& generator_roles() const { return roles_; }
  Word g_word(ElementId e) const { return g_words_[e]; }
  Word phi_word(ElementId e) const { return phi_words_[e]; }
  /// Empty when q == 0.
  Word hat_word(ElementId e) const { return hat_words_[e]; }

  std::pair<ElementId, ElementId> sigma(const Word& w) const;
  /// The element of Upsilon a word represents, or nullopt outside Upsilon.
  std::optional<Point> to_upsilon(const Word& w) const;
  bool is_identity(const Word& w) const;
  bool equal(const Word& a, const Word& b) const { return is_identity(a * b.inverse()); }
  /// A word over the enumerated generators for an element of Upsilon.
  Word upsilon_word(Point u) const;

  /// k^ as an element of Upsilon (the identity when q == 0).
  Point hat(ElementId k) const { return hat_[k]; }
  /// [g, h^phi].
  Point tensor(ElementId g, ElementId h) const { return tensor_[static_cast<std::size_t>(g) * base_.order() + h]; }
  /// rho : g -> g, g^phi -> g, k^ -> k^q, restricted to Upsilon.
  ElementId rho(Point u) const { return rho_[u]; }
  /// u^x for x an enumerated generator (sign -1 for its inverse).
  Point conjugate(Point u, std::size_t generator, int sign = 1) const {
    return conj_[2 * generator + (sign < 0 ? 1 : 0)][u];
  }
  Point conjugate(Point u, const Word& x) const;

  const std::vector<Word>& working_relators() const { return working_; }
  const NuRealizationStats& stats() const { return stats_; }

  /// Restriction to Upsilon of the homomorphism nu^q(G) -> nu^q(H) induced
  /// by a homomorphism G -> H given as an element map. Throws InputError if
  /// the map does not induce a homomorphism.
  std::vector<Point> induced_map(const NuGroup& target, const std::vector<ElementId>& map) const;

 private:
  friend NuGroup realize_nu(const FiniteGroup&, std::int64_t, const NuRealizationOptions&);
  void build_upsilon();

  FiniteGroup base_;
  std::int64_t q_ = 0;
  CosetTable action_;
  std::vector<GeneratorRole> roles_;
  std::vector<Word> g_words_, phi_words_, hat_words_;
  std::vector<Word> working_;
  NuRealizationStats stats_;

  RegularGroup upsilon_;
  /// Words of the Upsilon generators.
  std::vector<Word> upsilon_gens_;
  /// Coset -> Upsilon point, -1 off the base orbit.
  std::vector<std::int32_t> orbit_index_;
  std::vector<Point> hat_, tensor_;
  std::vector<ElementId> rho_;
  std::vector<std::vector<Point>> conj_;
};

/// Throws LimitExceeded when an enumeration needs more than max_cosets.
NuGroup realize_nu(const FiniteGroup& g, std::int64_t q, const NuRealizationOptions& options = {});

}  // namespace qtensor
