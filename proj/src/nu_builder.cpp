#include <unordered_set>

#include "qtensor/error.hpp"
#include "qtensor/presentation.hpp"

namespace qtensor {

namespace {

class Emitter {
 public:
  Emitter(FpPresentation& p, std::size_t cap) : p_(p), cap_(cap) {}

  void emit(RelatorFamily family, const Word& w) {
    const auto idx = static_cast<std::size_t>(family);
    if (++emitted_ > cap_) {
      throw LimitExceeded("presentation exceeds the relator cap of " + std::to_string(cap_));
    }
    ++p_.dedup.emitted[idx];
    Word r = free_reduce(w);
    if (r.empty()) {
      ++p_.dedup.trivial_removed;
      return;
    }
    if (!seen_.insert(r).second) {
      ++p_.dedup.duplicates_removed;
      return;
    }
    ++p_.dedup.kept[idx];
    p_.relators.push_back(std::move(r));
    p_.provenance.push_back(family);
  }

 private:
  FpPresentation& p_;
  std::size_t cap_;
  std::size_t emitted_ = 0;
  std::unordered_set<Word, WordHash> seen_;
};

}  // namespace

std::string relator_family_name(RelatorFamily f) {
  switch (f) {
    case RelatorFamily::other: return "other";
    case RelatorFamily::cayley_g: return "cayley-G";
    case RelatorFamily::cayley_phi: return "cayley-Gφ";
    case RelatorFamily::nu_conj: return "nu-conj";
    case RelatorFamily::r1: return "R1";
    case RelatorFamily::r2: return "R2";
    case RelatorFamily::r3: return "R3";
    case RelatorFamily::r4: return "R4";
    case RelatorFamily::r5: return "R5";
    case RelatorFamily::r6: return "R6";
  }
  return "other";
}

RelatorFamily relator_family_from_name(const std::string& name) {
  for (std::size_t i = 0; i < relator_family_count; ++i) {
    const auto f = static_cast<RelatorFamily>(i);
    if (relator_family_name(f) == name) return f;
  }
  throw InputError("unknown relator family \"" + name + "\"");
}

std::string generator_family_name(GeneratorFamily f) {
  switch (f) {
    case GeneratorFamily::free: return "free";
    case GeneratorFamily::g_copy: return "g";
    case GeneratorFamily::phi_copy: return "phi";
    case GeneratorFamily::hat: return "hat";
  }
  return "free";
}

GeneratorFamily generator_family_from_name(const std::string& name) {
  if (name == "free") return GeneratorFamily::free;
  if (name == "g") return GeneratorFamily::g_copy;
  if (name == "phi") return GeneratorFamily::phi_copy;
  if (name == "hat") return GeneratorFamily::hat;
  throw InputError("unknown generator role \"" + name + "\"");
}

FpPresentation FpPresentation::generic(std::size_t generators, std::vector<Word> relators, std::string name) {
  FpPresentation p;
  p.generator_count = generators;
  for (auto& r : relators) {
    for (const auto& l : r.letters()) {
      if (l.generator >= generators) throw InputError("relator uses generator " + std::to_string(l.generator) + " out of range");
    }
    p.relators.push_back(free_reduce(r));
    p.provenance.push_back(RelatorFamily::other);
  }
  p.name = std::move(name);
  return p;
}

NuSymbols::NuSymbols(const FiniteGroup& g, std::int64_t q)
    : g_(g.order()), phi_(g.order()), has_hats_(q >= 1) {
  if (q < 0) throw InputError("q must be nonnegative");
  auto family = [&](GeneratorFamily f, std::vector<std::optional<GeneratorId>>& table) {
    for (ElementId e = 0; e < g.order(); ++e) {
      if (e == g.identity()) continue;
      table[e] = static_cast<GeneratorId>(roles_.size());
      roles_.push_back({f, e});
    }
  };
  family(GeneratorFamily::g_copy, g_);
  family(GeneratorFamily::phi_copy, phi_);
  if (has_hats_) {
    hat_.resize(g.order());
    family(GeneratorFamily::hat, hat_);
  }
}

Word NuSymbols::hat(ElementId e) const {
  if (!has_hats_) throw InternalError("hat symbol requested with q = 0");
  return lookup(hat_, e);
}

Word hat_product_word(const FiniteGroup& g, const NuSymbols& s, ElementId k, ElementId k1, std::int64_t q) {
  Word out;
  for (std::int64_t i = 1; i <= q - 1; ++i) {
    const Word factor = commutator(s.g(k), s.phi(g.pow(k1, -i)));
    out *= conjugate(factor, s.g(g.pow(k, q - 1 - i)));
  }
  return out;
}

std::size_t nu_relator_count(std::size_t m, std::int64_t q) {
  const std::size_t m2 = m * m, m3 = m2 * m;
  std::size_t n = 2 * m2 + 2 * m3;
  if (q >= 1) n += 2 * m2 + m3 + 3 * m2;
  return n;
}

FpPresentation build_nu_q(const FiniteGroup& g, std::int64_t q, const NuBuildOptions& options) {
  if (q < 0) throw InputError("q must be nonnegative");
  const std::size_t m = g.order();
  if (nu_relator_count(m, q) > options.max_relators) {
    throw LimitExceeded("nu^q presentation for order " + std::to_string(m) + " would emit " +
                        std::to_string(nu_relator_count(m, q)) + " relators, cap is " +
                        std::to_string(options.max_relators));
  }
  const NuSymbols s(g, q);
  FpPresentation p;
  p.generator_count = s.generator_count();
  p.roles = s.roles();
  p.name = g.name();
  p.q = q;
  Emitter out(p, options.max_relators);
  const auto n = static_cast<ElementId>(m);

  for (ElementId a = 0; a < n; ++a)
    for (ElementId b = 0; b < n; ++b) out.emit(RelatorFamily::cayley_g, s.g(a) * s.g(b) * s.g(g.mul(a, b)).inverse());
  for (ElementId a = 0; a < n; ++a)
    for (ElementId b = 0; b < n; ++b)
      out.emit(RelatorFamily::cayley_phi, s.phi(a) * s.phi(b) * s.phi(g.mul(a, b)).inverse());

  // [g, h^phi]^k = [g^k, (h^k)^phi] = [g, h^phi]^(k^phi)
  for (ElementId a = 0; a < n; ++a) {
    for (ElementId b = 0; b < n; ++b) {
      const Word c = commutator(s.g(a), s.phi(b));
      for (ElementId k = 0; k < n; ++k) {
        const Word rhs = commutator(s.g(g.conj(a, k)), s.phi(g.conj(b, k)));
        out.emit(RelatorFamily::nu_conj, conjugate(c, s.g(k)) * rhs.inverse());
        out.emit(RelatorFamily::nu_conj, conjugate(c, s.phi(k)) * rhs.inverse());
      }
    }
  }
  if (q == 0) return p;

  const std::int64_t e = q;
  for (ElementId a = 0; a < n; ++a)
    for (ElementId k = 0; k < n; ++k)
      out.emit(RelatorFamily::r1, s.g(a).inverse() * s.hat(k) * s.g(a) * s.hat(g.conj(k, a)).inverse());
  for (ElementId a = 0; a < n; ++a)
    for (ElementId k = 0; k < n; ++k)
      out.emit(RelatorFamily::r2, s.phi(a).inverse() * s.hat(k) * s.phi(a) * s.hat(g.conj(k, a)).inverse());
  for (ElementId a = 0; a < n; ++a) {
    for (ElementId b = 0; b < n; ++b) {
      const Word c = commutator(s.g(a), s.phi(b));
      for (ElementId k = 0; k < n; ++k) {
        const ElementId kq = g.pow(k, e);
        const Word rhs = commutator(s.g(g.conj(a, kq)), s.phi(g.conj(b, kq)));
        out.emit(RelatorFamily::r3, s.hat(k).inverse() * c * s.hat(k) * rhs.inverse());
      }
    }
  }
  for (ElementId k = 0; k < n; ++k) {
    for (ElementId k1 = 0; k1 < n; ++k1) {
      out.emit(RelatorFamily::r4, s.hat(k).inverse() * s.hat(g.mul(k, k1)) * s.hat(k1).inverse() *
                                      hat_product_word(g, s, k, k1, q).inverse());
    }
  }
  for (ElementId k = 0; k < n; ++k) {
    for (ElementId k1 = 0; k1 < n; ++k1) {
      const Word rhs = commutator(s.g(g.pow(k, e)), s.phi(g.pow(k1, e)));
      out.emit(RelatorFamily::r5, commutator(s.hat(k), s.hat(k1)) * rhs.inverse());
    }
  }
  for (ElementId a = 0; a < n; ++a) {
    for (ElementId b = 0; b < n; ++b) {
      out.emit(RelatorFamily::r6, s.hat(g.comm(a, b)) * commutator(s.g(a), s.phi(b)).pow(-q));
    }
  }
  return p;
}

ElementId evaluate_rho(const FiniteGroup& g, const FpPresentation& p, const Word& w) {
  if (p.roles.size() != p.generator_count) throw InputError("evaluate_rho: presentation has no generator roles");
  ElementId x = g.identity();
  for (const auto& l : w.letters()) {
    const auto& role = p.roles.at(l.generator);
    ElementId image = role.element;
    if (role.family == GeneratorFamily::hat) image = g.pow(image, p.q);
    if (role.family == GeneratorFamily::free) throw InputError("evaluate_rho: free generator has no image");
    x = g.mul(x, g.pow(image, l.exponent));
  }
  return x;
}

std::optional<std::size_t> first_rho_violation(const FiniteGroup& g, const FpPresentation& p) {
  for (std::size_t i = 0; i < p.relators.size(); ++i) {
    if (evaluate_rho(g, p, p.relators[i]) != g.identity()) return i;
  }
  return std::nullopt;
}

}  // namespace qtensor
