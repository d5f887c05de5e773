#include "qtensor/closed_forms.hpp"

#include "qtensor/arith.hpp"
#include "qtensor/error.hpp"

namespace qtensor {

namespace {

std::int64_t to_int(const mpz_class& v) {
  if (!v.fits_slong_p()) throw LimitExceeded("rank does not fit in 64 bits");
  return v.get_si();
}

void require(bool ok, const char* what) {
  if (!ok) throw InputError(what);
}

std::string power_name(std::int64_t q) { return q == 0 ? "" : "^" + std::to_string(q); }

}  // namespace

std::string SymbolicStructure::to_string() const {
  // Repeated factors are written as powers: C3^5 x Z^3.
  std::string out;
  const auto& t = abelian_part.torsion();
  for (std::size_t i = 0; i < t.size();) {
    std::size_t j = i;
    while (j < t.size() && t[j] == t[i]) ++j;
    if (!out.empty()) out += " x ";
    out += "C" + std::to_string(t[i]) + (j - i > 1 ? "^" + std::to_string(j - i) : "");
    i = j;
  }
  if (abelian_part.free_rank() > 0) {
    if (!out.empty()) out += " x ";
    out += abelian_part.free_rank() > 1 ? "Z^" + std::to_string(abelian_part.free_rank()) : "Z";
  }
  if (out.empty() && residual_factors.empty()) out = "1";
  for (const auto& f : residual_factors) {
    if (!out.empty()) out += " x ";
    out += f;
  }
  return out;
}

const mpz_class* SymbolicStructure::rank(std::string_view name) const {
  for (const auto& [k, v] : rank_notes)
    if (k == name) return &v;
  return nullptr;
}

nlohmann::ordered_json to_json(const SymbolicStructure& s) {
  nlohmann::ordered_json j;
  j["structure"] = s.to_string();
  j["abelian_part"] = {{"torsion", s.abelian_part.torsion()}, {"free_rank", s.abelian_part.free_rank()}};
  j["residual_factors"] = s.residual_factors;
  nlohmann::ordered_json ranks = nlohmann::ordered_json::object();
  for (const auto& [k, v] : s.rank_notes) ranks[k] = v.get_str();
  j["ranks"] = ranks;
  j["notes"] = s.notes;
  return j;
}

AbelianGroupStructure cyclic_tensor(std::int64_t n, std::int64_t q) {
  require(n >= 0 && q >= 0, "cyclic_tensor: n and q must be nonnegative");
  if (n == 0) return AbelianGroupStructure::from_cyclic_orders({0, q == 0 ? 1 : q});
  if (q == 0) return AbelianGroupStructure::from_cyclic_orders({n});
  const std::int64_t d = gcd0(n, q);
  if (d % 2 == 1 || n % 4 == 0 || q % 4 == 0) return AbelianGroupStructure::from_cyclic_orders({n, d});
  return AbelianGroupStructure::from_cyclic_orders({2 * n, d / 2});
}

SymbolicStructure free_tensor(std::int64_t n, std::int64_t q) {
  require(n >= 1 && q >= 0, "free_tensor: need n >= 1 and q >= 0");
  SymbolicStructure s;
  const std::int64_t r = to_int(binomial(n + 1, 2));
  s.abelian_part = AbelianGroupStructure::homocyclic(q, r);
  const std::string f = "F_" + std::to_string(n);
  s.residual_factors.push_back(q == 0 ? f + "'" : f + "'" + f + power_name(q));
  s.rank_notes.emplace_back("abelian_rank", r);
  return s;
}

SymbolicStructure freenil_tensor(std::int64_t n, std::int64_t c, std::int64_t q) {
  require(n >= 2 && c >= 1 && q >= 0, "freenil_tensor: need n >= 2, c >= 1 and q >= 0");
  if (c == 2) {
    SymbolicStructure s = freenil2_structure(n, q);
    s.notes.push_back("class 2: ranks filled in");
    return s;
  }
  SymbolicStructure s;
  const std::int64_t r = to_int(binomial(n + 1, 2));
  s.abelian_part = AbelianGroupStructure::homocyclic(q, r);
  const std::string f = "F_" + std::to_string(n);
  if (q == 0) {
    s.residual_factors.push_back("(N_{" + std::to_string(n) + "," + std::to_string(c + 1) + "})'");
  } else {
    const std::string qs = std::to_string(q);
    s.residual_factors.push_back(f + "'" + f + "^" + qs + " / gamma_" + std::to_string(c + 1) + "(" + f + ")^" + qs +
                                 " gamma_" + std::to_string(c + 2) + "(" + f + ")");
  }
  s.rank_notes.emplace_back("abelian_rank", r);
  return s;
}

SymbolicStructure freenil2_structure(std::int64_t n, std::int64_t q) {
  require(n >= 2 && q >= 0, "freenil2_structure: need n >= 2 and q >= 0");
  SymbolicStructure s;
  const mpz_class delta = binomial(n + 1, 2);
  const mpz_class multiplier = witt_rank(n, 3);
  const std::string name = "N_{" + std::to_string(n) + ",2}";
  if (q == 0) {
    const mpz_class derived = binomial(n, 2);
    const mpz_class total = delta + multiplier + derived;
    s.abelian_part = AbelianGroupStructure::homocyclic(0, to_int(total));
    s.rank_notes.emplace_back("delta_rank", delta);
    s.rank_notes.emplace_back("multiplier_rank", multiplier);
    s.rank_notes.emplace_back("derived_rank", derived);
    s.rank_notes.emplace_back("total_rank", total);
    s.rank_notes.emplace_back("generator_count", total);
  } else if (q == 1) {
    // Every C_1 factor vanishes and N'N^1 is the whole group.
    s.residual_factors.push_back(name);
    s.rank_notes.emplace_back("generator_count", mpz_class(n));
    s.notes.push_back("q = 1: hat and multiplier factors are trivial; generator count is d(N_{n,2}) = n");
  } else {
    const mpz_class rank = delta + multiplier;
    s.abelian_part = AbelianGroupStructure::homocyclic(q, to_int(rank));
    s.residual_factors.push_back(name + "'" + name + "^" + std::to_string(q));
    s.rank_notes.emplace_back("q_rank", rank);
    s.rank_notes.emplace_back("multiplier_rank", multiplier);
    s.rank_notes.emplace_back("generator_count", mpz_class(n) * (mpz_class(n) * n + 3 * n + 2) / 3);
  }
  return s;
}

mpz_class bacon_bound(std::int64_t n, std::int64_t q, bool coprime_exponent) {
  require(n >= 1 && q >= 0, "bacon_bound: need n >= 1 and q >= 0");
  const mpz_class m = n;
  if (q >= 1 && coprime_exponent) return m * m;
  if (q == 0) return m * (m * m + 3 * m - 1) / 3;
  return m * (m * m + 3 * m + 2) / 3;
}

AbelianGroupStructure delta_free_abelian(std::int64_t t, std::int64_t q) {
  require(t >= 0 && q >= 0, "delta_free_abelian: need t >= 0 and q >= 0");
  return AbelianGroupStructure::homocyclic(q, to_int(binomial(t + 1, 2)));
}

std::string GeneratorDescriptor::to_string(std::string_view letter) const {
  const auto x = [&](std::size_t k) { return std::string(letter) + std::to_string(indices.at(k)); };
  switch (kind) {
    case Kind::tensor:
      return "[" + x(0) + ", " + x(1) + "^phi]";
    case Kind::symmetric_product:
      return "[" + x(0) + ", " + x(1) + "^phi][" + x(1) + ", " + x(0) + "^phi]";
    case Kind::tensor_of_commutator:
      return "[" + x(0) + ", [" + x(1) + ", " + x(2) + "]^phi]";
    case Kind::hat:
      return x(0) + "^";
  }
  return {};
}

std::vector<GeneratorDescriptor> class2_generators(std::int64_t n, std::int64_t q) {
  require(n >= 1 && q >= 0, "class2_generators: need n >= 1 and q >= 0");
  using K = GeneratorDescriptor::Kind;
  const auto un = static_cast<std::size_t>(n);
  std::vector<GeneratorDescriptor> out;
  for (std::size_t i = 1; i <= un; ++i)
    for (std::size_t j = 1; j <= un; ++j) out.push_back({K::tensor, {i, j}});
  for (std::size_t i = 1; i <= un; ++i)
    for (std::size_t j = 1; j <= un; ++j)
      if (j != i) out.push_back({K::tensor_of_commutator, {i, j, i}});
  // [g_i, [g_j, g_k]^phi] = [g_j, [g_i, g_k]^phi][g_k, [g_j, g_i]^phi]
  for (std::size_t i = 1; i <= un; ++i)
    for (std::size_t j = i + 1; j <= un; ++j)
      for (std::size_t k = j + 1; k <= un; ++k) {
        out.push_back({K::tensor_of_commutator, {j, i, k}});
        out.push_back({K::tensor_of_commutator, {k, i, j}});
      }
  if (q >= 1)
    for (std::size_t i = 1; i <= un; ++i) out.push_back({K::hat, {i}});
  return out;
}

AbelianizationGenerators abelianization_generators(const FiniteGroup& g, std::int64_t q) {
  require(q >= 0, "abelianization_generators: q must be nonnegative");
  using K = GeneratorDescriptor::Kind;
  const QuotientGroup ab = abelianization(g);
  AbelianizationGenerators out;
  for (auto b : abelian_basis(ab.group)) {
    out.basis.push_back(ab.representative[b]);
    out.orders.push_back(ab.group.element_order(b));
  }
  const std::size_t r = out.basis.size();
  for (std::size_t i = 1; i <= r; ++i) out.delta.push_back({K::tensor, {i, i}});
  for (std::size_t j = 1; j <= r; ++j)
    for (std::size_t k = j + 1; k <= r; ++k) out.delta.push_back({K::symmetric_product, {j, k}});
  if (q >= 1)
    for (std::size_t i = 1; i <= r; ++i) out.extension.push_back({K::hat, {i}});
  for (std::size_t j = 1; j <= r; ++j)
    for (std::size_t k = j + 1; k <= r; ++k) out.extension.push_back({K::tensor, {j, k}});
  return out;
}

}  // namespace qtensor
