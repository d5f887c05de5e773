#include "qtensor/finite_group.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include "qtensor/arith.hpp"
#include "qtensor/error.hpp"

namespace qtensor {

namespace {

std::vector<ElementId> closure_with(const FiniteGroup& g, std::vector<char>& mask,
                                    std::vector<ElementId> members, std::span<const ElementId> gens) {
  // members already closed; extend by gens using a breadth-first product closure.
  std::vector<ElementId> queue = members;
  for (auto s : gens) {
    if (!mask[s]) {
      mask[s] = 1;
      members.push_back(s);
      queue.push_back(s);
    }
  }
  std::vector<ElementId> all_gens(gens.begin(), gens.end());
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const ElementId x = queue[head];
    for (auto s : all_gens) {
      const ElementId y = g.mul(x, s);
      if (!mask[y]) {
        mask[y] = 1;
        members.push_back(y);
        queue.push_back(y);
      }
    }
  }
  return members;
}

}  // namespace

FiniteGroup FiniteGroup::from_table(std::size_t order, std::vector<ElementId> table,
                                    std::vector<ElementId> generators, std::string name,
                                    std::size_t max_order) {
  if (order == 0) throw InputError("group order must be at least 1");
  if (order > max_order) {
    throw LimitExceeded("group order " + std::to_string(order) + " exceeds limit " + std::to_string(max_order));
  }
  if (table.size() != order * order) {
    throw InputError("Cayley table has " + std::to_string(table.size()) + " entries, expected " +
                     std::to_string(order * order));
  }
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (table[i] >= order) {
      throw InputError("closure fails: " + std::to_string(i / order) + "*" + std::to_string(i % order) + " = " +
                       std::to_string(table[i]) + " is not an element");
    }
  }
  FiniteGroup g;
  g.order_ = order;
  g.table_ = std::move(table);
  g.name_ = std::move(name);

  // Latin square: rows and columns are permutations.
  std::vector<std::size_t> seen(order, order);
  for (std::size_t a = 0; a < order; ++a) {
    for (std::size_t b = 0; b < order; ++b) {
      const ElementId c = g.mul(static_cast<ElementId>(a), static_cast<ElementId>(b));
      if (seen[c] == order + a + 1) {
        throw InputError("cancellation fails in row " + std::to_string(a) + ": element " + std::to_string(c) +
                         " appears twice");
      }
      seen[c] = order + a + 1;
    }
  }
  std::vector<std::size_t> col_seen(order, 0);
  for (std::size_t b = 0; b < order; ++b) {
    for (std::size_t a = 0; a < order; ++a) {
      const ElementId c = g.mul(static_cast<ElementId>(a), static_cast<ElementId>(b));
      if (col_seen[c] == b + 1) {
        throw InputError("cancellation fails in column " + std::to_string(b) + ": element " + std::to_string(c) +
                         " appears twice");
      }
      col_seen[c] = b + 1;
    }
  }

  // Identity: the e with e*e = e is unique in a Latin square satisfying e*x = x.
  std::optional<ElementId> identity;
  for (std::size_t e = 0; e < order && !identity; ++e) {
    bool ok = true;
    for (std::size_t x = 0; x < order && ok; ++x) {
      ok = g.mul(static_cast<ElementId>(e), static_cast<ElementId>(x)) == x &&
           g.mul(static_cast<ElementId>(x), static_cast<ElementId>(e)) == x;
    }
    if (ok) identity = static_cast<ElementId>(e);
  }
  if (!identity) throw InputError("identity axiom fails: no two-sided identity element");
  g.identity_ = *identity;

  g.inverse_.assign(order, 0);
  for (std::size_t a = 0; a < order; ++a) {
    bool found = false;
    for (std::size_t b = 0; b < order; ++b) {
      if (g.mul(static_cast<ElementId>(a), static_cast<ElementId>(b)) == g.identity_) {
        if (g.mul(static_cast<ElementId>(b), static_cast<ElementId>(a)) != g.identity_) {
          throw InputError("inverse axiom fails: " + std::to_string(a) + " has no two-sided inverse");
        }
        g.inverse_[a] = static_cast<ElementId>(b);
        found = true;
        break;
      }
    }
    if (!found) throw InputError("inverse axiom fails: " + std::to_string(a) + " has no inverse");
  }

  if (generators.empty()) {
    std::vector<char> mask(order, 0);
    mask[g.identity_] = 1;
    std::vector<ElementId> members{g.identity_};
    for (std::size_t x = 0; x < order && members.size() < order; ++x) {
      if (mask[x]) continue;
      generators.push_back(static_cast<ElementId>(x));
      members = closure_with(g, mask, std::move(members), generators);
    }
  } else {
    for (auto s : generators) {
      if (s >= order) throw InputError("generator " + std::to_string(s) + " is not an element");
    }
    std::vector<char> mask(order, 0);
    mask[g.identity_] = 1;
    auto members = closure_with(g, mask, {g.identity_}, generators);
    if (members.size() != order) {
      throw InputError("generators span a subgroup of order " + std::to_string(members.size()) +
                       ", not the whole group of order " + std::to_string(order));
    }
  }
  g.generators_ = std::move(generators);

  // Light's associativity test: (x s) y == x (s y) for every generator s suffices.
  for (auto s : g.generators_) {
    for (std::size_t x = 0; x < order; ++x) {
      const ElementId xs = g.mul(static_cast<ElementId>(x), s);
      for (std::size_t y = 0; y < order; ++y) {
        if (g.mul(xs, static_cast<ElementId>(y)) != g.mul(static_cast<ElementId>(x), g.mul(s, static_cast<ElementId>(y)))) {
          throw InputError("associativity fails for (" + std::to_string(x) + ", " + std::to_string(s) + ", " +
                           std::to_string(y) + ")");
        }
      }
    }
  }

  g.orders_.assign(order, 0);
  for (std::size_t a = 0; a < order; ++a) {
    std::int64_t n = 1;
    ElementId x = static_cast<ElementId>(a);
    while (x != g.identity_) {
      x = g.mul(x, static_cast<ElementId>(a));
      ++n;
    }
    g.orders_[a] = n;
  }
  return g;
}

ElementId FiniteGroup::pow(ElementId a, std::int64_t n) const {
  const std::int64_t o = orders_[a];
  n %= o;
  if (n < 0) n += o;
  ElementId r = identity_;
  ElementId base = a;
  while (n > 0) {
    if (n & 1) r = mul(r, base);
    base = mul(base, base);
    n >>= 1;
  }
  return r;
}

std::int64_t FiniteGroup::exponent() const {
  std::int64_t e = 1;
  for (auto o : orders_) e = std::lcm(e, o);
  return e;
}

bool FiniteGroup::is_abelian() const {
  for (auto a : generators_) {
    for (auto b : generators_) {
      if (mul(a, b) != mul(b, a)) return false;
    }
  }
  return true;
}

SubgroupElements::SubgroupElements(const FiniteGroup& parent, std::vector<ElementId> members)
    : parent_(&parent), members_(std::move(members)), mask_(parent.order(), 0) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  for (auto x : members_) mask_[x] = 1;
}

SubgroupElements whole_group(const FiniteGroup& g) {
  std::vector<ElementId> all(g.order());
  std::iota(all.begin(), all.end(), ElementId{0});
  return SubgroupElements(g, std::move(all));
}

SubgroupElements trivial_subgroup(const FiniteGroup& g) { return SubgroupElements(g, {g.identity()}); }

SubgroupElements subgroup_generated(const FiniteGroup& g, std::span<const ElementId> gens) {
  std::vector<char> mask(g.order(), 0);
  mask[g.identity()] = 1;
  return SubgroupElements(g, closure_with(g, mask, {g.identity()}, gens));
}

SubgroupElements normal_closure(const FiniteGroup& g, std::span<const ElementId> gens) {
  std::vector<ElementId> conjugates;
  std::vector<char> mark(g.order(), 0);
  // Conjugates by generators suffice after closing under them repeatedly.
  std::vector<ElementId> queue(gens.begin(), gens.end());
  for (auto x : queue) mark[x] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (auto s : g.generators()) {
      const ElementId y = g.conj(queue[head], s);
      if (!mark[y]) {
        mark[y] = 1;
        queue.push_back(y);
      }
    }
  }
  return subgroup_generated(g, queue);
}

SubgroupElements commutator_subgroup(const FiniteGroup& g, const SubgroupElements& a, const SubgroupElements& b) {
  std::vector<char> mark(g.order(), 0);
  std::vector<ElementId> comms;
  for (auto x : a.members()) {
    for (auto y : b.members()) {
      const ElementId c = g.comm(x, y);
      if (!mark[c]) {
        mark[c] = 1;
        comms.push_back(c);
      }
    }
  }
  return normal_closure(g, comms);
}

SubgroupElements derived_subgroup(const FiniteGroup& g) {
  const auto all = whole_group(g);
  return commutator_subgroup(g, all, all);
}

SubgroupElements center(const FiniteGroup& g) {
  std::vector<ElementId> z;
  for (ElementId x = 0; x < g.order(); ++x) {
    bool central = true;
    for (auto s : g.generators()) {
      if (g.mul(x, s) != g.mul(s, x)) {
        central = false;
        break;
      }
    }
    if (central) z.push_back(x);
  }
  return SubgroupElements(g, std::move(z));
}

SubgroupElements power_commutator_subgroup(const FiniteGroup& g, std::int64_t q) {
  if (q < 0) throw InputError("q must be nonnegative");
  const auto d = derived_subgroup(g);
  if (q == 0) return d;
  std::vector<ElementId> gens = d.members();
  for (ElementId x = 0; x < g.order(); ++x) gens.push_back(g.pow(x, q));
  // G' is normal and the set of q-th powers is conjugation-invariant.
  return subgroup_generated(g, gens);
}

bool is_normal(const FiniteGroup& g, const SubgroupElements& n) {
  for (auto x : n.members()) {
    for (auto s : g.generators()) {
      if (!n.contains(g.conj(x, s))) return false;
    }
  }
  return true;
}

LowerCentralSeries lower_central_series(const FiniteGroup& g) {
  LowerCentralSeries out;
  const auto all = whole_group(g);
  out.terms.push_back(all);
  while (true) {
    auto next = commutator_subgroup(g, out.terms.back(), all);
    if (next == out.terms.back()) break;
    out.terms.push_back(std::move(next));
  }
  if (out.terms.back().trivial()) out.nilpotency_class = static_cast<int>(out.terms.size()) - 1;
  return out;
}

std::int64_t coset_order(const FiniteGroup& g, ElementId x) {
  const auto d = derived_subgroup(g);
  std::int64_t n = 1;
  ElementId y = x;
  while (!d.contains(y)) {
    y = g.mul(y, x);
    ++n;
  }
  return n;
}

QuotientGroup quotient(const FiniteGroup& g, const SubgroupElements& n, std::string name) {
  if (!is_normal(g, n)) throw InputError("quotient: subgroup is not normal");
  QuotientGroup out;
  constexpr ElementId unset = static_cast<ElementId>(-1);
  out.projection.assign(g.order(), unset);
  for (ElementId x = 0; x < g.order(); ++x) {
    if (out.projection[x] != unset) continue;
    const auto label = static_cast<ElementId>(out.representative.size());
    out.representative.push_back(x);
    for (auto m : n.members()) out.projection[g.mul(m, x)] = label;
  }
  const std::size_t k = out.representative.size();
  std::vector<ElementId> table(k * k);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      table[a * k + b] = out.projection[g.mul(out.representative[a], out.representative[b])];
    }
  }
  std::vector<ElementId> gens;
  const ElementId id = out.projection[g.identity()];
  for (auto s : g.generators()) {
    const ElementId image = out.projection[s];
    if (image != id && std::find(gens.begin(), gens.end(), image) == gens.end()) gens.push_back(image);
  }
  if (name.empty()) name = g.name() + "/N";
  if (k == 1) gens.clear();
  out.group = FiniteGroup::from_table(k, std::move(table), std::move(gens), std::move(name), g.order());
  return out;
}

AbelianGroupStructure abelian_invariants(const FiniteGroup& g) {
  if (!g.is_abelian()) throw InputError("abelian_invariants: group is not abelian");
  return abelian_structure_from_counts(g.order(), [&](std::uint64_t m) {
    std::uint64_t c = 0;
    for (ElementId x = 0; x < g.order(); ++x) {
      if (static_cast<std::uint64_t>(g.element_order(x)) <= m && m % static_cast<std::uint64_t>(g.element_order(x)) == 0) ++c;
    }
    return c;
  });
}

QuotientGroup abelianization(const FiniteGroup& g) { return quotient(g, derived_subgroup(g), g.name() + "^ab"); }

QuotientGroup reduced_abelianization(const FiniteGroup& g, std::int64_t q) {
  return quotient(g, power_commutator_subgroup(g, q), g.name() + "/G'G^" + std::to_string(q));
}

std::vector<ElementId> abelian_basis(const FiniteGroup& g) {
  const auto inv = abelian_invariants(g);
  const auto& targets = inv.torsion();
  // Choose b_k..b_1 from the largest factor down; each new element must have
  // the target order and meet the span of the previous ones trivially.
  std::vector<ElementId> chosen(targets.size(), g.identity());
  std::vector<std::vector<ElementId>> spans{{g.identity()}};

  std::function<bool(std::size_t)> search = [&](std::size_t depth) -> bool {
    if (depth == targets.size()) return true;
    const std::size_t idx = targets.size() - 1 - depth;
    const std::int64_t want = targets[idx];
    const auto& span = spans.back();
    std::vector<char> in_span(g.order(), 0);
    for (auto x : span) in_span[x] = 1;
    for (ElementId x = 0; x < g.order(); ++x) {
      if (g.element_order(x) != want) continue;
      bool meets = false;
      ElementId p = x;
      for (std::int64_t i = 1; i < want; ++i, p = g.mul(p, x)) {
        if (in_span[p]) {
          meets = true;
          break;
        }
      }
      if (meets) continue;
      std::vector<ElementId> next;
      next.reserve(span.size() * static_cast<std::size_t>(want));
      ElementId power = g.identity();
      for (std::int64_t i = 0; i < want; ++i, power = g.mul(power, x)) {
        for (auto y : span) next.push_back(g.mul(y, power));
      }
      chosen[idx] = x;
      spans.push_back(std::move(next));
      if (search(depth + 1)) return true;
      spans.pop_back();
    }
    return false;
  };
  if (!search(0)) throw InternalError("abelian_basis: no basis found");
  return chosen;
}

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b, std::size_t max_order) {
  const std::size_t na = a.order();
  const std::size_t nb = b.order();
  const std::size_t n = na * nb;
  if (n > max_order) {
    throw LimitExceeded("direct product order " + std::to_string(n) + " exceeds limit " + std::to_string(max_order));
  }
  std::vector<ElementId> table(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      const auto i = a.mul(static_cast<ElementId>(x / nb), static_cast<ElementId>(y / nb));
      const auto j = b.mul(static_cast<ElementId>(x % nb), static_cast<ElementId>(y % nb));
      table[x * n + y] = static_cast<ElementId>(i * nb + j);
    }
  }
  std::vector<ElementId> gens;
  for (auto s : a.generators()) gens.push_back(static_cast<ElementId>(s * nb + b.identity()));
  for (auto t : b.generators()) gens.push_back(static_cast<ElementId>(a.identity() * nb + t));
  return FiniteGroup::from_table(n, std::move(table), std::move(gens), a.name() + " x " + b.name(), max_order);
}

}  // namespace qtensor
