#include "qtensor/subgroup_analysis.hpp"

#include <algorithm>
#include <unordered_map>

#include "qtensor/error.hpp"

namespace qtensor {

PointSubgroup::PointSubgroup(std::size_t ambient_order, std::vector<Point> members)
    : members_(std::move(members)), mask_(ambient_order, 0) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  for (auto x : members_) {
    if (x >= ambient_order) throw InternalError("subgroup member out of range");
    mask_[x] = 1;
  }
}

namespace {

// Subgroup closure that can be extended one generator at a time.
class Closure {
 public:
  explicit Closure(const RegularGroup& u) : u_(u), mask_(u.order(), 0) {
    mask_[0] = 1;
    members_.push_back(0);
  }

  bool contains(Point x) const { return mask_[x] != 0; }

  void add(Point g) {
    if (contains(g)) return;
    gens_.push_back(g);
    // Old members are closed under the old generators; only the new one
    // has to be applied to them.
    const std::size_t old = members_.size();
    for (std::size_t i = 0; i < old; ++i) visit(u_.mul(members_[i], g));
    for (std::size_t i = old; i < members_.size(); ++i)
      for (auto s : gens_) visit(u_.mul(members_[i], s));
  }

  const std::vector<Point>& gens() const { return gens_; }
  std::size_t size() const { return members_.size(); }
  PointSubgroup result() const { return PointSubgroup(u_.order(), members_); }

 private:
  void visit(Point y) {
    if (!mask_[y]) {
      mask_[y] = 1;
      members_.push_back(y);
    }
  }

  const RegularGroup& u_;
  std::vector<char> mask_;
  std::vector<Point> members_;
  std::vector<Point> gens_;
};

}  // namespace

std::vector<PointAction> conjugation_actions(const RegularGroup& u, std::span<const Point> by) {
  std::vector<PointAction> out;
  out.reserve(by.size());
  for (auto c : by) {
    const Point ci = u.inv(c);
    PointAction a(u.order());
    for (Point x = 0; x < u.order(); ++x) a[x] = u.mul(u.mul(ci, x), c);
    out.push_back(std::move(a));
  }
  return out;
}

PointSubgroup subgroup_closure(const RegularGroup& u, std::span<const Point> gens) {
  Closure c(u);
  for (auto g : gens) c.add(g);
  return c.result();
}

PointSubgroup normal_closure(const RegularGroup& u, std::span<const Point> gens, std::span<const PointAction> actions) {
  Closure c(u);
  for (auto g : gens) c.add(g);
  // Conjugates of the generators found so far; new ones join the list.
  for (std::size_t i = 0; i < c.gens().size(); ++i) {
    const Point g = c.gens()[i];
    for (const auto& a : actions) c.add(a[g]);
  }
  return c.result();
}

std::vector<Point> subgroup_generators(const RegularGroup& u, const PointSubgroup& h) {
  Closure c(u);
  for (auto x : h.members()) {
    if (c.size() == h.order()) break;
    c.add(x);
  }
  return c.gens();
}

PointSubgroup commutator_subgroup(const RegularGroup& u, const PointSubgroup& a, const PointSubgroup& b,
                                  std::span<const PointAction> actions) {
  const auto ga = subgroup_generators(u, a);
  const auto gb = subgroup_generators(u, b);
  std::vector<Point> comms;
  for (auto x : ga)
    for (auto y : gb) comms.push_back(u.comm(x, y));
  return normal_closure(u, comms, actions);
}

PointSubgroup intersection(const PointSubgroup& a, const PointSubgroup& b, std::size_t ambient_order) {
  std::vector<Point> out;
  for (auto x : a.members())
    if (b.contains(x)) out.push_back(x);
  return PointSubgroup(ambient_order, std::move(out));
}

bool is_abelian(const RegularGroup& u, const PointSubgroup& h) {
  const auto gens = subgroup_generators(u, h);
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (u.mul(gens[i], gens[j]) != u.mul(gens[j], gens[i])) return false;
  return true;
}

bool is_normalized(const PointSubgroup& h, std::span<const PointAction> actions) {
  for (const auto& a : actions)
    for (auto x : h.members())
      if (!h.contains(a[x])) return false;
  return true;
}

bool is_centralized(const PointSubgroup& h, std::span<const PointAction> actions) {
  for (const auto& a : actions)
    for (auto x : h.members())
      if (a[x] != x) return false;
  return true;
}

PointSeries lower_central_series(const RegularGroup& u, const PointSubgroup& h) {
  PointSeries s;
  s.terms.push_back(h);
  const auto gens = subgroup_generators(u, h);
  const auto actions = conjugation_actions(u, gens);
  while (!s.terms.back().trivial()) {
    PointSubgroup next = commutator_subgroup(u, s.terms.back(), h, actions);
    if (next == s.terms.back()) break;
    s.terms.push_back(std::move(next));
  }
  if (s.terms.back().trivial()) s.nilpotency_class = static_cast<int>(s.terms.size()) - 1;
  return s;
}

AbelianGroupStructure quotient_invariants(const RegularGroup& u, const PointSubgroup& h, const PointSubgroup& l) {
  if (h.order() % l.order() != 0) throw InternalError("quotient_invariants: |L| does not divide |H|");
  return abelian_structure_from_counts(h.order() / l.order(), [&](std::uint64_t m) {
    std::uint64_t n = 0;
    for (auto x : h.members())
      if (l.contains(u.pow(x, static_cast<std::int64_t>(m)))) ++n;
    return n / l.order();
  });
}

SubgroupReport subgroup_report(const RegularGroup& u, const PointSubgroup& h) {
  SubgroupReport r;
  r.order = h.order();
  r.is_abelian = is_abelian(u, h);
  const auto gens = subgroup_generators(u, h);
  const auto actions = conjugation_actions(u, gens);
  const PointSubgroup derived = commutator_subgroup(u, h, h, actions);
  r.derived_order = derived.order();
  r.abelianization = quotient_invariants(u, h, derived);
  if (r.is_abelian) r.invariants = r.abelianization;
  r.nilpotency_class = lower_central_series(u, h).nilpotency_class;
  if (r.nilpotency_class) r.min_generators = r.abelianization->torsion().size();
  return r;
}

SubgroupReport subgroup_report(const RegularGroup& u, std::span<const Point> gens) {
  return subgroup_report(u, subgroup_closure(u, gens));
}

namespace {

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (auto x : p) h = (h ^ x) * 1099511628211ULL;
    return h;
  }
};

}  // namespace

SubgroupReport subgroup_report(const PermutationGroup& g, std::span<const Permutation> gens, std::size_t cap) {
  std::vector<Permutation> nontrivial;
  for (const auto& p : gens) {
    if (!g.contains(p)) throw InputError("subgroup_report: generator is not in the group");
    if (!is_identity(p)) nontrivial.push_back(p);
  }
  if (nontrivial.empty()) {
    SubgroupReport r;
    r.invariants = r.abelianization = AbelianGroupStructure{};
    r.derived_order = 1;
    r.nilpotency_class = 0;
    r.min_generators = 0;
    return r;
  }
  const PermutationGroup h(g.degree(), nontrivial);
  const mpz_class order = h.order();
  if (order > static_cast<unsigned long>(cap)) {
    SubgroupReport r;
    r.order = order.get_ui();
    r.is_abelian = true;
    for (std::size_t i = 0; i < nontrivial.size() && r.is_abelian; ++i)
      for (std::size_t j = i + 1; j < nontrivial.size() && r.is_abelian; ++j)
        r.is_abelian = compose(nontrivial[i], nontrivial[j]) == compose(nontrivial[j], nontrivial[i]);
    r.capped = true;
    return r;
  }
  std::vector<Permutation> elements{identity_permutation(g.degree())};
  std::unordered_map<Permutation, std::uint32_t, PermutationHash> index{{elements[0], 0}};
  for (std::size_t i = 0; i < elements.size(); ++i) {
    for (const auto& s : nontrivial) {
      Permutation y = compose(elements[i], s);
      if (index.emplace(y, static_cast<std::uint32_t>(elements.size())).second) elements.push_back(std::move(y));
    }
  }
  if (elements.size() != order) throw InternalError("subgroup_report: listing disagrees with the stabilizer chain");
  const RegularGroup u = make_regular(elements.size(), nontrivial.size(), 0, [&](std::uint32_t x, std::size_t j) {
    return index.at(compose(elements[x], nontrivial[j]));
  });
  std::vector<Point> all(u.order());
  for (Point x = 0; x < u.order(); ++x) all[x] = x;
  return subgroup_report(u, PointSubgroup(u.order(), std::move(all)));
}

RegularGroup regular_group(const FiniteGroup& g, std::vector<Point>* numbering) {
  const auto& gens = g.generators();
  return make_regular(g.order(), gens.size(), g.identity(),
                      [&](std::uint32_t x, std::size_t j) { return g.mul(x, gens[j]); }, numbering);
}

}  // namespace qtensor
