#include "qtensor/permutation_group.hpp"

#include <numeric>

#include "qtensor/error.hpp"

namespace qtensor {

Permutation identity_permutation(std::size_t degree) {
  Permutation p(degree);
  std::iota(p.begin(), p.end(), 0U);
  return p;
}

Permutation compose(const Permutation& a, const Permutation& b) {
  Permutation r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = b[a[i]];
  return r;
}

Permutation inverse(const Permutation& p) {
  Permutation r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[p[i]] = static_cast<std::uint32_t>(i);
  return r;
}

bool is_identity(const Permutation& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != i) return false;
  return true;
}

bool is_bijection(const Permutation& p, std::size_t degree) {
  if (p.size() != degree) return false;
  std::vector<char> hit(degree, 0);
  for (auto x : p) {
    if (x >= degree || hit[x]) return false;
    hit[x] = 1;
  }
  return true;
}

namespace {

std::uint32_t first_moved(const Permutation& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != i) return static_cast<std::uint32_t>(i);
  throw InternalError("identity has no moved point");
}

}  // namespace

PermutationGroup::PermutationGroup(std::size_t degree, std::vector<Permutation> generators,
                                   std::vector<std::uint32_t> base_prefix)
    : degree_(degree), generators_(std::move(generators)) {
  for (const auto& g : generators_)
    if (!is_bijection(g, degree_)) throw InputError("generator is not a permutation of " + std::to_string(degree_) + " points");
  for (auto b : base_prefix) {
    if (b >= degree_) throw InputError("base point out of range");
    levels_.push_back(Level{b, {}, {}, {}});
  }
  for (auto& l : levels_) rebuild_orbit(l);
  for (const auto& g : generators_) {
    if (is_identity(g)) continue;
    std::size_t j = 0;
    while (j < levels_.size() && g[levels_[j].point] == levels_[j].point) ++j;
    if (j == levels_.size()) {
      levels_.push_back(Level{first_moved(g), {}, {}, {}});
    }
    add_strong(0, j, g);
  }

  // Every Schreier generator of every level must sift through the levels
  // below it; a failure extends the chain and restarts from there.
  std::size_t i = levels_.size();
  while (i-- > 0) {
    bool extended = false;
    for (std::size_t oi = 0; oi < levels_[i].orbit.size() && !extended; ++oi) {
      const std::uint32_t beta = levels_[i].orbit[oi];
      const Permutation u = transversal(levels_[i], beta);
      for (std::size_t gi = 0; gi < levels_[i].gens.size(); ++gi) {
        const std::size_t s = levels_[i].gens[gi];
        const std::uint32_t image = strong_[s][beta];
        Permutation h = compose(compose(u, strong_[s]), inverse(transversal(levels_[i], image)));
        if (is_identity(h)) continue;
        auto [r, j] = strip(std::move(h), i + 1);
        if (j == levels_.size() && is_identity(r)) continue;
        if (j == levels_.size()) levels_.push_back(Level{first_moved(r), {}, {}, {}});
        add_strong(i + 1, j, std::move(r));
        i = j + 1;
        extended = true;
        break;
      }
    }
  }
}

PermutationGroup PermutationGroup::from_coset_table(const CosetTable& t) {
  if (!t.complete()) throw InputError("coset table is not complete");
  std::vector<Permutation> gens(t.generator_count(), Permutation(t.size()));
  for (std::size_t g = 0; g < t.generator_count(); ++g)
    for (std::uint32_t x = 0; x < t.size(); ++x) gens[g][x] = t.act(x, static_cast<std::uint32_t>(2 * g));
  return PermutationGroup(t.size(), std::move(gens));
}

void PermutationGroup::rebuild_orbit(Level& l) const {
  l.label.assign(degree_, -1);
  l.orbit.assign(1, l.point);
  l.label[l.point] = -2;
  for (std::size_t k = 0; k < l.orbit.size(); ++k) {
    const std::uint32_t x = l.orbit[k];
    for (auto s : l.gens) {
      const std::uint32_t y = strong_[s][x];
      if (l.label[y] == -1) {
        l.label[y] = static_cast<std::int32_t>(s);
        l.orbit.push_back(y);
      }
    }
  }
}

Permutation PermutationGroup::transversal(const Level& l, std::uint32_t point) const {
  std::vector<std::size_t> path;
  while (l.label[point] != -2) {
    const auto s = static_cast<std::size_t>(l.label[point]);
    path.push_back(s);
    point = strong_inv_[s][point];
  }
  Permutation u = identity_permutation(degree_);
  for (auto it = path.rbegin(); it != path.rend(); ++it) u = compose(u, strong_[*it]);
  return u;
}

std::pair<Permutation, std::size_t> PermutationGroup::strip(Permutation p, std::size_t from) const {
  for (std::size_t i = from; i < levels_.size(); ++i) {
    const Level& l = levels_[i];
    std::uint32_t beta = p[l.point];
    if (l.label[beta] == -1) return {std::move(p), i};
    while (beta != l.point) {
      p = compose(p, strong_inv_[static_cast<std::size_t>(l.label[beta])]);
      beta = p[l.point];
    }
  }
  return {std::move(p), levels_.size()};
}

void PermutationGroup::add_strong(std::size_t from, std::size_t to, Permutation p) {
  const std::size_t idx = strong_.size();
  strong_inv_.push_back(inverse(p));
  strong_.push_back(std::move(p));
  for (std::size_t l = from; l <= to && l < levels_.size(); ++l) {
    levels_[l].gens.push_back(idx);
    rebuild_orbit(levels_[l]);
  }
}

std::vector<std::uint32_t> PermutationGroup::base() const {
  std::vector<std::uint32_t> b;
  for (const auto& l : levels_) b.push_back(l.point);
  return b;
}

mpz_class PermutationGroup::order() const {
  mpz_class n = 1;
  for (const auto& l : levels_) n *= static_cast<unsigned long>(l.orbit.size());
  return n;
}

std::vector<std::size_t> PermutationGroup::orbit_lengths() const {
  std::vector<std::size_t> out;
  for (const auto& l : levels_) out.push_back(l.orbit.size());
  return out;
}

bool PermutationGroup::contains(const Permutation& p) const {
  if (!is_bijection(p, degree_)) return false;
  auto [r, j] = strip(p, 0);
  return j == levels_.size() && is_identity(r);
}

std::vector<Permutation> PermutationGroup::stabilizer_generators(std::size_t level) const {
  if (level == 0) return generators_;
  std::vector<Permutation> out;
  if (level >= levels_.size()) return out;
  for (auto s : levels_[level].gens) out.push_back(strong_[s]);
  return out;
}

std::vector<Permutation> kernel_of_action(const PermutationGroup& g, std::span<const Permutation> target_action) {
  if (target_action.size() != g.generators().size())
    throw InputError("kernel_of_action: need one target permutation per generator");
  const std::size_t d = g.degree();
  const std::size_t a = target_action.empty() ? 0 : target_action.front().size();
  std::vector<Permutation> combined;
  for (std::size_t i = 0; i < target_action.size(); ++i) {
    if (!is_bijection(target_action[i], a)) throw InputError("kernel_of_action: target is not a permutation");
    Permutation p(d + a);
    for (std::size_t x = 0; x < d; ++x) p[x] = g.generators()[i][x];
    for (std::size_t x = 0; x < a; ++x) p[d + x] = static_cast<std::uint32_t>(d + target_action[i][x]);
    combined.push_back(std::move(p));
  }
  std::vector<std::uint32_t> prefix(a);
  std::iota(prefix.begin(), prefix.end(), static_cast<std::uint32_t>(d));
  const PermutationGroup c(d + a, std::move(combined), prefix);
  // The graph of a homomorphism is isomorphic to its domain; anything
  // larger means some relation of g is broken on the target side.
  if (c.order() != g.order()) throw InputError("kernel_of_action: target action does not respect the relations");
  std::vector<Permutation> out;
  const auto stab = a == 0 ? c.generators() : c.stabilizer_generators(a);
  for (const auto& p : stab) {
    Permutation r(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(d));
    if (!is_identity(r)) out.push_back(std::move(r));
  }
  return out;
}

}  // namespace qtensor
