#include "qtensor/nu_group.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <set>
#include <unordered_set>

#include "qtensor/error.hpp"

namespace qtensor {

namespace {

Word cyclic_reduce(Word w) {
  w = free_reduce(w);
  auto letters = w.letters();
  std::size_t lo = 0, hi = letters.size();
  while (hi - lo >= 2 && letters[lo].generator == letters[hi - 1].generator) {
    Letter& a = letters[lo];
    Letter& b = letters[hi - 1];
    const std::int32_t sum = a.exponent + b.exponent;
    if (sum == 0) {
      ++lo;
      --hi;
      continue;
    }
    // Fold the tail into the head; the word is still reduced afterwards.
    a.exponent = sum;
    --hi;
    break;
  }
  return Word(std::vector<Letter>(letters.begin() + static_cast<std::ptrdiff_t>(lo),
                                  letters.begin() + static_cast<std::ptrdiff_t>(hi)));
}

bool shorter(const Word& a, const Word& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  return a < b;
}

// Renames generator i of a word over S to offset + i.
Word shift(const Word& w, GeneratorId offset) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (auto l : w.letters()) out.push_back({l.generator + offset, l.exponent});
  return Word(std::move(out));
}

struct Sequence {
  std::vector<ElementId> gens;
  std::vector<Word> words;  // shortest words over S
};

// Definition words for the lean strategy. Generators: a_i = i, b_i = n + i,
// c_i = 2n + i for the i-th member of S.
class LeanDefinitions {
 public:
  LeanDefinitions(const FiniteGroup& g, std::int64_t q) : g_(g), q_(q) {
    seq_.gens = g.generators();
    seq_.words = shortest_words(g);
    n_ = static_cast<GeneratorId>(seq_.gens.size());
    hat_.resize(g.order());
    if (q >= 1) {
      for (ElementId e = 0; e < g.order(); ++e) hat_[e] = chain(seq_.words[e]).first;
    }
  }

  std::size_t generator_count() const { return (q_ >= 1 ? 3 : 2) * static_cast<std::size_t>(n_); }
  GeneratorId n() const { return n_; }
  const Sequence& sequence() const { return seq_; }

  Word gw(ElementId e) const { return shift(seq_.words[e], 0); }
  Word pw(ElementId e) const { return shift(seq_.words[e], n_); }
  const Word& hw(ElementId e) const { return hat_[e]; }

  // prod_{i=1}^{q-1} [k, (k1^-i)^phi]^(k^(q-1-i))
  Word product(ElementId k, ElementId k1) const {
    Word out;
    for (std::int64_t i = 1; i <= q_ - 1; ++i)
      out *= conjugate(commutator(gw(k), pw(g_.pow(k1, -i))), gw(g_.pow(k, q_ - 1 - i)));
    return out;
  }

  // Hat word of the element spelled by `w` over S, built one letter at a
  // time from hat(k s) = hat(k) P(k,s) c_s; also returns the element.
  std::pair<Word, ElementId> chain(const Word& w) const {
    Word h;
    ElementId k = g_.identity();
    for (const auto& l : w.letters()) {
      const ElementId s = seq_.gens[l.generator];
      const Word c = Word::generator(2 * n_ + l.generator);
      for (std::int32_t r = 0; r < std::abs(l.exponent); ++r) {
        if (l.exponent > 0) {
          h = h * product(k, s) * c;
          k = g_.mul(k, s);
        } else {
          const ElementId k2 = g_.mul(k, g_.inv(s));
          h = h * c.inverse() * product(k2, s).inverse();
          k = k2;
        }
      }
    }
    return {free_reduce(h), k};
  }

  Word substitute(const Word& w, const std::vector<GeneratorRole>& roles) const {
    Word out;
    for (const auto& l : w.letters()) {
      const auto& role = roles[l.generator];
      Word x;
      switch (role.family) {
        case GeneratorFamily::g_copy: x = gw(role.element); break;
        case GeneratorFamily::phi_copy: x = pw(role.element); break;
        case GeneratorFamily::hat: x = hat_[role.element]; break;
        case GeneratorFamily::free: throw InternalError("substitute: free generator");
      }
      out *= x.pow(l.exponent);
    }
    return out;
  }

  std::vector<GeneratorRole> roles() const {
    std::vector<GeneratorRole> r;
    for (auto f : {GeneratorFamily::g_copy, GeneratorFamily::phi_copy, GeneratorFamily::hat}) {
      if (f == GeneratorFamily::hat && q_ < 1) break;
      for (auto s : seq_.gens) r.push_back({f, s});
    }
    return r;
  }

 private:
  const FiniteGroup& g_;
  std::int64_t q_;
  Sequence seq_;
  GeneratorId n_ = 0;
  std::vector<Word> hat_;
};

std::vector<Word> lean_relators(const FiniteGroup& g, std::int64_t q, const LeanDefinitions& d) {
  std::vector<Word> out;
  const auto& gens = d.sequence().gens;
  const GeneratorId n = d.n();
  const auto a = [&](GeneratorId i) { return Word::generator(i); };
  const auto b = [&](GeneratorId i) { return Word::generator(n + i); };
  const auto c = [&](GeneratorId i) { return Word::generator(2 * n + i); };
  const std::vector<Word> base = short_relators(g);

  for (const auto& r : base) {
    out.push_back(shift(r, 0));
    out.push_back(shift(r, n));
  }
  for (GeneratorId i = 0; i < n; ++i) {
    out.push_back(a(i) * d.gw(gens[i]).inverse());
    out.push_back(b(i) * d.pw(gens[i]).inverse());
  }
  for (GeneratorId i = 0; i < n; ++i) {
    for (GeneratorId j = 0; j < n; ++j) {
      const Word cm = commutator(a(i), b(j));
      for (GeneratorId u = 0; u < n; ++u) {
        for (int e : {1, -1}) {
          const ElementId k = g.pow(gens[u], e);
          const Word rhs = commutator(d.gw(g.conj(gens[i], k)), d.pw(g.conj(gens[j], k)));
          out.push_back(conjugate(cm, a(u).pow(e)) * rhs.inverse());
          out.push_back(conjugate(cm, b(u).pow(e)) * rhs.inverse());
        }
      }
    }
  }
  if (q < 1) return out;

  for (const auto& r : base) out.push_back(d.chain(r).first);
  for (GeneratorId i = 0; i < n; ++i) out.push_back(c(i) * d.hw(gens[i]).inverse());
  for (GeneratorId u = 0; u < n; ++u) {
    for (int e : {1, -1}) {
      const ElementId x = g.pow(gens[u], e);
      for (GeneratorId k = 0; k < n; ++k) {
        const Word rhs = d.hw(g.conj(gens[k], x)).inverse();
        out.push_back(conjugate(c(k), a(u).pow(e)) * rhs);
        out.push_back(conjugate(c(k), b(u).pow(e)) * rhs);
      }
    }
  }
  for (GeneratorId k = 0; k < n; ++k) {
    const ElementId kq = g.pow(gens[k], q);
    for (GeneratorId i = 0; i < n; ++i) {
      for (GeneratorId j = 0; j < n; ++j) {
        const Word rhs = commutator(d.gw(g.conj(gens[i], kq)), d.pw(g.conj(gens[j], kq)));
        out.push_back(conjugate(commutator(a(i), b(j)), c(k)) * rhs.inverse());
      }
    }
    for (GeneratorId k1 = 0; k1 < n; ++k1) {
      const Word rhs = commutator(d.gw(kq), d.pw(g.pow(gens[k1], q)));
      out.push_back(commutator(c(k), c(k1)) * rhs.inverse());
    }
  }
  for (GeneratorId i = 0; i < n; ++i)
    for (GeneratorId j = 0; j < n; ++j)
      out.push_back(d.hw(g.comm(gens[i], gens[j])) * commutator(a(i), b(j)).pow(-q));
  return out;
}

// Reduces, drops trivial words and repeats, and orders shortest first.
std::vector<Word> normalize(std::vector<Word> words) {
  std::set<Word, decltype(&shorter)> seen(&shorter);
  for (auto& w : words) {
    Word r = cyclic_reduce(w);
    if (!r.empty()) seen.insert(std::move(r));
  }
  return {seen.begin(), seen.end()};
}

std::size_t total_length(const std::vector<Word>& ws) {
  std::size_t n = 0;
  for (const auto& w : ws) n += w.length();
  return n;
}

}  // namespace

std::vector<Word> shortest_words(const FiniteGroup& g) {
  const auto& gens = g.generators();
  std::vector<Word> words(g.order());
  std::vector<char> seen(g.order(), 0);
  std::deque<ElementId> queue{g.identity()};
  seen[g.identity()] = 1;
  while (!queue.empty()) {
    const ElementId x = queue.front();
    queue.pop_front();
    for (GeneratorId i = 0; i < gens.size(); ++i) {
      for (int e : {1, -1}) {
        const ElementId y = g.mul(x, e > 0 ? gens[i] : g.inv(gens[i]));
        if (seen[y]) continue;
        seen[y] = 1;
        words[y] = words[x] * Word::generator(i, e);
        queue.push_back(y);
      }
    }
  }
  return words;
}

std::vector<Word> short_relators(const FiniteGroup& g) {
  const auto& gens = g.generators();
  const std::vector<Word> words = shortest_words(g);
  std::vector<Word> candidates;
  for (ElementId x = 0; x < g.order(); ++x) {
    for (GeneratorId i = 0; i < gens.size(); ++i) {
      candidates.push_back(words[x] * Word::generator(i) * words[g.mul(x, gens[i])].inverse());
    }
  }
  candidates = normalize(std::move(candidates));

  std::vector<Word> chosen;
  std::vector<char> used(candidates.size(), 0);
  const EnumerationOptions options{64 * g.order() + 256, true};
  while (true) {
    const CosetTable t = enumerate_cosets(gens.size(), chosen, {}, options);
    if (t.complete() && t.size() == g.order()) return chosen;
    std::optional<std::size_t> pick;
    for (std::size_t i = 0; i < candidates.size() && !pick; ++i) {
      if (used[i]) continue;
      if (!t.complete() || t.trace(0, candidates[i]) != 0) pick = i;
    }
    if (!pick) throw InternalError("short_relators: Cayley graph cycles do not present " + g.name());
    used[*pick] = 1;
    chosen.push_back(candidates[*pick]);
  }
}

namespace {

Word role_word(const std::vector<Word>& g, const std::vector<Word>& phi, const std::vector<Word>& hat,
               const GeneratorRole& r) {
  switch (r.family) {
    case GeneratorFamily::g_copy: return g[r.element];
    case GeneratorFamily::phi_copy: return phi[r.element];
    case GeneratorFamily::hat: return hat[r.element];
    case GeneratorFamily::free: break;
  }
  throw InternalError("free generator in a nu^q presentation");
}

LimitExceeded too_many_cosets(const FiniteGroup& g, std::int64_t q, std::size_t max) {
  return LimitExceeded("nu^" + std::to_string(q) + "(" + g.name() + ") needs more than " + std::to_string(max) +
                       " cosets");
}

}  // namespace

NuGroup realize_nu(const FiniteGroup& g, std::int64_t q, const NuRealizationOptions& options) {
  if (q < 0) throw InputError("q must be nonnegative");
  NuGroup out;
  out.base_ = g;
  out.q_ = q;
  const FpPresentation full = build_nu_q(g, q, NuBuildOptions{options.max_relators});
  out.stats_.full_relators = full.relators.size();
  const EnumerationOptions eopts{options.max_cosets, true};
  const auto n = static_cast<ElementId>(g.order());
  out.g_words_.assign(n, Word{});
  out.phi_words_.assign(n, Word{});
  out.hat_words_.assign(n, Word{});

  if (options.strategy == RealizationStrategy::full) {
    const NuSymbols s(g, q);
    std::vector<Word> subgroup;
    for (ElementId e = 0; e < n; ++e) {
      out.g_words_[e] = s.g(e);
      out.phi_words_[e] = s.phi(e);
      if (q >= 1) out.hat_words_[e] = s.hat(e);
      if (!out.g_words_[e].empty()) subgroup.push_back(out.g_words_[e]);
    }
    out.action_ = enumerate_cosets(full.generator_count, full.relators, subgroup, eopts);
    if (!out.action_.complete()) throw too_many_cosets(g, q, options.max_cosets);
    out.stats_.rounds = 1;
    out.roles_ = full.roles;
    out.working_ = full.relators;
  } else {
    const LeanDefinitions d(g, q);
    for (ElementId e = 0; e < n; ++e) {
      out.g_words_[e] = d.gw(e);
      out.phi_words_[e] = d.pw(e);
      if (q >= 1) out.hat_words_[e] = d.hw(e);
    }
    std::vector<Word> subgroup;
    for (GeneratorId i = 0; i < d.n(); ++i) subgroup.push_back(Word::generator(i));

    // Substituted relators lie in the kernel of sigma, which meets the copy
    // of G trivially, so one trace from the base coset decides each of them.
    std::vector<Word> substituted;
    substituted.reserve(full.relators.size());
    for (const auto& r : full.relators) substituted.push_back(d.substitute(r, full.roles));
    substituted = normalize(std::move(substituted));

    std::vector<Word> working = normalize(lean_relators(g, q, d));
    std::unordered_set<Word, WordHash> in_working(working.begin(), working.end());
    const std::size_t initial = working.size();
    for (std::size_t round = 1;; ++round) {
      out.stats_.rounds = round;
      out.action_ = enumerate_cosets(d.generator_count(), working, subgroup, eopts);
      std::vector<Word> add;
      constexpr std::size_t batch = 32;
      for (const auto& w : substituted) {
        if (add.size() == batch) break;
        if (in_working.count(w)) continue;
        // An incomplete table decides nothing; take the shortest relators
        // not yet present instead.
        if (!out.action_.complete() || out.action_.trace(0, w) != 0) add.push_back(w);
      }
      if (out.action_.complete() && add.empty()) break;
      if (add.empty() || round == options.max_rounds) {
        if (!out.action_.complete()) throw too_many_cosets(g, q, options.max_cosets);
        throw InternalError("nu realization did not stabilize for " + g.name());
      }
      for (auto& w : add) {
        in_working.insert(w);
        working.push_back(std::move(w));
      }
    }
    out.stats_.added_relators = working.size() - initial;
    out.roles_ = d.roles();
    out.working_ = std::move(working);
  }
  out.stats_.enumeration = out.action_.stats();
  out.stats_.working_relators = out.working_.size();
  out.stats_.working_length = total_length(out.working_);
  out.build_upsilon();
  return out;
}

std::pair<ElementId, ElementId> NuGroup::sigma(const Word& w) const {
  ElementId x = base_.identity(), y = base_.identity();
  for (const auto& l : w.letters()) {
    const auto& r = roles_.at(l.generator);
    if (r.family == GeneratorFamily::g_copy) x = base_.mul(x, base_.pow(r.element, l.exponent));
    if (r.family == GeneratorFamily::phi_copy) y = base_.mul(y, base_.pow(r.element, l.exponent));
  }
  return {x, y};
}

std::optional<Point> NuGroup::to_upsilon(const Word& w) const {
  const auto [x, y] = sigma(w);
  if (x != base_.identity() || y != base_.identity()) return std::nullopt;
  const std::int32_t u = orbit_index_[action_.trace(0, w)];
  if (u < 0) throw InternalError("element of the kernel of sigma left the base orbit");
  return static_cast<Point>(u);
}

bool NuGroup::is_identity(const Word& w) const {
  const auto u = to_upsilon(w);
  return u && *u == 0;
}

Word NuGroup::upsilon_word(Point u) const {
  std::vector<std::uint32_t> cols;
  upsilon_.path(u, cols);
  Word w;
  for (auto c : cols) w *= c % 2 ? upsilon_gens_[c / 2].inverse() : upsilon_gens_[c / 2];
  return w;
}

Point NuGroup::conjugate(Point u, const Word& x) const {
  for (const auto& l : x.letters())
    for (std::int32_t i = 0; i < std::abs(l.exponent); ++i) u = conjugate(u, l.generator, l.exponent);
  return u;
}

void NuGroup::build_upsilon() {
  const std::size_t cosets = action_.size();
  const std::size_t m = base_.order();
  if (cosets % m != 0) throw InternalError("coset count is not a multiple of |G|");
  const std::size_t target = cosets / m;

  // Greedy generators: a candidate already in the current subgroup K maps
  // the base coset into K's orbit, since the action is free.
  std::vector<Word> candidates;
  for (ElementId k = 0; k < m; ++k)
    if (!hat_words_[k].empty()) candidates.push_back(hat_words_[k]);
  for (ElementId a = 0; a < m; ++a)
    for (ElementId b = 0; b < m; ++b) candidates.push_back(free_reduce(commutator(g_words_[a], phi_words_[b])));

  orbit_index_.assign(cosets, -1);
  std::vector<std::uint32_t> points{0};
  orbit_index_[0] = 0;
  std::vector<Word> gens;
  const auto visit = [&](std::uint32_t p, const Word& w) {
    const std::uint32_t r = action_.trace(p, w);
    if (orbit_index_[r] < 0) {
      orbit_index_[r] = static_cast<std::int32_t>(points.size());
      points.push_back(r);
    }
  };
  for (const auto& c : candidates) {
    if (points.size() == target) break;
    if (c.empty() || orbit_index_[action_.trace(0, c)] >= 0) continue;
    gens.push_back(c);
    const std::size_t old = points.size();
    for (std::size_t i = 0; i < old; ++i) visit(points[i], c);
    for (std::size_t i = old; i < points.size(); ++i)
      for (const auto& w : gens) visit(points[i], w);
  }
  // |Upsilon| * |G| == cosets is the order law checked by callers; the
  // orbit is a regular representation of Upsilon either way.
  const std::size_t k = gens.size();
  const std::size_t cols = 2 * k;
  std::vector<Point> number;
  upsilon_ = make_regular(
      points.size(), k, 0,
      [&](std::uint32_t x, std::size_t j) {
        return static_cast<std::uint32_t>(orbit_index_[action_.trace(points[x], gens[j])]);
      },
      &number);
  for (auto& v : orbit_index_)
    if (v >= 0) v = static_cast<std::int32_t>(number[static_cast<std::size_t>(v)]);
  upsilon_gens_ = std::move(gens);

  hat_.assign(m, 0);
  tensor_.assign(m * m, 0);
  for (ElementId e = 0; e < m; ++e) hat_[e] = *to_upsilon(hat_words_[e]);
  for (ElementId a = 0; a < m; ++a)
    for (ElementId b = 0; b < m; ++b) tensor_[a * m + b] = *to_upsilon(commutator(g_words_[a], phi_words_[b]));

  // rho along the breadth-first tree of Upsilon.
  std::vector<ElementId> gen_rho(cols);
  const auto rho_word = [&](const Word& w) {
    ElementId x = base_.identity();
    for (const auto& l : w.letters()) {
      const auto& r = roles_[l.generator];
      const ElementId img = r.family == GeneratorFamily::hat ? base_.pow(r.element, q_) : r.element;
      x = base_.mul(x, base_.pow(img, l.exponent));
    }
    return x;
  };
  for (std::size_t j = 0; j < k; ++j) {
    gen_rho[2 * j] = rho_word(upsilon_gens_[j]);
    gen_rho[2 * j + 1] = base_.inv(gen_rho[2 * j]);
  }
  rho_.assign(points.size(), base_.identity());
  for (Point u = 1; u < points.size(); ++u) rho_[u] = base_.mul(rho_[upsilon_.parent(u)], gen_rho[upsilon_.parent_column(u)]);

  // Conjugation by each enumerated generator: the coset of x^-1 u x is
  // reached from the base coset along x^-1, then u, then x.
  conj_.assign(2 * roles_.size(), std::vector<Point>(points.size()));
  std::vector<std::uint32_t> path;
  for (std::size_t j = 0; j < roles_.size(); ++j) {
    for (int sign : {1, -1}) {
      const Word x = Word::generator(static_cast<GeneratorId>(j), sign);
      const std::uint32_t start = action_.trace(0, x.inverse());
      auto& table = conj_[2 * j + (sign < 0 ? 1 : 0)];
      for (Point u = 0; u < points.size(); ++u) {
        std::uint32_t p = start;
        upsilon_.path(u, path);
        for (auto c : path) p = action_.trace(p, c % 2 ? upsilon_gens_[c / 2].inverse() : upsilon_gens_[c / 2]);
        const std::int32_t v = orbit_index_[action_.trace(p, x)];
        if (v < 0) throw InternalError("Upsilon is not normal in the enumerated group");
        table[u] = static_cast<Point>(v);
      }
    }
  }
}

std::vector<Point> NuGroup::induced_map(const NuGroup& target, const std::vector<ElementId>& map) const {
  if (map.size() != base_.order()) throw InputError("induced_map: element map has the wrong size");
  if (target.q_ != q_) throw InputError("induced_map: q differs");
  for (ElementId a = 0; a < base_.order(); ++a)
    for (ElementId b = 0; b < base_.order(); ++b)
      if (map.at(base_.mul(a, b)) != target.base().mul(map[a], map[b]))
        throw InputError("induced_map: element map is not a homomorphism");
  std::vector<Word> images(roles_.size());
  for (std::size_t i = 0; i < roles_.size(); ++i)
    images[i] = role_word(target.g_words_, target.phi_words_, target.hat_words_,
                          {roles_[i].family, map[roles_[i].element]});
  const auto translate = [&](const Word& w) {
    Word out;
    for (const auto& l : w.letters()) out *= images[l.generator].pow(l.exponent);
    return out;
  };
  const RegularGroup& t = target.upsilon();
  const std::size_t k = upsilon_gens_.size();
  std::vector<Point> col(2 * k);
  for (std::size_t j = 0; j < k; ++j) {
    const auto img = target.to_upsilon(translate(upsilon_gens_[j]));
    if (!img) throw InternalError("induced_map: image of Upsilon leaves Upsilon");
    col[2 * j] = *img;
    col[2 * j + 1] = t.inv(*img);
  }
  std::vector<Point> image(upsilon_.order(), 0);
  for (Point u = 1; u < upsilon_.order(); ++u) image[u] = t.mul(image[upsilon_.parent(u)], col[upsilon_.parent_column(u)]);
  for (Point u = 0; u < upsilon_.order(); ++u)
    for (std::uint32_t c = 0; c < 2 * k; ++c)
      if (image[upsilon_.act(u, c)] != t.mul(image[u], col[c]))
        throw InternalError("induced_map: images do not respect Upsilon");
  return image;
}

}  // namespace qtensor
