// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "qtensor/arith.hpp"
#include "qtensor/catalog.hpp"
#include "qtensor/closed_forms.hpp"
#include "qtensor/group_spec.hpp"
#include "qtensor/tensor_analyzer.hpp"

using namespace qtensor;
using Clock = std::chrono::steady_clock;

namespace {

// Pinned limits.
constexpr double grid_seconds = 300.0;
constexpr double battery_seconds = 1800.0;
constexpr std::int64_t grid_max_n = 8;
constexpr std::int64_t grid_max_q = 6;
constexpr std::int64_t catalog_max_q = 4;
constexpr std::uint64_t determinism_seed = 12345;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

AbelianGroupStructure ab(std::vector<std::int64_t> orders) { return AbelianGroupStructure::from_cyclic_orders(orders); }

std::int64_t catalog_limit(const CatalogEntry& e) { return e.max_q ? std::min(*e.max_q, catalog_max_q) : catalog_max_q; }

// Reports are shared between criteria; each pair is enumerated once.
class ReportCache {
 public:
  const TensorReport& get(const GroupSpec& spec, std::int64_t q) {
    const auto key = std::make_pair(spec.label(), q);
    auto it = cache_.find(key);
    if (it == cache_.end()) {
      const auto t0 = Clock::now();
      it = cache_.emplace(key, analyze(build_group(spec), q)).first;
      seconds_ += seconds_since(t0);
    }
    return it->second;
  }
  /// Time spent enumerating and checking so far.
  double seconds() const { return seconds_; }

 private:
  std::map<std::pair<std::string, std::int64_t>, TensorReport> cache_;
  double seconds_ = 0;
};

// G'G^q by closing commutators and q-th powers under multiplication.
std::size_t power_commutator_order_oracle(const FiniteGroup& g, std::int64_t q) {
  std::vector<char> in(g.order(), 0);
  std::vector<ElementId> members;
  const auto add = [&](ElementId x) {
    if (!in[x]) {
      in[x] = 1;
      members.push_back(x);
    }
  };
  add(g.identity());
  for (ElementId a = 0; a < g.order(); ++a) {
    if (q != 0) add(g.pow(a, q));
    for (ElementId b = 0; b < g.order(); ++b) add(g.comm(a, b));
  }
  const std::vector<ElementId> gens = members;
  for (std::size_t i = 0; i < members.size(); ++i)
    for (ElementId s : gens) add(g.mul(members[i], s));
  return members.size();
}

// Z_q / n Z_q, with Z_0 = Z.
AbelianGroupStructure cyclic_h2_oracle(std::int64_t n, std::int64_t q) {
  if (q == 0) return ab({n});
  std::vector<char> hit(static_cast<std::size_t>(q), 0);
  std::int64_t image = 0;
  for (std::int64_t x = 0; x < q; ++x) {
    auto& h = hit[static_cast<std::size_t>(n * x % q)];
    image += !h;
    h = 1;
  }
  return ab({q / image});
}

struct Verdict {
  bool pass = true;
  std::vector<std::string> notes;
  void fail(std::string why) {
    pass = false;
    if (notes.size() < 12) notes.push_back(std::move(why));
  }
};

std::string pair_name(const std::string& group, std::int64_t q) { return group + " q=" + std::to_string(q); }

Verdict criterion1() {
  Verdict o;
  const auto t0 = Clock::now();
  for (std::int64_t n = 1; n <= grid_max_n; ++n)
    for (std::int64_t q = 0; q <= grid_max_q; ++q) {
      const auto r = analyze(build_group(GroupSpec::cyclic(n)), q);
      const auto want = cyclic_tensor(n, q);
      if (!r.upsilon.invariants || *r.upsilon.invariants != want)
        o.fail(pair_name("C" + std::to_string(n), q) + ": closed form " + want.to_string());
    }
  const std::vector<std::tuple<std::int64_t, std::int64_t, AbelianGroupStructure>> named{
      {2, 0, ab({4})}, {2, 2, ab({4})}, {4, 2, ab({4, 2})}};
  for (const auto& [n, q, want] : named) {
    const auto r = analyze(build_group(GroupSpec::cyclic(n)), q);
    const std::string got = r.upsilon.invariants ? r.upsilon.invariants->to_string() : "?";
    if (!r.upsilon.invariants || *r.upsilon.invariants != want)
      o.fail(pair_name("C" + std::to_string(n), q) + ": enumerated " + got + ", stated " + want.to_string());
  }
  const double s = seconds_since(t0);
  if (s >= grid_seconds) o.fail("runtime " + std::to_string(s) + " s");
  return o;
}

Verdict criterion2(ReportCache& cache) {
  Verdict o;
  for (const auto& e : default_catalog())
    for (std::int64_t q = 0; q <= catalog_limit(e); ++q) {
      const auto& r = cache.get(e.spec, q);
      if (r.nu_order != r.group_order * r.group_order * r.upsilon.order)
        o.fail(pair_name(r.group, q) + ": |nu| = " + std::to_string(r.nu_order));
    }
  return o;
}

Verdict criterion3(ReportCache& cache) {
  Verdict o;
  const std::vector<std::string> ids{"basic-i",      "basic-ii",       "basic-iii",     "basic-iv",       "basic-v",
                                     "basic-vi",     "basic-vii",      "basic-viii",    "basic-ix",       "basic-x",
                                     "derived-sides", "derived-center", "diagonal-coset", "symmetric-order",
                                     "diagonal-order", "delta-central", "q2-symmetry",    "projection-kernel"};
  for (const auto& e : default_catalog())
    for (std::int64_t q = 0; q <= catalog_limit(e); ++q) {
      const auto& r = cache.get(e.spec, q);
      for (const auto& id : ids) {
        const auto* p = r.property(id);
        if (!p) o.fail(pair_name(r.group, q) + ": " + id + " missing");
        else if (p->status == CheckStatus::fail)
          o.fail(pair_name(r.group, q) + ": " + id + (p->detail.empty() ? "" : " (" + p->detail + ")"));
      }
    }
  // Criteria 2 and 3 only touch catalog pairs, so the cache time here is the
  // catalog analysis time whichever of them filled it.
  if (cache.seconds() >= battery_seconds) o.fail("runtime " + std::to_string(cache.seconds()) + " s");
  return o;
}

Verdict criterion4(ReportCache& cache) {
  Verdict o;
  for (const auto& spec : {GroupSpec::dihedral(8), GroupSpec::quaternion8(), GroupSpec::heisenberg_mod(3)})
    for (std::int64_t q = 0; q <= catalog_max_q; ++q) {
      const auto& r = cache.get(spec, q);
      for (const char* id : {"class2-hat-centralizes", "class2-derived-central", "class2-upsilon-class"}) {
        const auto* p = r.property(id);
        if (!p || p->status != CheckStatus::pass) o.fail(pair_name(r.group, q) + ": " + id);
      }
      if (!r.upsilon.nilpotency_class || *r.upsilon.nilpotency_class > 2)
        o.fail(pair_name(r.group, q) + ": Upsilon class above 2");
    }
  return o;
}

Verdict criterion5(ReportCache& cache) {
  Verdict o;
  for (const auto& e : default_catalog()) {
    const FiniteGroup g = build_group(e.spec);
    for (std::int64_t q = 0; q <= catalog_limit(e); ++q) {
      const auto& r = cache.get(e.spec, q);
      const std::size_t pc = power_commutator_order_oracle(g, q);
      if (r.upsilon.order != r.mu.order * pc)
        o.fail(pair_name(r.group, q) + ": |Upsilon| = " + std::to_string(r.upsilon.order) + ", |mu| |G'G^q| = " +
               std::to_string(r.mu.order * pc));
      const bool cyclic = e.spec.kind == GroupSpec::Kind::cyclic || e.spec.kind == GroupSpec::Kind::trivial;
      if (cyclic) {
        const std::int64_t n = static_cast<std::int64_t>(g.order());
        const auto want = cyclic_h2_oracle(n, q);
        if (want != ab({gcd0(n, q)})) o.fail(pair_name(r.group, q) + ": oracle disagrees with C_gcd");
        if (r.h2_invariants != want)
          o.fail(pair_name(r.group, q) + ": h2 = " + r.h2_invariants.to_string() + ", expected " + want.to_string());
      }
    }
  }
  return o;
}

Verdict criterion6(ReportCache& cache) {
  Verdict o;
  for (const auto& e : default_catalog()) {
    const auto orders = abelianization_generators(build_group(e.spec), 0).orders;
    const GroupSpec ab_spec = orders.empty() ? GroupSpec::trivial() : GroupSpec::abelian(orders);
    for (std::int64_t q : {1, 3, 5}) {
      const auto& r = cache.get(e.spec, q);
      const auto& s = cache.get(ab_spec, q);
      if (r.delta.order != s.delta.order)
        o.fail(pair_name(r.group, q) + ": |Delta| = " + std::to_string(r.delta.order) + ", abelianization gives " +
               std::to_string(s.delta.order));
    }
  }
  return o;
}

Verdict criterion7() {
  Verdict o;
  if (bacon_bound(2, 0) != 6) o.fail("bacon_bound(2,0) != 6");
  if (*freenil2_structure(2, 0).rank("total_rank") != 6) o.fail("N_{2,2} tensor square rank != 6");
  const auto f = freenil2_structure(2, 3);
  if (f.abelian_part != AbelianGroupStructure::homocyclic(3, 5)) o.fail("freenil2(2,3) abelian part");
  if (f.residual_factors != std::vector<std::string>{"N_{2,2}'N_{2,2}^3"}) o.fail("freenil2(2,3) residual");
  if (*f.rank("generator_count") != 8) o.fail("freenil2(2,3) d != 8");
  if (witt_rank(2, 3) != 2) o.fail("witt_rank(2,3) != 2");
  for (std::int64_t n = 2; n <= 12; ++n) {
    const mpz_class m = n;
    if (*freenil2_structure(n, 0).rank("total_rank") != m * (m * m + 3 * m - 1) / 3)
      o.fail("freenil2(" + std::to_string(n) + ",0) rank");
  }
  for (std::int64_t n = 2; n <= 6; ++n)
    for (std::int64_t q = 2; q <= 5; ++q)
      if (mpz_class(static_cast<unsigned long>(class2_generators(n, q).size())) !=
          *freenil2_structure(n, q).rank("generator_count"))
        o.fail("class2_generators(" + std::to_string(n) + "," + std::to_string(q) + ") count");
  return o;
}

Verdict criterion8(ReportCache& cache) {
  Verdict o;
  for (const auto& e : default_catalog()) {
    const FiniteGroup g = build_group(e.spec);
    // Class at most 2: G' central, checked on the table.
    bool class2 = true;
    for (ElementId a = 0; a < g.order() && class2; ++a)
      for (ElementId b = 0; b < g.order() && class2; ++b)
        for (ElementId c = 0; c < g.order() && class2; ++c) class2 = g.comm(g.comm(a, b), c) == g.identity();
    if (!class2) continue;
    const auto d = static_cast<std::int64_t>(abelianization_generators(g, 0).basis.size());
    for (std::int64_t q = 0; q <= catalog_limit(e); ++q) {
      const auto& r = cache.get(e.spec, q);
      if (!r.upsilon.min_generators) {
        o.fail(pair_name(r.group, q) + ": d(Upsilon) not computed");
        continue;
      }
      const auto measured = static_cast<long>(*r.upsilon.min_generators);
      const bool coprime = q >= 1 && gcd0(q, g.exponent()) == 1;
      const mpz_class general = d == 0 ? mpz_class(0) : bacon_bound(d, q);
      if (measured > general)
        o.fail(pair_name(r.group, q) + ": d = " + std::to_string(measured) + " > " + general.get_str());
      if (coprime && measured > d * d)
        o.fail(pair_name(r.group, q) + ": d = " + std::to_string(measured) + " > n^2 = " + std::to_string(d * d));
    }
  }
  return o;
}

Verdict criterion9() {
  Verdict o;
  const std::vector<std::pair<std::int64_t, std::int64_t>> pairs{{2, 2}, {2, 4}, {2, 3}};
  for (const auto& [a, b] : pairs)
    for (std::int64_t q = 0; q <= catalog_max_q; ++q) {
      const auto v = verify_direct_product(build_group(GroupSpec::cyclic(a)), build_group(GroupSpec::cyclic(b)), q);
      const std::string name = "C" + std::to_string(a) + "xC" + std::to_string(b) + " q=" + std::to_string(q);
      if (!v.order_law) o.fail(name + ": order identity");
      if (!v.tensor_law) o.fail(name + ": |[N,H^phi]| = " + std::to_string(v.first_second_order));
    }
  return o;
}

Verdict criterion10() {
  Verdict o;
  AnalysisOptions sampled;
  sampled.exhaustive_limit = 0;
  sampled.samples = 500;
  sampled.seed = determinism_seed;
  for (const auto& spec : {GroupSpec::dihedral(8), GroupSpec::symmetric(3), GroupSpec::abelian({2, 4})}) {
    const FiniteGroup g = build_group(spec);
    for (std::int64_t q = 0; q <= 3; ++q) {
      if (to_json(analyze(g, q, sampled)).dump() != to_json(analyze(g, q, sampled)).dump())
        o.fail(pair_name(spec.label(), q) + ": sampled report differs");
      if (to_json(analyze(g, q)).dump() != to_json(analyze(g, q)).dump())
        o.fail(pair_name(spec.label(), q) + ": exhaustive report differs");
    }
  }
  RunConfig config;
  config.seed = determinism_seed;
  const auto catalog = default_catalog();
  const std::vector<CatalogEntry> small(catalog.begin(), catalog.begin() + 10);
  RunConfig single = config;
  single.threads = 1;
  if (to_json(run_verify(small, 0, 3, config)).dump() != to_json(run_verify(small, 0, 3, single)).dump())
    o.fail("verify summary depends on thread count");
  return o;
}

}  // namespace

int main() {
  ReportCache cache;
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"cyclic grid equals the cyclic closed form", criterion1},
      {"order law |nu| = |G|^2 |Upsilon|", [&] { return criterion2(cache); }},
      {"property battery over the catalog", [&] { return criterion3(cache); }},
      {"class-2 proposition", [&] { return criterion4(cache); }},
      {"quotient laws and cyclic h2", [&] { return criterion5(cache); }},
      {"odd q: |Delta(G)| = |Delta(G^ab)|", [&] { return criterion6(cache); }},
      {"closed-form arithmetic", criterion7},
      {"generator bounds for class-2 groups", [&] { return criterion8(cache); }},
      {"direct-product law", criterion9},
      {"determinism", criterion10},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = Clock::now();
    const Verdict o = criteria[i].second();
    failed += !o.pass;
    std::printf("criterion %2zu %s  %s (%.1f s)\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                seconds_since(t0));
    for (const auto& n : o.notes) std::printf("    %s\n", n.c_str());
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
