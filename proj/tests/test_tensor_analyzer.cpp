#include "doctest.h"
#include "qtensor/arith.hpp"
#include "qtensor/closed_forms.hpp"
#include "qtensor/error.hpp"
#include "qtensor/group_spec.hpp"
#include "qtensor/tensor_analyzer.hpp"

using namespace qtensor;

namespace {

AbelianGroupStructure ab(std::vector<std::int64_t> orders) { return AbelianGroupStructure::from_cyclic_orders(orders); }

// Z_q / n Z_q by listing residues; the quotient of a cyclic group is cyclic.
AbelianGroupStructure cyclic_cohomology_oracle(std::int64_t n, std::int64_t q) {
  std::vector<char> image(static_cast<std::size_t>(q), 0);
  std::int64_t size = 0;
  for (std::int64_t x = 0; x < q; ++x) {
    auto& slot = image[static_cast<std::size_t>(n * x % q)];
    if (!slot) ++size;
    slot = 1;
  }
  return ab({q / size});
}

std::vector<std::string> failures(const TensorReport& r) {
  std::vector<std::string> out;
  for (const auto& p : r.properties)
    if (p.status == CheckStatus::fail) out.push_back(p.id);
  return out;
}

CheckStatus status(const TensorReport& r, const std::string& id) {
  const auto* p = r.property(id);
  REQUIRE(p != nullptr);
  return p->status;
}

}  // namespace

TEST_CASE("trivial group: every order is 1") {
  for (std::int64_t q = 0; q <= 5; ++q) {
    const auto r = analyze(build_group(GroupSpec::trivial()), q);
    CHECK(r.nu_order == 1);
    CHECK(r.upsilon.order == 1);
    CHECK(r.delta.order == 1);
    CHECK(r.mu.order == 1);
    CHECK(r.exterior_order == 1);
    CHECK(r.theta_order == 1);
    CHECK(r.h2_invariants.trivial());
    CHECK(r.all_passed());
  }
}

TEST_CASE("cyclic(2) at q = 2 gives C4") {
  const auto r = analyze(build_group(GroupSpec::cyclic(2)), 2);
  CHECK(r.upsilon.order == 4);
  REQUIRE(r.upsilon.invariants);
  CHECK(*r.upsilon.invariants == ab({4}));
}

TEST_CASE("cyclic groups match the cyclic closed form") {
  for (std::int64_t n = 1; n <= 8; ++n)
    for (std::int64_t q = 0; q <= 6; ++q) {
      CAPTURE(n);
      CAPTURE(q);
      const TensorAnalysis a(build_group(GroupSpec::cyclic(n)), q);
      const auto r = a.report();
      REQUIRE(r.upsilon.invariants);
      CHECK(*r.upsilon.invariants == cyclic_tensor(n, q));
      // mu / Delta is H^2(C_n, Z_q) = Z_q / n Z_q for q >= 1 and the Schur
      // multiplier, which vanishes, for q = 0.
      CHECK(r.h2_invariants == (q == 0 ? AbelianGroupStructure{} : cyclic_cohomology_oracle(n, q)));
      CHECK(r.h2_invariants == (q == 0 ? AbelianGroupStructure{} : ab({gcd0(n, q)})));
    }
}

TEST_CASE("report invariants over a sample of groups") {
  const std::vector<GroupSpec> specs{GroupSpec::cyclic(6), GroupSpec::abelian({2, 2}), GroupSpec::dihedral(8),
                                     GroupSpec::quaternion8(), GroupSpec::symmetric(3)};
  for (const auto& spec : specs)
    for (std::int64_t q = 0; q <= 4; ++q) {
      CAPTURE(spec.label());
      CAPTURE(q);
      const FiniteGroup g = build_group(spec);
      const TensorAnalysis a(g, q);
      const auto r = a.report();
      CHECK(r.nu_order == g.order() * g.order() * r.upsilon.order);
      CHECK(r.mu.order % r.delta.order == 0);
      CHECK(r.upsilon.order % r.mu.order == 0);
      CHECK(r.upsilon.order == r.mu.order * power_commutator_subgroup(g, q).order());
      CHECK(r.exterior_order * r.delta.order == r.upsilon.order);
      CHECK(r.theta_order == g.order() * r.upsilon.order);
      CHECK(*r.h2_invariants.order() * r.delta.order == r.mu.order);
      for (Point x : a.delta().members()) CHECK(a.central(x));
      for (Point x : a.mu().members()) CHECK(a.nu().rho(x) == g.identity());
    }
}

TEST_CASE("property battery: basic relations hold") {
  const std::vector<GroupSpec> specs{GroupSpec::cyclic(4), GroupSpec::abelian({2, 4}), GroupSpec::dihedral(8),
                                     GroupSpec::quaternion8(), GroupSpec::symmetric(3)};
  for (const auto& spec : specs)
    for (std::int64_t q = 0; q <= 4; ++q) {
      CAPTURE(spec.label());
      CAPTURE(q);
      const auto r = analyze(build_group(spec), q);
      for (const char* id : {"basic-i", "basic-ii", "basic-iii", "basic-iv", "basic-v", "basic-vi", "basic-vii",
                             "basic-viii", "basic-ix", "basic-x", "derived-sides", "derived-center",
                             "diagonal-coset", "symmetric-order", "diagonal-order", "q2-symmetry",
                             "hat-commuting-product", "hat-power", "projection-kernel-hats", "delta-central",
                             "quotient-order", "order-law", "basis-delta", "basis-upsilon"}) {
        CAPTURE(id);
        CHECK(status(r, id) != CheckStatus::fail);
      }
    }
}

TEST_CASE("quaternion8 at q = 2: class-2 checks pass") {
  const auto r = analyze(build_group(GroupSpec::quaternion8()), 2);
  CHECK(status(r, "class2-hat-centralizes") == CheckStatus::pass);
  CHECK(status(r, "class2-derived-central") == CheckStatus::pass);
  CHECK(status(r, "class2-upsilon-class") == CheckStatus::pass);
  CHECK(status(r, "generator-bound") == CheckStatus::pass);
  CHECK(failures(r).empty());
}

TEST_CASE("symmetric(3) at q = 3: odd-q Delta check passes, class-2 checks skipped") {
  const auto r = analyze(build_group(GroupSpec::symmetric(3)), 3);
  CHECK(status(r, "odd-q-delta") == CheckStatus::pass);
  CHECK(status(r, "class2-hat-centralizes") == CheckStatus::skipped);
  CHECK(status(r, "q2-symmetry") == CheckStatus::skipped);
  CHECK(failures(r).empty());
}

TEST_CASE("kernel of the projection to the abelianization") {
  // q sharing a prime with |G'|: the kernel is [G', G^phi].
  CHECK(status(analyze(build_group(GroupSpec::dihedral(8)), 2), "projection-kernel") == CheckStatus::pass);
  CHECK(status(analyze(build_group(GroupSpec::symmetric(3)), 3), "projection-kernel") == CheckStatus::pass);
  // For q prime to |G| the kernel also contains hats of G'; D8 at q = 1 has
  // [G', G^phi] = 1 and a kernel of order 2.
  const auto r = analyze(build_group(GroupSpec::dihedral(8)), 1);
  CHECK(status(r, "projection-kernel") == CheckStatus::fail);
  CHECK(status(r, "projection-kernel-hats") == CheckStatus::pass);
  CHECK(r.property("projection-kernel")->detail == "|Ker| = 2, |[G',G^phi]| = 1");
}

TEST_CASE("sampled checks are seeded and reproducible") {
  AnalysisOptions o;
  o.exhaustive_limit = 0;
  o.samples = 200;
  o.seed = 42;
  const FiniteGroup g = build_group(GroupSpec::dihedral(8));
  const auto a = analyze(g, 2, o);
  const auto b = analyze(g, 2, o);
  CHECK(a.check_mode == "sampled");
  CHECK(a.seed == 42);
  CHECK(a.property("basic-i")->cases == 200);
  CHECK(to_json(a).dump() == to_json(b).dump());
  CHECK(a.all_passed());
}

TEST_CASE("report JSON has a stable shape") {
  const auto j = to_json(analyze(build_group(GroupSpec::cyclic(2)), 2));
  auto it = j.begin();
  CHECK(it.key() == "schema");
  CHECK(j["schema"] == 1);
  CHECK(j["upsilon"]["invariants"]["text"] == "C4");
  CHECK(j["h2_invariants"]["text"] == "C2");
  CHECK(j["properties"].is_array());
  CHECK(j["properties"][0]["id"] == "basic-i");
  CHECK(j["properties"][0]["counterexample"].is_null());
}

TEST_CASE("direct products") {
  const FiniteGroup c2 = build_group(GroupSpec::cyclic(2));
  const FiniteGroup c3 = build_group(GroupSpec::cyclic(3));
  const FiniteGroup c4 = build_group(GroupSpec::cyclic(4));

  const auto a = verify_direct_product(c2, c2, 0);
  CHECK(a.first_second_order == 2);
  CHECK(a.predicted_first_second == ab({2}));
  CHECK(a.passed());

  const auto b = verify_direct_product(c2, c3, 0);
  CHECK(b.mid_order == 1);
  CHECK(b.passed());

  // At q = 2 the two cross terms coincide.
  const auto c = verify_direct_product(c2, c2, 2);
  CHECK(c.mid_order == c.first_second_order);
  CHECK(c.first_second_order == c.second_first_order);
  CHECK(c.passed());

  for (std::int64_t q = 0; q <= 4; ++q) {
    CAPTURE(q);
    CHECK(verify_direct_product(c2, c4, q).passed());
    CHECK(verify_direct_product(c2, c3, q).passed());
  }
}

TEST_CASE("realization limits propagate") {
  AnalysisOptions o;
  o.realization.max_cosets = 10;
  CHECK_THROWS_AS(analyze(build_group(GroupSpec::quaternion8()), 2, o), LimitExceeded);
}
