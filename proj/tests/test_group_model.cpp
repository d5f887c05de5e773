#include <algorithm>
#include <set>

#include "doctest.h"
#include "qtensor/error.hpp"
#include "qtensor/group_spec.hpp"

using namespace qtensor;

namespace {

// Naive fixpoint closure of a set under the Cayley table.
std::set<ElementId> brute_closure(const FiniteGroup& g, std::set<ElementId> s) {
  s.insert(g.identity());
  bool grew = true;
  while (grew) {
    grew = false;
    const std::vector<ElementId> cur(s.begin(), s.end());
    for (auto x : cur)
      for (auto y : cur) grew |= s.insert(g.mul(x, y)).second;
  }
  return s;
}

std::set<ElementId> brute_commutators(const FiniteGroup& g, const std::set<ElementId>& a, const std::set<ElementId>& b) {
  std::set<ElementId> c;
  for (auto x : a)
    for (auto y : b) c.insert(g.mul(g.mul(g.inv(x), g.inv(y)), g.mul(x, y)));
  return brute_closure(g, c);
}

std::set<ElementId> as_set(const SubgroupElements& s) { return {s.members().begin(), s.members().end()}; }

std::int64_t brute_order(const FiniteGroup& g, ElementId x) {
  std::int64_t n = 1;
  for (ElementId y = x; y != g.identity(); y = g.mul(y, x)) ++n;
  return n;
}

std::vector<std::vector<ElementId>> rows_of(const FiniteGroup& g) {
  std::vector<std::vector<ElementId>> rows(g.order(), std::vector<ElementId>(g.order()));
  for (ElementId a = 0; a < g.order(); ++a)
    for (ElementId b = 0; b < g.order(); ++b) rows[a][b] = g.mul(a, b);
  return rows;
}

const std::vector<GroupSpec>& sample_specs() {
  static const std::vector<GroupSpec> specs = {
      GroupSpec::trivial(),          GroupSpec::cyclic(6),         GroupSpec::abelian({2, 4}),
      GroupSpec::abelian({3, 3}),    GroupSpec::dihedral(8),       GroupSpec::quaternion8(),
      GroupSpec::heisenberg_mod(3),  GroupSpec::symmetric(3),      GroupSpec::symmetric(4),
      GroupSpec::dihedral(6),        GroupSpec::product(GroupSpec::cyclic(2), GroupSpec::cyclic(3))};
  return specs;
}

}  // namespace

TEST_CASE("build_group examples") {
  const auto triv = build_group(GroupSpec::cyclic(1));
  CHECK(triv.order() == 1);
  CHECK(triv.generators().empty());
  const auto c6 = build_group(GroupSpec::cyclic(6));
  CHECK(c6.order() == 6);
  CHECK(c6.generators().size() == 1);

  const auto h = build_group(GroupSpec::heisenberg_mod(3));
  CHECK(h.order() == 27);
  CHECK(h.generators().size() == 2);
  std::int64_t e = 1;
  for (ElementId x = 0; x < h.order(); ++x) e = std::max(e, brute_order(h, x));
  CHECK(e == 3);
  CHECK(h.exponent() == 3);
  const auto all = brute_closure(h, {});
  std::set<ElementId> everything;
  for (ElementId x = 0; x < h.order(); ++x) everything.insert(x);
  const auto g2 = brute_commutators(h, everything, everything);
  const auto g3 = brute_commutators(h, g2, everything);
  CHECK(g2.size() == 3);
  CHECK(g3.size() == 1);
  const auto lcs = lower_central_series(h);
  CHECK(lcs.nilpotency_class == 2);
  REQUIRE(lcs.terms.size() == 3);
  CHECK(lcs.terms[1].order() == 3);
  CHECK(lcs.terms[1] == center(h));
}

TEST_CASE("built-in families have the expected shape") {
  CHECK(build_group(GroupSpec::dihedral(8)).order() == 8);
  CHECK(build_group(GroupSpec::quaternion8()).exponent() == 4);
  CHECK(build_group(GroupSpec::symmetric(4)).order() == 24);
  CHECK(build_group(GroupSpec::abelian({2, 3})).generators().size() == 1);
  CHECK(build_group(GroupSpec::abelian({2, 2})).generators().size() == 2);
  CHECK(lower_central_series(build_group(GroupSpec::cyclic(5))).nilpotency_class == 1);
  CHECK(lower_central_series(build_group(GroupSpec::dihedral(8))).nilpotency_class == 2);
  CHECK(lower_central_series(build_group(GroupSpec::quaternion8())).nilpotency_class == 2);
  CHECK(lower_central_series(build_group(GroupSpec::trivial())).nilpotency_class == 0);
}

TEST_CASE("derived_subgroup") {
  const auto c6 = build_group(GroupSpec::cyclic(6));
  CHECK(derived_subgroup(c6).trivial());
  const auto s3 = build_group(GroupSpec::symmetric(3));
  std::set<ElementId> all;
  for (ElementId x = 0; x < 6; ++x) all.insert(x);
  CHECK(brute_commutators(s3, all, all).size() == 3);
  CHECK(as_set(derived_subgroup(s3)) == brute_commutators(s3, all, all));
  const auto q8 = build_group(GroupSpec::quaternion8());
  std::set<ElementId> q8all;
  for (ElementId x = 0; x < 8; ++x) q8all.insert(x);
  CHECK(as_set(derived_subgroup(q8)) == brute_commutators(q8, q8all, q8all));
  CHECK(derived_subgroup(q8).order() == 2);
  CHECK(derived_subgroup(q8) == center(q8));
}

TEST_CASE("lower_central_series of S3 stabilizes above 1") {
  const auto s3 = build_group(GroupSpec::symmetric(3));
  const auto lcs = lower_central_series(s3);
  CHECK_FALSE(lcs.nilpotency_class.has_value());
  CHECK(lcs.terms.back().order() == 3);
}

TEST_CASE("power_commutator_subgroup") {
  const auto s3 = build_group(GroupSpec::symmetric(3));
  CHECK(power_commutator_subgroup(s3, 1).order() == 6);
  CHECK(power_commutator_subgroup(s3, 0) == derived_subgroup(s3));
  const auto c6 = build_group(GroupSpec::cyclic(6));
  std::set<ElementId> fourth;
  for (ElementId x = 0; x < 6; ++x) fourth.insert(c6.pow(x, 4));
  CHECK(brute_closure(c6, fourth).size() == 3);
  CHECK(power_commutator_subgroup(c6, 4).order() == 3);
}

TEST_CASE("coset_order") {
  const auto s3 = build_group(GroupSpec::symmetric(3));
  CHECK(coset_order(s3, s3.identity()) == 1);
  CHECK(coset_order(s3, s3.generators()[0]) == 2);
  const auto c6 = build_group(GroupSpec::cyclic(6));
  CHECK(coset_order(c6, c6.generators()[0]) == 6);
}

TEST_CASE("group invariants hold across the sample") {
  for (const auto& spec : sample_specs()) {
    const auto g = build_group(spec);
    CAPTURE(g.name());
    CHECK(g.order() % static_cast<std::size_t>(g.exponent()) == 0);
    const auto d = derived_subgroup(g);
    CHECK(is_normal(g, d));
    const auto ab = abelianization(g);
    CHECK(ab.group.is_abelian());
    CHECK(ab.group.order() * d.order() == g.order());
    for (ElementId x = 0; x < g.order(); ++x) CHECK(g.element_order(x) % coset_order(g, x) == 0);
    const auto lcs = lower_central_series(g);
    for (std::size_t i = 0; i < lcs.terms.size(); ++i) {
      CHECK(is_normal(g, lcs.terms[i]));
      if (i > 0) CHECK(std::includes(lcs.terms[i - 1].members().begin(), lcs.terms[i - 1].members().end(),
                                     lcs.terms[i].members().begin(), lcs.terms[i].members().end()));
    }
    // abelian_basis realizes the invariants as an internal direct product
    const auto basis = abelian_basis(ab.group);
    const auto inv = abelian_invariants(ab.group);
    REQUIRE(basis.size() == inv.torsion().size());
    CHECK(subgroup_generated(ab.group, basis).order() == ab.group.order());
    for (std::size_t i = 0; i < basis.size(); ++i) CHECK(ab.group.element_order(basis[i]) == inv.torsion()[i]);
    // round trip through an explicit Cayley table
    const auto again = build_group(GroupSpec::cayley(rows_of(g), g.generators()));
    CHECK(again.order() == g.order());
  }
}

TEST_CASE("abelian invariants of abelianizations") {
  CHECK(abelian_invariants(abelianization(build_group(GroupSpec::symmetric(4))).group).to_string() == "C2");
  CHECK(abelian_invariants(abelianization(build_group(GroupSpec::heisenberg_mod(3))).group).to_string() == "C3 x C3");
  CHECK(abelian_invariants(abelianization(build_group(GroupSpec::quaternion8())).group).to_string() == "C2 x C2");
  CHECK(abelian_invariants(build_group(GroupSpec::abelian({4, 2, 3}))).to_string() == "C2 x C12");
  CHECK(reduced_abelianization(build_group(GroupSpec::cyclic(6)), 4).group.order() == 2);
}

TEST_CASE("invalid Cayley tables are rejected with the failing axiom") {
  // not a Latin square
  CHECK_THROWS_WITH_AS(build_group(GroupSpec::cayley({{0, 1}, {1, 1}})), doctest::Contains("cancellation"), InputError);
  // Latin square without identity
  CHECK_THROWS_WITH_AS(build_group(GroupSpec::cayley({{1, 0, 2}, {0, 2, 1}, {2, 1, 0}})), doctest::Contains("identity"), InputError);
  // out-of-range entry
  CHECK_THROWS_WITH_AS(build_group(GroupSpec::cayley({{0, 2}, {1, 0}})), doctest::Contains("closure"), InputError);
  // loop of order 5 that is not associative
  const std::vector<std::vector<ElementId>> loop = {
      {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  CHECK_THROWS_WITH_AS(build_group(GroupSpec::cayley(loop)), doctest::Contains("associativity"), InputError);
  // generators that do not generate
  CHECK_THROWS_AS(build_group(GroupSpec::cayley({{0, 1}, {1, 0}}, {0})), InputError);
}

TEST_CASE("order limits") {
  CHECK_THROWS_AS(build_group(GroupSpec::cyclic(20000)), LimitExceeded);
  CHECK_THROWS_AS(build_group(GroupSpec::symmetric(5)), InputError);
  CHECK_NOTHROW(build_group(GroupSpec::cyclic(20000), 20000));
}

TEST_CASE("group spec parsing") {
  CHECK(parse_group_args({"cyclic", "6"}).label() == "cyclic(6)");
  CHECK(parse_group_args({"s3"}).label() == "symmetric(3)");
  CHECK(parse_group_args({"c2xc4"}).label() == "abelian(2,4)");
  CHECK(parse_group_args({"q8"}).label() == "quaternion8");
  CHECK(parse_group_args({"heisenberg", "3"}).label() == "heisenberg_mod(3)");
  CHECK(parse_group_args({"trivial"}).label() == "trivial");
  CHECK(parse_group_args({R"({"kind": "dihedral", "order": 8})"}).label() == "dihedral(8)");
  CHECK_THROWS_AS(parse_group_args({"cyclic"}), InputError);
  CHECK_THROWS_AS(parse_group_args({"nonsense"}), InputError);
  const auto spec = GroupSpec::product(GroupSpec::cyclic(2), GroupSpec::abelian({2, 2}));
  CHECK(group_spec_from_json(group_spec_to_json(spec)).label() == spec.label());
  CHECK_THROWS_AS(group_spec_from_json(nlohmann::json::parse(R"({"kind": "cyclic"})")), InputError);
}
