#include "qtensor/tensor_analyzer.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <random>

#include "qtensor/arith.hpp"
#include "qtensor/closed_forms.hpp"
#include "qtensor/error.hpp"

namespace qtensor {

std::string check_status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass:
      return "pass";
    case CheckStatus::fail:
      return "fail";
    case CheckStatus::skipped:
      return "skipped";
  }
  return "unknown";
}

bool TensorReport::all_passed() const {
  return std::none_of(properties.begin(), properties.end(),
                      [](const PropertyResult& p) { return p.status == CheckStatus::fail; });
}

const PropertyResult* TensorReport::property(const std::string& id) const {
  for (const auto& p : properties)
    if (p.id == id) return &p;
  return nullptr;
}

namespace {

SubgroupReport capped_report(const RegularGroup& u, const PointSubgroup& h, std::size_t cap) {
  if (h.order() <= cap) return subgroup_report(u, h);
  SubgroupReport r;
  r.order = h.order();
  r.is_abelian = is_abelian(u, h);
  r.capped = true;
  return r;
}

}  // namespace

TensorAnalysis::TensorAnalysis(FiniteGroup g, std::int64_t q, AnalysisOptions options)
    : nu_(realize_nu(g, q, options.realization)), options_(options) {
  const FiniteGroup& G = nu_.base();
  const RegularGroup& u = nu_.upsilon();
  const std::size_t m = G.order();
  const std::size_t n = u.order();

  std::vector<Point> all(n);
  for (Point x = 0; x < n; ++x) all[x] = x;
  upsilon_ = PointSubgroup(n, std::move(all));

  std::vector<Point> diag;
  for (ElementId x = 0; x < m; ++x) diag.push_back(nu_.tensor(x, x));
  delta_ = subgroup_closure(u, diag);

  std::vector<Point> kernel;
  for (Point x = 0; x < n; ++x)
    if (nu_.rho(x) == G.identity()) kernel.push_back(x);
  mu_ = PointSubgroup(n, std::move(kernel));

  std::vector<Point> tensors, derived_tensors;
  const SubgroupElements derived = derived_subgroup(G);
  for (ElementId x = 0; x < m; ++x)
    for (ElementId y = 0; y < m; ++y) {
      tensors.push_back(nu_.tensor(x, y));
      if (derived.contains(x)) derived_tensors.push_back(nu_.tensor(x, y));
    }
  commutator_part_ = subgroup_closure(u, tensors);
  derived_part_ = subgroup_closure(u, derived_tensors);

  conj_g_.assign(m, {});
  conj_phi_.assign(m, {});
  for (ElementId e = 0; e < m; ++e) {
    conj_g_[e].resize(n);
    conj_phi_[e].resize(n);
    const Word gw = nu_.g_word(e);
    const Word pw = nu_.phi_word(e);
    for (Point x = 0; x < n; ++x) {
      conj_g_[e][x] = nu_.conjugate(x, gw);
      conj_phi_[e][x] = nu_.conjugate(x, pw);
    }
  }

  // The enumerated generators generate nu^q(G).
  central_.assign(n, 1);
  for (std::size_t j = 0; j < nu_.generator_count(); ++j)
    for (Point x = 0; x < n; ++x)
      if (nu_.conjugate(x, j) != x) central_[x] = 0;
}

TensorReport TensorAnalysis::report() const {
  const FiniteGroup& G = group();
  const RegularGroup& u = nu_.upsilon();
  TensorReport r;
  r.group = G.name();
  r.q = q();
  r.group_order = G.order();
  r.nu_order = nu_.order();
  r.upsilon = capped_report(u, upsilon_, options_.report_cap);
  r.delta = capped_report(u, delta_, options_.report_cap);
  r.mu = capped_report(u, mu_, options_.report_cap);
  r.exterior_order = upsilon_.order() / delta_.order();
  r.h2_invariants = quotient_invariants(u, mu_, delta_);
  r.theta_order = static_cast<std::uint64_t>(G.order()) * upsilon_.order();
  r.power_commutator_order = power_commutator_subgroup(G, q()).order();
  r.check_mode = G.order() <= options_.exhaustive_limit ? "exhaustive" : "sampled";
  r.seed = options_.seed;
  return r;
}

namespace {

using Tuple = std::array<ElementId, 4>;

// Evaluates a predicate over all tuples of a given arity, or over a seeded
// sample of them when the group is too large.
class TupleRunner {
 public:
  explicit TupleRunner(const TensorAnalysis& a)
      : order_(a.group().order()),
        exhaustive_(a.group().order() <= a.options().exhaustive_limit),
        samples_(a.options().samples),
        seed_(a.options().seed) {}

  PropertyResult run(const std::string& id, std::size_t arity, const std::function<bool(const Tuple&)>& ok) const {
    PropertyResult r;
    r.id = id;
    const auto fail = [&](const Tuple& t) {
      r.status = CheckStatus::fail;
      r.counterexample.assign(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(arity));
    };
    Tuple t{};
    if (exhaustive_) {
      std::uint64_t total = 1;
      for (std::size_t i = 0; i < arity; ++i) total *= order_;
      for (std::uint64_t c = 0; c < total; ++c) {
        std::uint64_t rest = c;
        for (std::size_t i = arity; i-- > 0;) {
          t[i] = static_cast<ElementId>(rest % order_);
          rest /= order_;
        }
        ++r.cases;
        if (!ok(t)) {
          fail(t);
          break;
        }
      }
    } else {
      std::uint64_t h = seed_;
      for (char ch : id) h = (h ^ static_cast<unsigned char>(ch)) * 1099511628211ULL;
      std::mt19937_64 rng(h);
      for (std::size_t c = 0; c < samples_; ++c) {
        for (std::size_t i = 0; i < arity; ++i) t[i] = static_cast<ElementId>(rng() % order_);
        ++r.cases;
        if (!ok(t)) {
          fail(t);
          break;
        }
      }
    }
    return r;
  }

 private:
  std::size_t order_;
  bool exhaustive_;
  std::size_t samples_;
  std::uint64_t seed_;
};

PropertyResult verdict(const std::string& id, bool ok, std::string detail = {}) {
  PropertyResult r;
  r.id = id;
  r.status = ok ? CheckStatus::pass : CheckStatus::fail;
  r.cases = 1;
  r.detail = std::move(detail);
  return r;
}

PropertyResult skipped(const std::string& id, std::string why) {
  PropertyResult r;
  r.id = id;
  r.status = CheckStatus::skipped;
  r.detail = std::move(why);
  return r;
}

std::int64_t point_order(const RegularGroup& u, Point x) { return u.element_order(x); }

}  // namespace

std::vector<PropertyResult> check_properties(const TensorAnalysis& a) {
  const FiniteGroup& G = a.group();
  const NuGroup& nu = a.nu();
  const RegularGroup& u = nu.upsilon();
  const std::int64_t q = a.q();
  const ElementId e = G.identity();
  const SubgroupElements derived = derived_subgroup(G);
  const SubgroupElements centre = center(G);
  std::vector<std::int64_t> prime_order(G.order());
  for (ElementId x = 0; x < G.order(); ++x) prime_order[x] = coset_order(G, x);

  const TupleRunner runner(a);
  std::vector<PropertyResult> out;
  const auto T = [&](ElementId x, ElementId y) { return nu.tensor(x, y); };
  // [v, x] and [v, x^phi] for v in Upsilon, x in G.
  const auto comm_g = [&](Point v, ElementId x) { return u.mul(u.inv(v), a.conjugate_by_g(v, x)); };
  const auto comm_phi = [&](Point v, ElementId x) { return u.mul(u.inv(v), a.conjugate_by_phi(v, x)); };

  out.push_back(runner.run("basic-i", 4, [&](const Tuple& t) {
    const Point v = T(t[0], t[1]);
    return u.conj(v, T(t[2], t[3])) == a.conjugate_by_g(v, G.comm(t[2], t[3]));
  }));

  out.push_back(runner.run("basic-ii", 3, [&](const Tuple& t) {
    const ElementId g = t[0], h = t[1], x = t[2];
    const Point v = T(g, h);
    const Point w = u.inv(T(h, g));  // [g^phi, h]
    const Point first = comm_phi(v, x);
    return first == T(G.comm(g, h), x) && first == comm_g(v, x) && first == comm_phi(w, x) &&
           first == u.inv(T(x, G.comm(g, h))) && first == comm_g(w, x);
  }));

  out.push_back(runner.run("basic-iii", 2, [&](const Tuple& t) {
    if (!derived.contains(t[0]) && !derived.contains(t[1])) return true;
    return u.mul(T(t[0], t[1]), T(t[1], t[0])) == 0;
  }));

  if (q >= 1) {
    out.push_back(runner.run("basic-iv", 3, [&](const Tuple& t) {
      const Point k = nu.hat(t[0]);
      return u.comm(k, T(t[1], t[2])) == comm_g(k, G.comm(t[1], t[2]));
    }));
    out.push_back(runner.run("basic-v", 2, [&](const Tuple& t) {
      const Point k = nu.hat(t[0]);
      return a.conjugate_by_g(k, t[1]) == u.mul(k, T(G.pow(t[0], q), t[1]));
    }));
  } else {
    out.push_back(skipped("basic-iv", "no hat elements when q = 0"));
    out.push_back(skipped("basic-v", "no hat elements when q = 0"));
  }

  out.push_back(runner.run("basic-vi", 2, [&](const Tuple& t) {
    const ElementId g = t[0], h = t[1];
    if (G.comm(g, h) != e) return true;
    const Point x = T(g, h), y = T(h, g);
    const std::int64_t o = point_order(u, x);
    return a.central(x) && a.central(y) && o == point_order(u, y) &&
           divides(o, gcd0({q, G.element_order(g), G.element_order(h)}));
  }));

  out.push_back(runner.run("basic-vii", 1, [&](const Tuple& t) { return a.central(T(t[0], t[0])); }));

  out.push_back(
      runner.run("basic-viii", 2, [&](const Tuple& t) { return a.central(u.mul(T(t[0], t[1]), T(t[1], t[0]))); }));

  out.push_back(runner.run("basic-ix", 1, [&](const Tuple& t) {
    return !derived.contains(t[0]) || T(t[0], t[0]) == 0;
  }));

  out.push_back(runner.run("basic-x", 3, [&](const Tuple& t) {
    const ElementId x = t[0], g = t[1], h = t[2];
    if (G.comm(x, g) != e || G.comm(x, h) != e) return true;
    return T(G.comm(g, h), x) == 0 && T(x, G.comm(g, h)) == 0;
  }));

  {
    std::vector<Point> left, right;
    for (ElementId c : derived.members())
      for (ElementId g = 0; g < G.order(); ++g) {
        left.push_back(T(c, g));
        right.push_back(T(g, c));
      }
    out.push_back(verdict("derived-sides", subgroup_closure(u, left) == subgroup_closure(u, right)));
  }

  out.push_back(runner.run("derived-center", 2, [&](const Tuple& t) {
    return !derived.contains(t[0]) || !centre.contains(t[1]) || T(t[0], t[1]) == 0;
  }));

  out.push_back(runner.run("diagonal-coset", 2, [&](const Tuple& t) {
    if (!derived.contains(G.mul(G.inv(t[0]), t[1]))) return true;
    return T(t[0], t[0]) == T(t[1], t[1]);
  }));

  out.push_back(runner.run("symmetric-order", 2, [&](const Tuple& t) {
    const std::int64_t o = point_order(u, u.mul(T(t[0], t[1]), T(t[1], t[0])));
    return divides(o, gcd0({q, prime_order[t[0]], prime_order[t[1]]}));
  }));

  out.push_back(runner.run("diagonal-order", 1, [&](const Tuple& t) {
    const std::int64_t p = prime_order[t[0]];
    return divides(point_order(u, T(t[0], t[0])), gcd0({q, p * p, 2 * p}));
  }));

  if (q == 2) {
    out.push_back(runner.run("q2-symmetry", 2, [&](const Tuple& t) {
      return G.comm(t[0], t[1]) != e || T(t[0], t[1]) == T(t[1], t[0]);
    }));
  } else {
    out.push_back(skipped("q2-symmetry", "only for q = 2"));
  }

  if (q >= 1) {
    const std::int64_t cq = binomial(q, 2).get_si();
    out.push_back(runner.run("hat-commuting-product", 2, [&](const Tuple& t) {
      const ElementId x = t[0], y = t[1];
      if (G.comm(x, y) != e) return true;
      const Point rhs = u.mul(u.mul(nu.hat(x), nu.hat(y)), u.pow(T(x, y), -cq));
      return nu.hat(G.mul(x, y)) == rhs;
    }));
    out.push_back(runner.run("hat-power", 1, [&](const Tuple& t) {
      const ElementId x = t[0];
      for (std::int64_t n : {2, 3}) {
        const Point rhs = u.mul(u.pow(nu.hat(x), n), u.pow(T(x, x), -binomial(n, 2).get_si() * cq));
        if (nu.hat(G.pow(x, n)) != rhs) return false;
      }
      return true;
    }));
  } else {
    out.push_back(skipped("hat-commuting-product", "no hat elements when q = 0"));
    out.push_back(skipped("hat-power", "no hat elements when q = 0"));
  }

  // Ker(pi_0) for the projection onto the abelianization.
  const QuotientGroup ab = abelianization(G);
  AnalysisOptions sub = a.options();
  const TensorAnalysis abelian(ab.group, q, sub);
  {
    const auto image = nu.induced_map(abelian.nu(), ab.projection);
    std::vector<Point> kernel;
    for (Point x = 0; x < u.order(); ++x)
      if (image[x] == 0) kernel.push_back(x);
    const PointSubgroup k(u.order(), std::move(kernel));
    out.push_back(verdict("projection-kernel", k == a.derived_part(),
                          "|Ker| = " + std::to_string(k.order()) +
                              ", |[G',G^phi]| = " + std::to_string(a.derived_part().order())));
    // Before dropping [G, G'^phi] and the hats of G'.
    std::vector<Point> gens = subgroup_generators(u, a.derived_part());
    for (ElementId c : derived.members()) {
      gens.push_back(nu.hat(c));
      for (ElementId g = 0; g < G.order(); ++g) gens.push_back(T(g, c));
    }
    const PointSubgroup full = subgroup_closure(u, gens);
    out.push_back(verdict("projection-kernel-hats", k == full,
                          "|Ker| = " + std::to_string(k.order()) + ", |[G',G^phi][G,G'^phi]<hat(G')>| = " +
                              std::to_string(full.order())));
  }

  if (q % 2 == 1) {
    const std::size_t here = a.delta().order(), there = abelian.delta().order();
    out.push_back(verdict("odd-q-delta", here == there,
                          "|Delta(G)| = " + std::to_string(here) + ", |Delta(G^ab)| = " + std::to_string(there)));
  } else {
    out.push_back(skipped("odd-q-delta", "only for odd q"));
  }

  {
    bool ok = true;
    for (Point x : a.delta().members()) ok = ok && a.central(x) && a.mu().contains(x);
    out.push_back(verdict("delta-central", ok && a.mu().order() % a.delta().order() == 0));
  }

  {
    const std::uint64_t gq = power_commutator_subgroup(G, q).order();
    out.push_back(verdict("quotient-order", a.upsilon().order() == a.mu().order() * gq,
                          "|Upsilon| = " + std::to_string(a.upsilon().order()) + ", |mu| = " +
                              std::to_string(a.mu().order()) + ", |G'G^q| = " + std::to_string(gq)));
  }

  out.push_back(verdict("order-law",
                        nu.order() == static_cast<std::uint64_t>(G.order()) * G.order() * a.upsilon().order(),
                        "|nu| = " + std::to_string(nu.order()) + ", |Upsilon| = " + std::to_string(a.upsilon().order())));

  {
    const auto basis = abelianization_generators(G, q);
    const auto lift = [&](std::size_t i) { return basis.basis.at(i - 1); };
    const auto point = [&](const GeneratorDescriptor& d) -> Point {
      using K = GeneratorDescriptor::Kind;
      switch (d.kind) {
        case K::tensor:
          return T(lift(d.indices[0]), lift(d.indices[1]));
        case K::symmetric_product:
          return u.mul(T(lift(d.indices[0]), lift(d.indices[1])), T(lift(d.indices[1]), lift(d.indices[0])));
        case K::hat:
          return nu.hat(lift(d.indices[0]));
        case K::tensor_of_commutator:
          break;
      }
      throw InternalError("unexpected descriptor");
    };
    std::vector<Point> dgens, all;
    for (const auto& d : basis.delta) dgens.push_back(point(d));
    all = dgens;
    for (const auto& d : basis.extension) all.push_back(point(d));
    for (Point x : subgroup_generators(u, a.derived_part())) all.push_back(x);
    out.push_back(verdict("basis-delta", subgroup_closure(u, dgens) == a.delta()));
    out.push_back(verdict("basis-upsilon", subgroup_closure(u, all) == a.upsilon()));
  }

  const auto series = lower_central_series(G);
  if (series.nilpotency_class && *series.nilpotency_class == 2) {
    const auto tgens = subgroup_generators(u, a.commutator_part());
    bool ok = true;
    for (ElementId k = 0; k < G.order() && ok; ++k)
      for (Point t : tgens)
        if (u.mul(nu.hat(k), t) != u.mul(t, nu.hat(k))) {
          ok = false;
          break;
        }
    out.push_back(verdict("class2-hat-centralizes", ok));
    bool central = true;
    for (Point x : a.derived_part().members()) central = central && a.central(x);
    out.push_back(verdict("class2-derived-central", central));
    const auto cls = lower_central_series(u, a.upsilon()).nilpotency_class;
    out.push_back(verdict("class2-upsilon-class", cls && *cls <= 2,
                          cls ? "class " + std::to_string(*cls) : std::string("not nilpotent")));

    const auto dg = abelian_invariants(ab.group).rank();
    const bool coprime = q >= 1 && gcd0(q, G.exponent()) == 1;
    const SubgroupReport ur = subgroup_report(u, a.upsilon());
    const mpz_class bound = bacon_bound(std::max<std::int64_t>(dg, 1), q, coprime);
    const auto d = ur.min_generators;
    out.push_back(verdict("generator-bound", d && mpz_class(static_cast<unsigned long>(*d)) <= bound,
                          "d(Upsilon) = " + (d ? std::to_string(*d) : std::string("?")) + ", bound " +
                              bound.get_str()));
  } else {
    for (const char* id : {"class2-hat-centralizes", "class2-derived-central", "class2-upsilon-class",
                           "generator-bound"})
      out.push_back(skipped(id, "group is not of class 2"));
  }
  return out;
}

TensorReport analyze(const FiniteGroup& g, std::int64_t q, const AnalysisOptions& options) {
  const TensorAnalysis a(g, q, options);
  TensorReport r = a.report();
  r.properties = check_properties(a);
  return r;
}

DirectProductVerdict verify_direct_product(const FiniteGroup& n, const FiniteGroup& h, std::int64_t q,
                                           const AnalysisOptions& options) {
  const FiniteGroup g = direct_product(n, h);
  const TensorAnalysis whole(g, q, options);
  const TensorAnalysis first(n, q, options);
  const TensorAnalysis second(h, q, options);
  const NuGroup& nu = whole.nu();
  const RegularGroup& u = nu.upsilon();
  const std::size_t nb = h.order();

  std::vector<Point> ab, ba;
  for (ElementId x = 0; x < n.order(); ++x)
    for (ElementId y = 0; y < h.order(); ++y) {
      const auto xn = static_cast<ElementId>(x * nb + h.identity());
      const auto yh = static_cast<ElementId>(n.identity() * nb + y);
      ab.push_back(nu.tensor(xn, yh));
      ba.push_back(nu.tensor(yh, xn));
    }
  std::vector<Point> both = ab;
  both.insert(both.end(), ba.begin(), ba.end());
  const PointSubgroup mid = subgroup_closure(u, both);

  DirectProductVerdict v;
  v.first = n.name();
  v.second = h.name();
  v.q = q;
  v.upsilon_product = whole.upsilon().order();
  v.upsilon_first = first.upsilon().order();
  v.upsilon_second = second.upsilon().order();
  v.mid_order = mid.order();
  const SubgroupReport mr = subgroup_report(u, mid);
  v.mid_invariants = mr.invariants;
  v.first_second_order = subgroup_closure(u, ab).order();
  v.second_first_order = subgroup_closure(u, ba).order();
  v.predicted_first_second = abelian_tensor(abelian_invariants(reduced_abelianization(n, q).group),
                                            abelian_invariants(reduced_abelianization(h, q).group), q);
  v.order_law = v.upsilon_product == v.upsilon_first * v.mid_order * v.upsilon_second;
  const auto predicted = v.predicted_first_second.order();
  v.tensor_law = predicted && *predicted == static_cast<unsigned long>(v.first_second_order);
  return v;
}

nlohmann::ordered_json to_json(const AbelianGroupStructure& s) {
  nlohmann::ordered_json j;
  j["text"] = s.to_string();
  j["torsion"] = s.torsion();
  j["free_rank"] = s.free_rank();
  return j;
}

nlohmann::ordered_json to_json(const SubgroupReport& r) {
  nlohmann::ordered_json j;
  j["order"] = r.order;
  j["abelian"] = r.is_abelian;
  j["invariants"] = r.invariants ? to_json(*r.invariants) : nlohmann::ordered_json();
  j["derived_order"] = r.derived_order ? nlohmann::ordered_json(*r.derived_order) : nlohmann::ordered_json();
  j["nilpotency_class"] = r.nilpotency_class ? nlohmann::ordered_json(*r.nilpotency_class) : nlohmann::ordered_json();
  j["min_generators"] = r.min_generators ? nlohmann::ordered_json(*r.min_generators) : nlohmann::ordered_json();
  j["abelianization"] = r.abelianization ? to_json(*r.abelianization) : nlohmann::ordered_json();
  j["capped"] = r.capped;
  return j;
}

nlohmann::ordered_json to_json(const PropertyResult& r) {
  nlohmann::ordered_json j;
  j["id"] = r.id;
  j["status"] = check_status_name(r.status);
  j["cases"] = r.cases;
  j["counterexample"] = r.counterexample.empty() ? nlohmann::ordered_json() : nlohmann::ordered_json(r.counterexample);
  if (!r.detail.empty()) j["detail"] = r.detail;
  return j;
}

nlohmann::ordered_json to_json(const TensorReport& r) {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["group"] = r.group;
  j["q"] = r.q;
  j["group_order"] = r.group_order;
  j["nu_order"] = r.nu_order;
  j["upsilon"] = to_json(r.upsilon);
  j["delta"] = to_json(r.delta);
  j["mu"] = to_json(r.mu);
  j["exterior_order"] = r.exterior_order;
  j["h2_invariants"] = to_json(r.h2_invariants);
  j["theta_order"] = r.theta_order;
  j["power_commutator_order"] = r.power_commutator_order;
  j["check_mode"] = r.check_mode;
  j["seed"] = r.seed;
  nlohmann::ordered_json props = nlohmann::ordered_json::array();
  for (const auto& p : r.properties) props.push_back(to_json(p));
  j["properties"] = props;
  j["all_passed"] = r.all_passed();
  return j;
}

nlohmann::ordered_json to_json(const DirectProductVerdict& v) {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["first"] = v.first;
  j["second"] = v.second;
  j["q"] = v.q;
  j["upsilon_product"] = v.upsilon_product;
  j["upsilon_first"] = v.upsilon_first;
  j["upsilon_second"] = v.upsilon_second;
  j["mid_order"] = v.mid_order;
  j["mid_invariants"] = v.mid_invariants ? to_json(*v.mid_invariants) : nlohmann::ordered_json();
  j["first_second_order"] = v.first_second_order;
  j["second_first_order"] = v.second_first_order;
  j["predicted_first_second"] = to_json(v.predicted_first_second);
  j["order_law"] = v.order_law;
  j["tensor_law"] = v.tensor_law;
  return j;
}

}  // namespace qtensor
