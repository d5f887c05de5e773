#include "qtensor/catalog.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include "qtensor/closed_forms.hpp"
#include "qtensor/error.hpp"

namespace qtensor {

std::vector<CatalogEntry> default_catalog() {
  std::vector<CatalogEntry> c;
  c.push_back({GroupSpec::trivial(), {}});
  for (std::int64_t n = 2; n <= 8; ++n) c.push_back({GroupSpec::cyclic(n), {}});
  c.push_back({GroupSpec::abelian({2, 2}), {}});
  c.push_back({GroupSpec::abelian({2, 4}), {}});
  c.push_back({GroupSpec::abelian({3, 3}), {}});
  c.push_back({GroupSpec::dihedral(8), {}});
  c.push_back({GroupSpec::quaternion8(), {}});
  c.push_back({GroupSpec::heisenberg_mod(3), {}});
  c.push_back({GroupSpec::symmetric(3), {}});
  c.push_back({GroupSpec::symmetric(4), 2});
  return c;
}

std::vector<CatalogEntry> catalog_from_json(const nlohmann::json& j) {
  const nlohmann::json* list = &j;
  if (j.is_object()) {
    if (!j.contains("groups")) throw InputError("catalog: missing \"groups\"");
    list = &j.at("groups");
  }
  if (!list->is_array()) throw InputError("catalog: expected an array of groups");
  std::vector<CatalogEntry> out;
  for (const auto& e : *list) {
    CatalogEntry entry;
    if (e.is_object() && e.contains("group")) {
      entry.spec = group_spec_from_json(e.at("group"));
      if (e.contains("max_q")) {
        if (!e.at("max_q").is_number_integer()) throw InputError("catalog: max_q must be an integer");
        entry.max_q = e.at("max_q").get<std::int64_t>();
      }
    } else {
      entry.spec = group_spec_from_json(e);
    }
    out.push_back(std::move(entry));
  }
  return out;
}

std::vector<CatalogEntry> load_catalog(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open catalog " + path);
  try {
    return catalog_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("catalog: invalid JSON: ") + e.what());
  }
}

nlohmann::ordered_json catalog_to_json(const std::vector<CatalogEntry>& catalog) {
  nlohmann::ordered_json groups = nlohmann::ordered_json::array();
  for (const auto& e : catalog) {
    nlohmann::ordered_json g;
    g["group"] = group_spec_to_json(e.spec);
    if (e.max_q) g["max_q"] = *e.max_q;
    groups.push_back(g);
  }
  return {{"schema", 1}, {"groups", groups}};
}

OutputFormat output_format_from_name(const std::string& name) {
  if (name == "json") return OutputFormat::json;
  if (name == "text") return OutputFormat::text;
  throw InputError("unknown output format \"" + name + "\" (expected json or text)");
}

void RunConfig::validate() const {
  if (max_cosets == 0 || report_cap == 0 || exhaustive_limit == 0 || samples == 0)
    throw InputError("run configuration caps must be positive");
}

AnalysisOptions RunConfig::analysis_options() const {
  AnalysisOptions o;
  o.realization.max_cosets = max_cosets;
  o.exhaustive_limit = exhaustive_limit;
  o.samples = samples;
  o.seed = seed;
  o.report_cap = report_cap;
  return o;
}

std::string outcome_name(Outcome o) {
  switch (o) {
    case Outcome::pass:
      return "pass";
    case Outcome::fail:
      return "fail";
    case Outcome::limit:
      return "limit";
    case Outcome::input_error:
      return "input-error";
  }
  return "unknown";
}

bool VerifySummary::passed() const {
  return std::all_of(rows.begin(), rows.end(), [](const VerifyRow& r) { return r.outcome == Outcome::pass; });
}

int VerifySummary::exit_code() const {
  const auto any = [&](Outcome o) {
    return std::any_of(rows.begin(), rows.end(), [&](const VerifyRow& r) { return r.outcome == o; });
  };
  if (any(Outcome::input_error)) return 4;
  if (any(Outcome::limit)) return 3;
  if (any(Outcome::fail)) return 2;
  return 0;
}

VerifyRow verify_pair(const GroupSpec& spec, std::int64_t q, const RunConfig& config) {
  VerifyRow row;
  row.group = spec.label();
  row.q = q;
  try {
    const FiniteGroup g = build_group(spec);
    TensorReport r = analyze(g, q, config.analysis_options());
    for (const auto& p : r.properties)
      if (p.status == CheckStatus::fail) row.failed.push_back(p.id);
    if (spec.kind == GroupSpec::Kind::cyclic || spec.kind == GroupSpec::Kind::trivial) {
      row.closed_form = cyclic_tensor(spec.kind == GroupSpec::Kind::trivial ? 1 : spec.n, q);
      if (!r.upsilon.invariants || *r.upsilon.invariants != *row.closed_form) row.failed.push_back("cyclic-closed-form");
    }
    row.report = std::move(r);
    row.outcome = row.failed.empty() ? Outcome::pass : Outcome::fail;
  } catch (const LimitExceeded& e) {
    row.outcome = Outcome::limit;
    row.message = e.what();
  } catch (const InputError& e) {
    row.outcome = Outcome::input_error;
    row.message = e.what();
  }
  return row;
}

VerifySummary run_verify(const std::vector<CatalogEntry>& catalog, std::int64_t q_from, std::int64_t q_to,
                         const RunConfig& config) {
  config.validate();
  if (q_from < 0 || q_to < q_from) throw InputError("q range must satisfy 0 <= from <= to");
  VerifySummary s;
  s.q_from = q_from;
  s.q_to = q_to;
  s.seed = config.seed;
  std::vector<std::pair<const CatalogEntry*, std::int64_t>> jobs;
  for (const auto& e : catalog)
    for (std::int64_t q = q_from; q <= q_to; ++q)
      if (!e.max_q || q <= *e.max_q) jobs.emplace_back(&e, q);
  s.rows.resize(jobs.size());

  std::size_t threads = config.threads ? config.threads : std::max(1U, std::thread::hardware_concurrency());
  threads = std::min(threads, std::max<std::size_t>(jobs.size(), 1));
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < jobs.size();)
      s.rows[i] = verify_pair(jobs[i].first->spec, jobs[i].second, config);
  };
  std::vector<std::jthread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  pool.clear();
  return s;
}

nlohmann::ordered_json to_json(const VerifyRow& row) {
  nlohmann::ordered_json j;
  j["group"] = row.group;
  j["q"] = row.q;
  j["outcome"] = outcome_name(row.outcome);
  if (!row.message.empty()) j["message"] = row.message;
  if (row.report) {
    j["upsilon_order"] = row.report->upsilon.order;
    j["upsilon"] = row.report->upsilon.invariants ? nlohmann::ordered_json(row.report->upsilon.invariants->to_string())
                                                  : nlohmann::ordered_json();
    j["h2"] = row.report->h2_invariants.to_string();
  }
  if (row.closed_form) j["closed_form"] = row.closed_form->to_string();
  j["failed"] = row.failed;
  return j;
}

nlohmann::ordered_json to_json(const VerifySummary& s) {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["q_range"] = {s.q_from, s.q_to};
  j["seed"] = s.seed;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& r : s.rows) rows.push_back(to_json(r));
  j["rows"] = rows;
  j["passed"] = s.passed();
  return j;
}

std::string to_text(const VerifySummary& s) {
  std::size_t width = 5;
  for (const auto& r : s.rows) width = std::max(width, r.group.size());
  std::ostringstream out;
  out << std::left << std::setw(static_cast<int>(width)) << "group" << "  q  " << std::setw(12) << "outcome"
      << std::setw(28) << "upsilon" << "failed\n";
  for (const auto& r : s.rows) {
    std::string ups = r.report && r.report->upsilon.invariants ? r.report->upsilon.invariants->to_string()
                      : r.report ? "order " + std::to_string(r.report->upsilon.order)
                                 : r.message;
    std::string failed;
    for (const auto& f : r.failed) failed += (failed.empty() ? "" : ",") + f;
    out << std::setw(static_cast<int>(width)) << r.group << "  " << std::setw(3) << r.q << std::setw(12)
        << outcome_name(r.outcome) << std::setw(28) << ups << failed << "\n";
  }
  out << (s.passed() ? "all pairs passed" : "some pairs did not pass") << "\n";
  return out.str();
}

std::string to_text(const TensorReport& r) {
  std::ostringstream out;
  const auto sub = [&](const char* name, const SubgroupReport& s) {
    out << std::left << std::setw(10) << name << "order " << s.order;
    if (s.invariants) out << "  " << s.invariants->to_string();
    else if (s.abelianization) out << "  nonabelian, abelianization " << s.abelianization->to_string();
    if (s.nilpotency_class) out << "  class " << *s.nilpotency_class;
    out << "\n";
  };
  out << r.group << ", q = " << r.q << "\n";
  out << std::left << std::setw(10) << "nu" << "order " << r.nu_order << "\n";
  sub("Upsilon", r.upsilon);
  sub("Delta", r.delta);
  sub("mu", r.mu);
  out << std::setw(10) << "exterior" << "order " << r.exterior_order << "\n";
  out << std::setw(10) << "H2" << r.h2_invariants.to_string() << "\n";
  out << std::setw(10) << "theta" << "order " << r.theta_order << "\n";
  out << "checks (" << r.check_mode << ", seed " << r.seed << "):\n";
  for (const auto& p : r.properties) {
    out << "  " << std::setw(24) << p.id << check_status_name(p.status);
    if (!p.counterexample.empty()) {
      out << "  at (";
      for (std::size_t i = 0; i < p.counterexample.size(); ++i) out << (i ? ", " : "") << p.counterexample[i];
      out << ")";
    }
    if (!p.detail.empty()) out << "  " << p.detail;
    out << "\n";
  }
  return out.str();
}

}  // namespace qtensor
