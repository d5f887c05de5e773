#include <charconv>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qtensor/arith.hpp"
#include "qtensor/catalog.hpp"
#include "qtensor/closed_forms.hpp"
#include "qtensor/error.hpp"
#include "qtensor/group_spec.hpp"
#include "qtensor/presentation.hpp"
#include "qtensor/tensor_analyzer.hpp"

using namespace qtensor;
using ojson = nlohmann::ordered_json;

namespace {

constexpr int exit_input = 4;
constexpr int exit_limit = 3;
constexpr int exit_internal = 1;

std::int64_t parse_int(const std::string& s, const char* what) {
  std::int64_t v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) throw InputError(std::string(what) + ": not an integer: " + s);
  return v;
}

std::pair<std::int64_t, std::int64_t> parse_range(const std::string& s) {
  const auto dots = s.find("..");
  if (dots == std::string::npos) throw InputError("--q-range expects A..B, got " + s);
  return {parse_int(s.substr(0, dots), "--q-range"), parse_int(s.substr(dots + 2), "--q-range")};
}

void print(const ojson& j) { std::cout << j.dump(2) << "\n"; }

struct Common {
  std::int64_t q = 0;
  std::string q_range;
  std::size_t max_cosets = RunConfig{}.max_cosets;
  std::string format = "json";
  std::uint64_t seed = 1;
  std::vector<std::string> group;

  RunConfig config() const {
    RunConfig c;
    c.max_cosets = max_cosets;
    c.seed = seed;
    c.format = output_format_from_name(format);
    c.validate();
    return c;
  }
};

int cmd_tensor(const Common& o) {
  const RunConfig config = o.config();
  const GroupSpec spec = parse_group_args(o.group);
  const FiniteGroup g = build_group(spec);
  std::vector<std::int64_t> qs{o.q};
  if (!o.q_range.empty()) {
    const auto [a, b] = parse_range(o.q_range);
    if (a < 0 || b < a) throw InputError("q range must satisfy 0 <= A <= B");
    qs.clear();
    for (std::int64_t q = a; q <= b; ++q) qs.push_back(q);
  }
  std::vector<TensorReport> reports;
  for (std::int64_t q : qs) {
    TensorReport r = analyze(g, q, config.analysis_options());
    r.group = spec.label();
    reports.push_back(std::move(r));
  }
  if (config.format == OutputFormat::text) {
    for (const auto& r : reports) std::cout << to_text(r);
  } else if (reports.size() == 1) {
    print(to_json(reports.front()));
  } else {
    ojson arr = ojson::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    print({{"schema", 1}, {"reports", arr}});
  }
  return 0;
}

// closed <family> <args...>
int cmd_closed(const Common& o, const std::vector<std::string>& args, bool coprime) {
  if (args.empty()) throw InputError("closed: missing family");
  const std::string& family = args[0];
  const auto arg = [&](std::size_t i, const char* name) {
    if (args.size() <= i) throw InputError("closed " + family + ": missing argument " + name);
    return parse_int(args[i], name);
  };
  const auto arity = [&](std::size_t n) {
    if (args.size() != n + 1) throw InputError("closed " + family + ": expected " + std::to_string(n) + " arguments");
  };
  const bool text = output_format_from_name(o.format) == OutputFormat::text;
  ojson j;
  j["schema"] = 1;
  j["family"] = family;
  j["args"] = std::vector<std::string>(args.begin() + 1, args.end());
  std::string line;

  if (family == "cyclic") {
    arity(2);
    const std::int64_t n = args[1] == "inf" ? 0 : arg(1, "n");
    if (args[1] != "inf" && n < 1) throw InputError("closed cyclic: n must be positive or inf");
    const auto s = cyclic_tensor(n, arg(2, "q"));
    j["structure"] = to_json(s);
    line = s.to_string();
  } else if (family == "free" || family == "freenil2") {
    arity(2);
    const auto s = family == "free" ? free_tensor(arg(1, "n"), arg(2, "q")) : freenil2_structure(arg(1, "n"), arg(2, "q"));
    j["structure"] = to_json(s);
    line = s.to_string();
    if (const auto* r = s.rank("total_rank")) line += "\nrank " + r->get_str();
    if (const auto* r = s.rank("generator_count")) line += "\ngenerators " + r->get_str();
  } else if (family == "freenil") {
    arity(3);
    const auto s = freenil_tensor(arg(1, "n"), arg(2, "c"), arg(3, "q"));
    j["structure"] = to_json(s);
    line = s.to_string();
  } else if (family == "bound") {
    arity(2);
    const auto v = bacon_bound(arg(1, "n"), arg(2, "q"), coprime);
    j["coprime"] = coprime;
    j["value"] = v.get_str();
    line = v.get_str();
  } else if (family == "witt") {
    arity(2);
    const std::int64_t n = arg(1, "n"), r = arg(2, "r");
    if (n < 1 || r < 1) throw InputError("closed witt: need n >= 1 and r >= 1");
    const auto v = witt_rank(n, r);
    j["value"] = v.get_str();
    line = v.get_str();
  } else if (family == "delta") {
    arity(2);
    const auto s = delta_free_abelian(arg(1, "t"), arg(2, "q"));
    j["structure"] = to_json(s);
    line = s.to_string();
  } else if (family == "class2") {
    arity(2);
    ojson list = ojson::array();
    for (const auto& d : class2_generators(arg(1, "n"), arg(2, "q"))) {
      list.push_back(d.to_string());
      line += (line.empty() ? "" : "\n") + d.to_string();
    }
    j["count"] = list.size();
    j["generators"] = list;
  } else if (family == "basis") {
    // closed basis <group tokens...> --q N
    const GroupSpec spec = parse_group_args({args.begin() + 1, args.end()});
    const auto b = abelianization_generators(build_group(spec), o.q);
    j["group"] = spec.label();
    j["q"] = o.q;
    j["basis"] = b.basis;
    j["orders"] = b.orders;
    ojson delta = ojson::array(), ext = ojson::array();
    for (const auto& d : b.delta) delta.push_back(d.to_string("x"));
    for (const auto& d : b.extension) ext.push_back(d.to_string("x"));
    j["delta"] = delta;
    j["extension"] = ext;
    line = "delta: " + delta.dump() + "\nextension: " + ext.dump();
  } else {
    throw InputError("closed: unknown family " + family +
                     " (cyclic, free, freenil, freenil2, bound, witt, delta, class2, basis)");
  }
  if (text)
    std::cout << line << "\n";
  else
    print(j);
  return 0;
}

int cmd_verify(const Common& o, const std::string& catalog_path, std::size_t threads) {
  RunConfig config = o.config();
  config.threads = threads;
  std::vector<CatalogEntry> catalog;
  if (!o.group.empty()) {
    if (!catalog_path.empty()) throw InputError("verify: give either a group or --catalog, not both");
    catalog.push_back({parse_group_args(o.group), {}});
  } else {
    catalog = catalog_path.empty() ? default_catalog() : load_catalog(catalog_path);
  }
  std::int64_t a = o.q, b = o.q;
  if (!o.q_range.empty()) std::tie(a, b) = parse_range(o.q_range);
  const VerifySummary s = run_verify(catalog, a, b, config);
  if (config.format == OutputFormat::text)
    std::cout << to_text(s);
  else
    print(to_json(s));
  return s.exit_code();
}

int cmd_export(const Common& o, const std::string& format) {
  const GroupSpec spec = parse_group_args(o.group);
  const FpPresentation p = build_nu_q(build_group(spec), o.q);
  std::cout << export_presentation(p, export_format_from_name(format));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"q-tensor squares of finite groups"};
  app.require_subcommand(1);
  Common o;
  bool coprime = false;
  std::string catalog_path, export_format = "gap";
  std::size_t threads = 0;
  std::vector<std::string> closed_args;

  const auto group_help = "group: trivial, cyclic N, abelian A,B, dihedral ORDER, q8, heisenberg P, symmetric N, @file.json";
  const auto add_common = [&](CLI::App* c, bool range) {
    c->add_option("--q", o.q, "parameter q >= 0")->check(CLI::NonNegativeNumber);
    if (range) c->add_option("--q-range", o.q_range, "inclusive range A..B");
    c->add_option("--max-cosets", o.max_cosets, "coset table cap")->check(CLI::PositiveNumber);
    c->add_option("--seed", o.seed, "seed for sampled checks");
  };

  auto* tensor = app.add_subcommand("tensor", "analyze nu^q(G) by enumeration");
  tensor->add_option("group", o.group, group_help)->required();
  add_common(tensor, true);
  tensor->add_option("--format", o.format, "json or text");

  auto* closed = app.add_subcommand("closed", "evaluate a closed form");
  closed->add_option("args", closed_args, "family and arguments")->required();
  closed->add_flag("--coprime", coprime, "bound: gcd(q, exp G) = 1");
  closed->add_option("--q", o.q, "q for the basis family")->check(CLI::NonNegativeNumber);
  closed->add_option("--format", o.format, "json or text");

  auto* verify = app.add_subcommand("verify", "cross-check a catalog");
  verify->add_option("group", o.group, "single group instead of a catalog");
  add_common(verify, true);
  verify->add_option("--catalog", catalog_path, "catalog JSON file");
  verify->add_option("--threads", threads, "worker threads, 0 for all cores");
  verify->add_option("--format", o.format, "json or text");

  auto* exp = app.add_subcommand("export", "print the presentation of nu^q(G)");
  exp->add_option("group", o.group, group_help)->required();
  exp->add_option("--q", o.q, "parameter q >= 0")->check(CLI::NonNegativeNumber);
  exp->add_option("--format", export_format, "gap, json or text");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_input;
  }

  try {
    if (*tensor) return cmd_tensor(o);
    if (*closed) return cmd_closed(o, closed_args, coprime);
    if (*verify) return cmd_verify(o, catalog_path, threads);
    if (*exp) return cmd_export(o, export_format);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return exit_input;
  } catch (const LimitExceeded& e) {
    std::cerr << "limit exceeded: " << e.what() << "\n";
    return exit_limit;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return exit_internal;
  }
  return exit_internal;
}
