#include <sstream>

#include "json.hpp"
#include "qtensor/error.hpp"
#include "qtensor/presentation.hpp"

namespace qtensor {

namespace {

using ojson = nlohmann::ordered_json;

std::string gap_word(const Word& w) {
  std::string s;
  for (const auto& l : w.letters()) {
    if (!s.empty()) s += '*';
    s += "F." + std::to_string(l.generator + 1);
    if (l.exponent != 1) s += '^' + std::to_string(l.exponent);
  }
  return s;
}

std::string generator_name(const FpPresentation& p, GeneratorId g) {
  if (p.roles.size() != p.generator_count) return "x" + std::to_string(g + 1);
  const auto& r = p.roles[g];
  switch (r.family) {
    case GeneratorFamily::g_copy: return "g" + std::to_string(r.element);
    case GeneratorFamily::phi_copy: return "p" + std::to_string(r.element);
    case GeneratorFamily::hat: return "h" + std::to_string(r.element);
    case GeneratorFamily::free: break;
  }
  return "x" + std::to_string(g + 1);
}

std::string export_gap(const FpPresentation& p) {
  std::ostringstream os;
  os << "F := FreeGroup(" << p.generator_count << ");;";
  if (p.relators.empty()) {
    os << " G := F / [];;\n";
    return os.str();
  }
  os << "\nG := F / [\n";
  for (std::size_t i = 0; i < p.relators.size(); ++i) {
    os << "  " << gap_word(p.relators[i]) << (i + 1 < p.relators.size() ? ",\n" : "\n");
  }
  os << "];;\n";
  return os.str();
}

std::string export_text(const FpPresentation& p) {
  std::ostringstream os;
  os << "presentation " << (p.name.empty() ? "(unnamed)" : p.name);
  if (p.q >= 0) os << " q=" << p.q;
  os << "\ngenerators " << p.generator_count << ":";
  for (GeneratorId g = 0; g < p.generator_count; ++g) os << ' ' << generator_name(p, g);
  os << "\nrelators " << p.relators.size() << ":\n";
  const auto name = [&](GeneratorId g) { return generator_name(p, g); };
  for (std::size_t i = 0; i < p.relators.size(); ++i) {
    os << "  [" << relator_family_name(p.provenance[i]) << "] " << to_string(p.relators[i], name) << '\n';
  }
  return os.str();
}

ojson dedup_json(const DedupReport& d) {
  ojson j;
  ojson emitted = ojson::object(), kept = ojson::object();
  for (std::size_t i = 0; i < relator_family_count; ++i) {
    const auto name = relator_family_name(static_cast<RelatorFamily>(i));
    emitted[name] = d.emitted[i];
    kept[name] = d.kept[i];
  }
  j["emitted"] = emitted;
  j["kept"] = kept;
  j["trivial_removed"] = d.trivial_removed;
  j["duplicates_removed"] = d.duplicates_removed;
  return j;
}

std::string export_json(const FpPresentation& p) {
  ojson j;
  j["schema"] = 1;
  j["name"] = p.name;
  j["q"] = p.q;
  j["generator_count"] = p.generator_count;
  ojson gens = ojson::array();
  for (GeneratorId g = 0; g < p.generator_count; ++g) {
    ojson r;
    if (p.roles.size() == p.generator_count) {
      r["role"] = generator_family_name(p.roles[g].family);
      r["element"] = p.roles[g].element;
    } else {
      r["role"] = "free";
      r["element"] = g;
    }
    gens.push_back(r);
  }
  j["generators"] = gens;
  ojson rels = ojson::array();
  for (const auto& w : p.relators) {
    ojson letters = ojson::array();
    for (const auto& l : w.letters()) letters.push_back(ojson::array({l.generator, l.exponent}));
    rels.push_back(letters);
  }
  j["relators"] = rels;
  ojson prov = ojson::array();
  for (auto f : p.provenance) prov.push_back(relator_family_name(f));
  j["provenance"] = prov;
  j["dedup"] = dedup_json(p.dedup);
  return j.dump(2) + "\n";
}

}  // namespace

ExportFormat export_format_from_name(const std::string& name) {
  if (name == "gap") return ExportFormat::gap;
  if (name == "json") return ExportFormat::json;
  if (name == "text") return ExportFormat::text;
  throw InputError("unknown export format \"" + name + "\"");
}

std::string export_presentation(const FpPresentation& p, ExportFormat format) {
  switch (format) {
    case ExportFormat::gap: return export_gap(p);
    case ExportFormat::json: return export_json(p);
    case ExportFormat::text: return export_text(p);
  }
  throw InputError("unknown export format");
}

FpPresentation import_presentation_json(const std::string& text) {
  try {
    const auto j = ojson::parse(text);
    FpPresentation p;
    p.name = j.at("name").get<std::string>();
    p.q = j.at("q").get<std::int64_t>();
    p.generator_count = j.at("generator_count").get<std::size_t>();
    const auto& gens = j.at("generators");
    if (gens.size() != p.generator_count) throw InputError("generator list length does not match generator_count");
    bool all_free = true;
    std::vector<GeneratorRole> roles;
    for (const auto& g : gens) {
      GeneratorRole r{generator_family_from_name(g.at("role").get<std::string>()), g.at("element").get<ElementId>()};
      all_free = all_free && r.family == GeneratorFamily::free;
      roles.push_back(r);
    }
    if (!all_free) p.roles = std::move(roles);
    for (const auto& r : j.at("relators")) {
      std::vector<Letter> letters;
      for (const auto& l : r) {
        const auto gen = l.at(0).get<GeneratorId>();
        const auto exp = l.at(1).get<std::int32_t>();
        if (gen >= p.generator_count || exp == 0) throw InputError("invalid letter in relator");
        letters.push_back({gen, exp});
      }
      p.relators.emplace_back(std::move(letters));
    }
    if (j.contains("provenance")) {
      for (const auto& f : j.at("provenance")) p.provenance.push_back(relator_family_from_name(f.get<std::string>()));
    } else {
      p.provenance.assign(p.relators.size(), RelatorFamily::other);
    }
    if (p.provenance.size() != p.relators.size()) throw InputError("provenance length does not match relators");
    if (j.contains("dedup")) {
      const auto& d = j.at("dedup");
      for (std::size_t i = 0; i < relator_family_count; ++i) {
        const auto name = relator_family_name(static_cast<RelatorFamily>(i));
        p.dedup.emitted[i] = d.at("emitted").at(name).get<std::size_t>();
        p.dedup.kept[i] = d.at("kept").at(name).get<std::size_t>();
      }
      p.dedup.trivial_removed = d.at("trivial_removed").get<std::size_t>();
      p.dedup.duplicates_removed = d.at("duplicates_removed").get<std::size_t>();
    }
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed presentation JSON: ") + e.what());
  }
}

}  // namespace qtensor
