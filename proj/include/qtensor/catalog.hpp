#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qtensor/group_spec.hpp"
#include "qtensor/tensor_analyzer.hpp"

namespace qtensor {

struct CatalogEntry {
  GroupSpec spec;
  /// Largest q to run for this group, if restricted.
  std::optional<std::int64_t> max_q;
};

/// trivial, C2..C8, C2xC2, C2xC4, C3xC3, D8, Q8, heisenberg_mod(3), S3 and
/// S4 (q <= 2).
std::vector<CatalogEntry> default_catalog();

/// {"schema": 1, "groups": [{"group": <spec>, "max_q": 2}, ...]}; a bare array
/// of entries or of group specs is accepted too.
std::vector<CatalogEntry> catalog_from_json(const nlohmann::json& j);
std::vector<CatalogEntry> load_catalog(const std::string& path);
nlohmann::ordered_json catalog_to_json(const std::vector<CatalogEntry>& catalog);

enum class OutputFormat { json, text };
OutputFormat output_format_from_name(const std::string& name);

struct RunConfig {
  std::size_t max_cosets = 2'000'000;
  std::size_t report_cap = default_report_cap;
  std::size_t exhaustive_limit = 30;
  std::size_t samples = 10'000;
  std::uint64_t seed = 1;
  OutputFormat format = OutputFormat::json;
  /// Worker threads for catalog runs; 0 picks the hardware concurrency.
  std::size_t threads = 0;

  /// Throws InputError unless every cap is positive.
  void validate() const;
  AnalysisOptions analysis_options() const;
};

enum class Outcome { pass, fail, limit, input_error };
std::string outcome_name(Outcome o);

struct VerifyRow {
  std::string group;
  std::int64_t q = 0;
  Outcome outcome = Outcome::pass;
  std::string message;
  std::optional<TensorReport> report;
  /// Ids of failed checks, closed-form comparisons included.
  std::vector<std::string> failed;
  /// Closed-form prediction for Upsilon, when one applies.
  std::optional<AbelianGroupStructure> closed_form;
};

struct VerifySummary {
  std::int64_t q_from = 0, q_to = 0;
  std::uint64_t seed = 0;
  std::vector<VerifyRow> rows;

  bool passed() const;
  /// 0 when everything passed; otherwise 4 for input errors, 3 for resource
  /// limits and 2 for failed checks, the first that applies.
  int exit_code() const;
};

/// Analyzes one pair and compares against the closed forms that apply.
VerifyRow verify_pair(const GroupSpec& spec, std::int64_t q, const RunConfig& config);

/// Every (group, q) pair of the catalog with q in [q_from, q_to], run on a
/// worker pool; rows come back in catalog order, then q.
VerifySummary run_verify(const std::vector<CatalogEntry>& catalog, std::int64_t q_from, std::int64_t q_to,
                         const RunConfig& config);

nlohmann::ordered_json to_json(const VerifyRow& row);
nlohmann::ordered_json to_json(const VerifySummary& s);
/// Aligned table, one line per row.
std::string to_text(const VerifySummary& s);
std::string to_text(const TensorReport& r);

}  // namespace qtensor
