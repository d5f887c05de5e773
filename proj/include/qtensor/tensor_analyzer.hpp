#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qtensor/abelian.hpp"
#include "qtensor/finite_group.hpp"
#include "qtensor/nu_group.hpp"
#include "qtensor/subgroup_analysis.hpp"

namespace qtensor {

struct AnalysisOptions {
  NuRealizationOptions realization;
  /// Groups up to this order have every tuple checked; larger ones are sampled.
  std::size_t exhaustive_limit = 30;
  std::size_t samples = 10'000;
  std::uint64_t seed = 1;
  /// Subgroups larger than this get an order-only SubgroupReport.
  std::size_t report_cap = default_report_cap;
};

enum class CheckStatus { pass, fail, skipped };
std::string check_status_name(CheckStatus s);

struct PropertyResult {
  std::string id;
  CheckStatus status = CheckStatus::pass;
  /// Tuples evaluated, vacuous ones included.
  std::uint64_t cases = 0;
  /// Element indices of the first failing tuple.
  std::vector<std::int64_t> counterexample;
  std::string detail;
};

struct TensorReport {
  std::string group;
  std::int64_t q = 0;
  std::uint64_t group_order = 1;
  std::uint64_t nu_order = 1;
  SubgroupReport upsilon;
  SubgroupReport delta;
  SubgroupReport mu;
  /// |Upsilon| / |Delta|.
  std::uint64_t exterior_order = 1;
  /// Invariants of mu / Delta.
  AbelianGroupStructure h2_invariants;
  /// |Ker rho| = |G| |Upsilon|.
  std::uint64_t theta_order = 1;
  /// |G'G^q| from the Cayley table.
  std::uint64_t power_commutator_order = 1;
  std::string check_mode;
  std::uint64_t seed = 0;
  std::vector<PropertyResult> properties;

  bool all_passed() const;
  const PropertyResult* property(const std::string& id) const;
};

/// nu^q(G) together with the subgroups of Upsilon the analysis works with.
class TensorAnalysis {
 public:
  TensorAnalysis(FiniteGroup g, std::int64_t q, AnalysisOptions options = {});

  const FiniteGroup& group() const { return nu_.base(); }
  std::int64_t q() const { return nu_.q(); }
  const NuGroup& nu() const { return nu_; }
  const AnalysisOptions& options() const { return options_; }

  const PointSubgroup& upsilon() const { return upsilon_; }
  /// <[g, g^phi]>
  const PointSubgroup& delta() const { return delta_; }
  /// Upsilon ∩ Ker rho.
  const PointSubgroup& mu() const { return mu_; }
  /// [G, G^phi]
  const PointSubgroup& commutator_part() const { return commutator_part_; }
  /// [G', G^phi]
  const PointSubgroup& derived_part() const { return derived_part_; }

  /// u^g and u^(g^phi) for g in G.
  Point conjugate_by_g(Point u, ElementId g) const { return conj_g_[g][u]; }
  Point conjugate_by_phi(Point u, ElementId g) const { return conj_phi_[g][u]; }
  /// Central in nu^q(G).
  bool central(Point u) const { return central_[u] != 0; }

  /// Report without property checks.
  TensorReport report() const;

 private:
  NuGroup nu_;
  AnalysisOptions options_;
  PointSubgroup upsilon_, delta_, mu_, commutator_part_, derived_part_;
  std::vector<std::vector<Point>> conj_g_, conj_phi_;
  std::vector<char> central_;
};

/// Runs the identity battery on an analysis.
std::vector<PropertyResult> check_properties(const TensorAnalysis& a);

/// Analysis plus property checks.
TensorReport analyze(const FiniteGroup& g, std::int64_t q, const AnalysisOptions& options = {});

struct DirectProductVerdict {
  std::string first, second;
  std::int64_t q = 0;
  std::uint64_t upsilon_product = 1;
  std::uint64_t upsilon_first = 1;
  std::uint64_t upsilon_second = 1;
  /// <[N, H^phi] ∪ [H, N^phi]>
  std::uint64_t mid_order = 1;
  std::optional<AbelianGroupStructure> mid_invariants;
  /// |[N, H^phi]| and |[H, N^phi]|.
  std::uint64_t first_second_order = 1;
  std::uint64_t second_first_order = 1;
  /// N/N'N^q (x)_{Z_q} H/H'H^q
  AbelianGroupStructure predicted_first_second;
  bool order_law = false;
  bool tensor_law = false;

  bool passed() const { return order_law && tensor_law; }
};

/// Checks |Upsilon(N x H)| = |Upsilon(N)| |mid| |Upsilon(H)| and
/// |[N, H^phi]| = |N-bar (x) H-bar|.
DirectProductVerdict verify_direct_product(const FiniteGroup& n, const FiniteGroup& h, std::int64_t q,
                                           const AnalysisOptions& options = {});

nlohmann::ordered_json to_json(const AbelianGroupStructure& s);
nlohmann::ordered_json to_json(const SubgroupReport& r);
nlohmann::ordered_json to_json(const PropertyResult& r);
/// Stable field order; carries "schema": 1.
nlohmann::ordered_json to_json(const TensorReport& r);
nlohmann::ordered_json to_json(const DirectProductVerdict& v);

}  // namespace qtensor
