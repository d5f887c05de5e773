#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qtensor/presentation.hpp"
#include "qtensor/word.hpp"

namespace qtensor {

struct EnumerationOptions {
  /// Upper bound on simultaneously allocated cosets.
  std::size_t max_cosets = 2'000'000;
  /// When the table fills, scan every open coset without defining new ones
  /// and compact before giving up.
  bool lookahead = true;
};

enum class EnumerationStatus { complete, exceeded_limit };

struct EnumerationStats {
  std::size_t total_defined = 0;
  std::size_t max_live = 0;
  std::size_t lookaheads = 0;
  std::size_t coincidences = 0;
};

/// Action of the generators on cosets. Column 2g holds generator g, column
/// 2g+1 its inverse; coset 0 is the subgroup itself. A complete table is
/// standardized: cosets are numbered in breadth-first order from coset 0,
/// scanning columns left to right.
class CosetTable {
 public:
  CosetTable() = default;
  CosetTable(std::size_t generators, std::size_t cosets, std::vector<std::int32_t> data, EnumerationStatus status,
             EnumerationStats stats)
      : generators_(generators), cosets_(cosets), data_(std::move(data)), status_(status), stats_(stats) {}

  std::size_t generator_count() const { return generators_; }
  std::size_t columns() const { return 2 * generators_; }
  /// Number of cosets (meaningful only when complete).
  std::size_t size() const { return cosets_; }
  EnumerationStatus status() const { return status_; }
  bool complete() const { return status_ == EnumerationStatus::complete; }
  const EnumerationStats& stats() const { return stats_; }

  std::uint32_t act(std::uint32_t coset, std::uint32_t column) const {
    return static_cast<std::uint32_t>(data_[static_cast<std::size_t>(coset) * columns() + column]);
  }
  /// Image of a coset under a word.
  std::uint32_t trace(std::uint32_t coset, const Word& w) const;
  std::span<const std::int32_t> data() const { return data_; }

  /// True iff every relator fixes every coset.
  bool relators_hold(std::span<const Word> relators) const;

  /// "coset,column,image" lines with a header; generator i (from 1) named g<i> and g<i>^-1.
  std::string to_csv() const;

 private:
  std::size_t generators_ = 0;
  std::size_t cosets_ = 0;
  std::vector<std::int32_t> data_;
  EnumerationStatus status_ = EnumerationStatus::exceeded_limit;
  EnumerationStats stats_;
};

/// Hasse-Low-Todd-Coxeter enumeration of the cosets of <subgroup> in
/// <generators | relators>, with lookahead. Returns a table with status
/// exceeded_limit (and no cosets) when max_cosets is not enough.
CosetTable enumerate_cosets(std::size_t generators, std::span<const Word> relators, std::span<const Word> subgroup,
                            const EnumerationOptions& options = {});

CosetTable todd_coxeter(const FpPresentation& p, std::span<const Word> subgroup, std::size_t max_cosets);

}  // namespace qtensor
