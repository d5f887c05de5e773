#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "qtensor/coset_enumeration.hpp"
#include "qtensor/word.hpp"

namespace qtensor {

using Point = std::uint32_t;

/// A finite group given by a complete coset table over the trivial
/// subgroup, i.e. its right regular representation. Point x stands for the
/// element w with 0^w = x; products are computed by tracing breadth-first
/// tree words through the table.
class RegularGroup {
 public:
  RegularGroup() = default;
  explicit RegularGroup(CosetTable table);

  std::size_t order() const { return table_.size(); }
  std::size_t generator_count() const { return table_.generator_count(); }
  Point identity() const { return 0; }
  Point generator(std::size_t g) const { return table_.act(0, static_cast<std::uint32_t>(2 * g)); }

  Point act(Point x, std::uint32_t column) const { return table_.act(x, column); }
  Point trace(Point x, const Word& w) const { return table_.trace(x, w); }
  Point element(const Word& w) const { return table_.trace(0, w); }

  Point mul(Point a, Point b) const;
  Point inv(Point a) const;
  Point pow(Point a, std::int64_t n) const;
  /// a^b = b^-1 a b
  Point conj(Point a, Point b) const { return mul(mul(inv(b), a), b); }
  /// [a, b] = a^-1 b^-1 a b
  Point comm(Point a, Point b) const { return mul(mul(inv(a), inv(b)), mul(a, b)); }
  std::int64_t element_order(Point a) const;

  /// Breadth-first tree word for a point.
  Word word(Point x) const;
  /// Columns of the tree word, from the identity outwards.
  void path(Point x, std::vector<std::uint32_t>& out) const;
  std::size_t depth(Point x) const { return depth_[x]; }
  Point parent(Point x) const { return parent_[x]; }
  std::uint32_t parent_column(Point x) const { return parent_column_[x]; }

  const CosetTable& table() const { return table_; }

 private:
  CosetTable table_;
  std::vector<Point> parent_;
  std::vector<std::uint8_t> parent_column_;
  std::vector<std::uint16_t> depth_;
};

/// Regular representation of a group given by right multiplication of its
/// elements 0..n-1 by k generators; `identity` becomes point 0. When
/// `numbering` is given it receives the point of every element.
RegularGroup make_regular(std::size_t n, std::size_t k, std::uint32_t identity,
                          const std::function<std::uint32_t(std::uint32_t, std::size_t)>& right_mul,
                          std::vector<Point>* numbering = nullptr);

}  // namespace qtensor
