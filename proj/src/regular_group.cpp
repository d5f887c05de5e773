#include "qtensor/regular_group.hpp"

#include <algorithm>
#include <limits>

#include "qtensor/error.hpp"

namespace qtensor {

RegularGroup::RegularGroup(CosetTable table) : table_(std::move(table)) {
  if (!table_.complete()) throw InternalError("RegularGroup needs a complete coset table");
  if (table_.columns() > std::numeric_limits<std::uint8_t>::max()) throw LimitExceeded("too many generators for RegularGroup");
  const std::size_t n = table_.size();
  constexpr Point unset = std::numeric_limits<Point>::max();
  parent_.assign(n, unset);
  parent_column_.assign(n, 0);
  depth_.assign(n, 0);
  parent_[0] = 0;
  // Standardized tables are numbered in breadth-first order, so a single
  // forward sweep visits parents before children.
  for (Point x = 0; x < n; ++x) {
    if (parent_[x] == unset) throw InternalError("coset table is not standardized");
    for (std::uint32_t c = 0; c < table_.columns(); ++c) {
      const Point y = table_.act(x, c);
      if (parent_[y] == unset) {
        parent_[y] = x;
        parent_column_[y] = static_cast<std::uint8_t>(c);
        if (depth_[x] == std::numeric_limits<std::uint16_t>::max()) throw LimitExceeded("regular representation too deep");
        depth_[y] = static_cast<std::uint16_t>(depth_[x] + 1);
      }
    }
  }
}

void RegularGroup::path(Point x, std::vector<std::uint32_t>& out) const {
  out.resize(depth_[x]);
  for (std::size_t i = depth_[x]; i-- > 0;) {
    out[i] = parent_column_[x];
    x = parent_[x];
  }
}

Word RegularGroup::word(Point x) const {
  std::vector<std::uint32_t> cols;
  path(x, cols);
  Word w;
  for (auto c : cols) w *= Word::generator(c / 2, c % 2 ? -1 : 1);
  return w;
}

Point RegularGroup::mul(Point a, Point b) const {
  // Walk b up to the root collecting columns, then apply them from a.
  std::uint32_t cols[std::numeric_limits<std::uint16_t>::max() + 1];
  std::size_t d = depth_[b];
  for (std::size_t i = d; i-- > 0;) {
    cols[i] = parent_column_[b];
    b = parent_[b];
  }
  for (std::size_t i = 0; i < d; ++i) a = table_.act(a, cols[i]);
  return a;
}

Point RegularGroup::inv(Point a) const {
  Point x = 0;
  while (a != 0) {
    x = table_.act(x, parent_column_[a] ^ 1U);
    a = parent_[a];
  }
  return x;
}

Point RegularGroup::pow(Point a, std::int64_t n) const {
  if (n < 0) {
    a = inv(a);
    n = -n;
  }
  Point r = 0;
  while (n > 0) {
    if (n & 1) r = mul(r, a);
    n >>= 1;
    if (n) a = mul(a, a);
  }
  return r;
}

std::int64_t RegularGroup::element_order(Point a) const {
  std::int64_t n = 1;
  for (Point x = a; x != 0; x = mul(x, a)) ++n;
  return n;
}

RegularGroup make_regular(std::size_t n, std::size_t k, std::uint32_t identity,
                          const std::function<std::uint32_t(std::uint32_t, std::size_t)>& right_mul,
                          std::vector<Point>* numbering) {
  const std::size_t cols = 2 * k;
  std::vector<std::int32_t> raw(n * cols, -1);
  for (std::uint32_t x = 0; x < n; ++x) {
    for (std::size_t j = 0; j < k; ++j) {
      const std::uint32_t y = right_mul(x, j);
      if (y >= n) throw InternalError("make_regular: image out of range");
      raw[x * cols + 2 * j] = static_cast<std::int32_t>(y);
      raw[y * cols + 2 * j + 1] = static_cast<std::int32_t>(x);
    }
  }
  for (auto v : raw)
    if (v < 0) throw InternalError("make_regular: generator action is not a permutation");
  // Breadth-first renumbering from the identity standardizes the table.
  std::vector<std::int32_t> number(n, -1);
  std::vector<std::uint32_t> order{identity};
  number[identity] = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t c = 0; c < cols; ++c) {
      const auto y = static_cast<std::size_t>(raw[order[i] * cols + c]);
      if (number[y] < 0) {
        number[y] = static_cast<std::int32_t>(order.size());
        order.push_back(static_cast<std::uint32_t>(y));
      }
    }
  }
  if (order.size() != n) throw InternalError("make_regular: generators do not generate");
  std::vector<std::int32_t> data(n * cols);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < cols; ++c) data[i * cols + c] = number[static_cast<std::size_t>(raw[order[i] * cols + c])];
  if (numbering) numbering->assign(number.begin(), number.end());
  return RegularGroup(CosetTable(k, n, std::move(data), EnumerationStatus::complete, {}));
}

}  // namespace qtensor
