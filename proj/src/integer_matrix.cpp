#include "qtensor/integer_matrix.hpp"

#include <algorithm>
#include <utility>

#include "qtensor/error.hpp"

namespace qtensor {

IntegerMatrix::IntegerMatrix(std::size_t rows, std::size_t cols, std::vector<mpz_class> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) throw InputError("IntegerMatrix: entry count does not match shape");
}

IntegerMatrix IntegerMatrix::identity(std::size_t n) {
  IntegerMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntegerMatrix IntegerMatrix::diagonal(const std::vector<mpz_class>& d) {
  IntegerMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

namespace {

void swap_rows(IntegerMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(a, c), m(b, c));
}

void swap_cols(IntegerMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < m.rows(); ++r) std::swap(m(r, a), m(r, b));
}

// row[dst] -= f * row[src]
void sub_row(IntegerMatrix& m, std::size_t dst, std::size_t src, const mpz_class& f) {
  for (std::size_t c = 0; c < m.cols(); ++c) m(dst, c) -= f * m(src, c);
}

void sub_col(IntegerMatrix& m, std::size_t dst, std::size_t src, const mpz_class& f) {
  for (std::size_t r = 0; r < m.rows(); ++r) m(r, dst) -= f * m(r, src);
}

}  // namespace

SmithForm smith_normal_form(IntegerMatrix m) {
  const std::size_t n = std::min(m.rows(), m.cols());
  std::size_t t = 0;
  for (; t < n; ++t) {
    // Pivot: smallest nonzero absolute value in the trailing block.
    bool found = false;
    std::size_t pr = t, pc = t;
    mpz_class best;
    for (std::size_t r = t; r < m.rows(); ++r) {
      for (std::size_t c = t; c < m.cols(); ++c) {
        if (m(r, c) == 0) continue;
        mpz_class a = abs(m(r, c));
        if (!found || a < best) {
          best = a;
          pr = r;
          pc = c;
          found = true;
        }
      }
    }
    if (!found) break;
    swap_rows(m, t, pr);
    swap_cols(m, t, pc);

    for (;;) {
      bool dirty = false;
      for (std::size_t r = t + 1; r < m.rows(); ++r) {
        if (m(r, t) == 0) continue;
        mpz_class qt;
        mpz_fdiv_q(qt.get_mpz_t(), m(r, t).get_mpz_t(), m(t, t).get_mpz_t());
        sub_row(m, r, t, qt);
        if (m(r, t) != 0) {
          swap_rows(m, t, r);
          dirty = true;
        }
      }
      for (std::size_t c = t + 1; c < m.cols(); ++c) {
        if (m(t, c) == 0) continue;
        mpz_class qt;
        mpz_fdiv_q(qt.get_mpz_t(), m(t, c).get_mpz_t(), m(t, t).get_mpz_t());
        sub_col(m, c, t, qt);
        if (m(t, c) != 0) {
          swap_cols(m, t, c);
          dirty = true;
        }
      }
      if (dirty) continue;
      // Row and column t are clear; enforce divisibility on the trailing block.
      std::size_t bad_r = m.rows();
      for (std::size_t r = t + 1; r < m.rows() && bad_r == m.rows(); ++r) {
        for (std::size_t c = t + 1; c < m.cols(); ++c) {
          if (m(r, c) % m(t, t) != 0) {
            bad_r = r;
            break;
          }
        }
      }
      if (bad_r == m.rows()) break;
      for (std::size_t c = 0; c < m.cols(); ++c) m(t, c) += m(bad_r, c);
    }
    if (m(t, t) < 0) m(t, t) = -m(t, t);
  }

  SmithForm out;
  out.rank = t;
  out.invariants.reserve(t);
  for (std::size_t i = 0; i < t; ++i) out.invariants.push_back(m(i, i));
  return out;
}

}  // namespace qtensor
