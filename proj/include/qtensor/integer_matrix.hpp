#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <vector>

namespace qtensor {

/// Dense matrix of arbitrary-precision integers, row-major.
class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}
  IntegerMatrix(std::size_t rows, std::size_t cols, std::vector<mpz_class> entries);

  static IntegerMatrix identity(std::size_t n);
  static IntegerMatrix diagonal(const std::vector<mpz_class>& d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  mpz_class& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const mpz_class& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  bool operator==(const IntegerMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<mpz_class> entries_;
};

struct SmithForm {
  /// Nonzero diagonal entries d1 | d2 | ... (units included).
  std::vector<mpz_class> invariants;
  std::size_t rank = 0;
};

/// Smith normal form by elementary row and column operations.
SmithForm smith_normal_form(IntegerMatrix m);

}  // namespace qtensor
