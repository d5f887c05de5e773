#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

namespace qtensor {

using GeneratorId = std::uint32_t;

/// A power of a single free generator. `exponent` is never zero in a
/// normalized word.
struct Letter {
  GeneratorId generator = 0;
  std::int32_t exponent = 1;

  friend auto operator<=>(const Letter&, const Letter&) = default;
};

/// An element of a free group, stored as a sequence of generator powers.
///
/// Words produced by the arithmetic below are always freely reduced: adjacent
/// letters carry distinct generators and no exponent is zero. A Word built
/// directly from a letter list keeps that list verbatim until passed through
/// free_reduce().
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}
  Word(std::initializer_list<Letter> letters) : letters_(letters) {}

  static Word generator(GeneratorId g, std::int32_t exponent = 1);

  const std::vector<Letter>& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }
  std::size_t size() const { return letters_.size(); }
  /// Sum of absolute exponents.
  std::size_t length() const;

  Word inverse() const;
  Word pow(std::int64_t n) const;

  friend Word operator*(const Word& a, const Word& b);
  Word& operator*=(const Word& b);

  friend auto operator<=>(const Word&, const Word&) = default;

 private:
  std::vector<Letter> letters_;
};

/// Freely reduced normal form. Idempotent and never increases length().
Word free_reduce(const Word& w);

/// [x, y] = x^-1 y^-1 x y.
Word commutator(const Word& x, const Word& y);
/// Left-normed [x, y, z] = [[x, y], z].
Word commutator(const Word& x, const Word& y, const Word& z);
/// x^y = y^-1 x y.
Word conjugate(const Word& x, const Word& y);

/// True iff [x,y^-1,z]^y [y,z^-1,x]^z [z,x^-1,y]^x freely reduces to 1.
bool hall_witt_check(const Word& x, const Word& y, const Word& z);

/// Flattens a word to unit steps in a column encoding: generator g with
/// positive exponent maps to column 2g, negative to 2g+1.
std::vector<std::uint32_t> to_columns(const Word& w);

/// Human-readable form using the supplied generator names, e.g. "a^2 b^-1".
std::string to_string(const Word& w, const std::function<std::string(GeneratorId)>& name);

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
};

}  // namespace qtensor
