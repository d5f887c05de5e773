#include "qtensor/word.hpp"

#include <cstdlib>
#include <sstream>

namespace qtensor {

namespace {

// Pushes a letter onto an already reduced sequence, merging with the tail.
void push_reduced(std::vector<Letter>& out, Letter l) {
  if (l.exponent == 0) return;
  if (!out.empty() && out.back().generator == l.generator) {
    out.back().exponent += l.exponent;
    if (out.back().exponent == 0) out.pop_back();
    return;
  }
  out.push_back(l);
}

}  // namespace

Word Word::generator(GeneratorId g, std::int32_t exponent) {
  if (exponent == 0) return Word{};
  return Word{{Letter{g, exponent}}};
}

std::size_t Word::length() const {
  std::size_t n = 0;
  for (const auto& l : letters_) n += static_cast<std::size_t>(std::abs(l.exponent));
  return n;
}

Word Word::inverse() const {
  std::vector<Letter> out;
  out.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) {
    out.push_back(Letter{it->generator, -it->exponent});
  }
  return Word(std::move(out));
}

Word Word::pow(std::int64_t n) const {
  Word base = n < 0 ? inverse() : *this;
  if (n < 0) n = -n;
  Word result;
  for (std::int64_t i = 0; i < n; ++i) result *= base;
  return result;
}

Word operator*(const Word& a, const Word& b) {
  Word out = a;
  out *= b;
  return out;
}

Word& Word::operator*=(const Word& b) {
  for (const auto& l : b.letters_) push_reduced(letters_, l);
  return *this;
}

Word free_reduce(const Word& w) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (const auto& l : w.letters()) push_reduced(out, l);
  return Word(std::move(out));
}

Word commutator(const Word& x, const Word& y) {
  return x.inverse() * y.inverse() * x * y;
}

Word commutator(const Word& x, const Word& y, const Word& z) {
  return commutator(commutator(x, y), z);
}

Word conjugate(const Word& x, const Word& y) { return y.inverse() * x * y; }

bool hall_witt_check(const Word& x, const Word& y, const Word& z) {
  const Word w1 = conjugate(commutator(x, y.inverse(), z), y);
  const Word w2 = conjugate(commutator(y, z.inverse(), x), z);
  const Word w3 = conjugate(commutator(z, x.inverse(), y), x);
  return free_reduce(w1 * w2 * w3).empty();
}

std::vector<std::uint32_t> to_columns(const Word& w) {
  std::vector<std::uint32_t> cols;
  cols.reserve(w.length());
  for (const auto& l : w.letters()) {
    const std::uint32_t c = 2 * l.generator + (l.exponent < 0 ? 1 : 0);
    for (int i = 0; i < std::abs(l.exponent); ++i) cols.push_back(c);
  }
  return cols;
}

std::string to_string(const Word& w, const std::function<std::string(GeneratorId)>& name) {
  if (w.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const auto& l : w.letters()) {
    if (!first) os << ' ';
    first = false;
    os << name(l.generator);
    if (l.exponent != 1) os << '^' << l.exponent;
  }
  return os.str();
}

std::size_t WordHash::operator()(const Word& w) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (const auto& l : w.letters()) {
    h ^= (static_cast<std::size_t>(l.generator) << 20) ^ static_cast<std::uint32_t>(l.exponent);
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace qtensor
