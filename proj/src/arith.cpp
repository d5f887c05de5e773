#include "qtensor/arith.hpp"

#include <numeric>

#include "qtensor/error.hpp"

namespace qtensor {

std::int64_t gcd0(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

std::int64_t gcd0(std::initializer_list<std::int64_t> values) {
  std::int64_t g = 0;
  for (auto v : values) g = std::gcd(g, v);
  return g;
}

bool divides(std::int64_t d, std::int64_t n) {
  if (d == 0) return n == 0;
  return n % d == 0;
}

std::map<std::int64_t, int> factorize(std::int64_t n) {
  std::map<std::int64_t, int> f;
  if (n < 0) n = -n;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    while (n % p == 0) {
      ++f[p];
      n /= p;
    }
  }
  if (n > 1) ++f[n];
  return f;
}

std::vector<std::int64_t> divisors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t d = 1; d <= n; ++d) {
    if (n % d == 0) out.push_back(d);
  }
  return out;
}

int mobius(std::int64_t n) {
  if (n < 1) throw InputError("mobius: argument must be positive");
  int sign = 1;
  for (auto [p, e] : factorize(n)) {
    if (e > 1) return 0;
    sign = -sign;
  }
  return sign;
}

mpz_class binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

mpz_class witt_moebius_sum(std::int64_t n, std::int64_t r) {
  if (n < 1 || r < 1) throw InputError("witt_rank: n and r must be positive");
  mpz_class sum = 0;
  for (auto d : divisors(r)) {
    const int mu = mobius(d);
    if (mu == 0) continue;
    mpz_class term;
    mpz_ui_pow_ui(term.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(r / d));
    sum += mu * term;
  }
  return sum;
}

mpz_class witt_rank(std::int64_t n, std::int64_t r) {
  const mpz_class sum = witt_moebius_sum(n, r);
  if (sum % r != 0) throw InternalError("witt_rank: Moebius sum not divisible by r");
  return sum / r;
}

}  // namespace qtensor
