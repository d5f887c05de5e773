#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <initializer_list>
#include <map>
#include <vector>

namespace qtensor {

/// gcd with the convention gcd(x, 0) = x; the result is nonnegative.
std::int64_t gcd0(std::int64_t a, std::int64_t b);
std::int64_t gcd0(std::initializer_list<std::int64_t> values);

/// True when d divides n, with 0 divisible by everything.
bool divides(std::int64_t d, std::int64_t n);

std::map<std::int64_t, int> factorize(std::int64_t n);
std::vector<std::int64_t> divisors(std::int64_t n);
int mobius(std::int64_t n);

mpz_class binomial(std::int64_t n, std::int64_t k);

/// Witt's necklace count (1/r) sum_{d | r} mu(d) n^{r/d}: the rank of the
/// r-th lower central factor of a free group of rank n.
mpz_class witt_rank(std::int64_t n, std::int64_t r);
/// The Moebius sum without the division by r.
mpz_class witt_moebius_sum(std::int64_t n, std::int64_t r);

}  // namespace qtensor
