#include <numeric>
#include <random>

#include "doctest.h"
#include "qtensor/abelian.hpp"
#include "qtensor/arith.hpp"
#include "qtensor/integer_matrix.hpp"
#include "qtensor/word.hpp"

using namespace qtensor;

namespace {

constexpr GeneratorId a = 0, b = 1, c = 2;

Word w(std::initializer_list<Letter> l) { return Word(std::vector<Letter>(l)); }

// Unit-letter stack reduction, independent of Word's own arithmetic.
std::vector<int> naive_reduce(const std::vector<int>& letters) {
  std::vector<int> st;
  for (int x : letters) {
    if (!st.empty() && st.back() == -x) {
      st.pop_back();
    } else {
      st.push_back(x);
    }
  }
  return st;
}

std::vector<int> expand(const Word& x) {
  std::vector<int> out;
  for (const auto& l : x.letters()) {
    for (int i = 0; i < std::abs(l.exponent); ++i) out.push_back(l.exponent > 0 ? int(l.generator) + 1 : -int(l.generator) - 1);
  }
  return out;
}

std::vector<int> inv(const std::vector<int>& x) {
  std::vector<int> r(x.rbegin(), x.rend());
  for (auto& v : r) v = -v;
  return r;
}

std::vector<int> cat(std::initializer_list<std::vector<int>> parts) {
  std::vector<int> r;
  for (const auto& p : parts) r.insert(r.end(), p.begin(), p.end());
  return r;
}

std::vector<int> comm(const std::vector<int>& x, const std::vector<int>& y) { return cat({inv(x), inv(y), x, y}); }
std::vector<int> conj(const std::vector<int>& x, const std::vector<int>& y) { return cat({inv(y), x, y}); }

bool naive_hall_witt(const Word& x, const Word& y, const Word& z) {
  const auto X = expand(x), Y = expand(y), Z = expand(z);
  const auto t1 = conj(comm(comm(X, inv(Y)), Z), Y);
  const auto t2 = conj(comm(comm(Y, inv(Z)), X), Z);
  const auto t3 = conj(comm(comm(Z, inv(X)), Y), X);
  return naive_reduce(cat({t1, t2, t3})).empty();
}

Word random_word(std::mt19937_64& rng, int max_len, int gens) {
  std::uniform_int_distribution<int> len(0, max_len), gen(0, gens - 1), sign(0, 1);
  std::vector<Letter> letters;
  const int n = len(rng);
  for (int i = 0; i < n; ++i) letters.push_back({static_cast<GeneratorId>(gen(rng)), sign(rng) ? 1 : -1});
  return free_reduce(Word(letters));
}

// Determinantal divisors of a small integer matrix: d_k = gcd of all k x k minors.
long long det(const std::vector<std::vector<long long>>& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  long long s = 0;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<long long>> sub;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<long long> r;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) r.push_back(m[i][k]);
      sub.push_back(r);
    }
    s += (j % 2 ? -1 : 1) * m[0][j] * det(sub);
  }
  return s;
}

std::vector<long long> determinantal_invariants(const std::vector<std::vector<long long>>& m) {
  const std::size_t rows = m.size(), cols = m[0].size();
  std::vector<long long> d;  // d_k
  for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
    long long g = 0;
    // enumerate k-subsets via bitmasks
    for (unsigned rm = 0; rm < (1U << rows); ++rm) {
      if (static_cast<std::size_t>(__builtin_popcount(rm)) != k) continue;
      for (unsigned cm = 0; cm < (1U << cols); ++cm) {
        if (static_cast<std::size_t>(__builtin_popcount(cm)) != k) continue;
        std::vector<std::vector<long long>> sub;
        for (std::size_t i = 0; i < rows; ++i) {
          if (!(rm >> i & 1U)) continue;
          std::vector<long long> r;
          for (std::size_t j = 0; j < cols; ++j)
            if (cm >> j & 1U) r.push_back(m[i][j]);
          sub.push_back(r);
        }
        g = std::gcd(g, std::llabs(det(sub)));
      }
    }
    if (g == 0) break;
    d.push_back(g);
  }
  std::vector<long long> inv;
  long long prev = 1;
  for (auto x : d) {
    inv.push_back(x / prev);
    prev = x;
  }
  return inv;
}

// Counts Z_q-bilinear maps A x B -> Z_N over generator pairs; for N a multiple
// of both exponents this is |A (x) B|.
long long bilinear_count(const std::vector<long long>& A, const std::vector<long long>& B, long long q, long long N) {
  long long total = 1;
  for (auto m : A) {
    for (auto n : B) {
      long long count = 0;
      for (long long t = 0; t < N; ++t) {
        if ((m * t) % N == 0 && (n * t) % N == 0 && (q == 0 || (q * t) % N == 0)) ++count;
      }
      total *= count;
    }
  }
  return total;
}

}  // namespace

TEST_CASE("free_reduce examples") {
  CHECK(free_reduce(w({{a, 1}, {a, -1}})).empty());
  CHECK(free_reduce(w({{a, 2}, {a, -1}, {b, 1}})) == w({{a, 1}, {b, 1}}));
  CHECK(free_reduce(w({{a, 1}, {b, 1}, {b, -1}, {a, -1}})).empty());
}

TEST_CASE("free_reduce is idempotent and never lengthens") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> gen(0, 2), expo(-2, 2);
  for (int t = 0; t < 500; ++t) {
    std::vector<Letter> letters;
    for (int i = 0; i < 10; ++i) {
      int e = expo(rng);
      if (e == 0) e = 1;
      letters.push_back({static_cast<GeneratorId>(gen(rng)), e});
    }
    const Word raw(letters);
    const Word r = free_reduce(raw);
    CHECK(free_reduce(r) == r);
    CHECK(r.length() <= raw.length());
    CHECK(expand(r) == naive_reduce(expand(raw)));
  }
}

TEST_CASE("hall_witt_check") {
  CHECK(hall_witt_check(Word::generator(a), Word::generator(b), Word::generator(c)));
  CHECK(hall_witt_check(Word::generator(a), Word::generator(a), Word::generator(a)));
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 100; ++t) {
    const Word x = random_word(rng, 6, 3), y = random_word(rng, 6, 3), z = random_word(rng, 6, 3);
    CHECK(naive_hall_witt(x, y, z));
    CHECK(hall_witt_check(x, y, z));
  }
}

TEST_CASE("commutator conventions") {
  const Word x = Word::generator(a), y = Word::generator(b);
  CHECK(commutator(x, y) == w({{a, -1}, {b, -1}, {a, 1}, {b, 1}}));
  CHECK(conjugate(x, y) == w({{b, -1}, {a, 1}, {b, 1}}));
  CHECK(commutator(x, y, x) == commutator(commutator(x, y), x));
}

TEST_CASE("smith_normal_form examples") {
  auto id = smith_normal_form(IntegerMatrix::identity(3));
  CHECK(id.rank == 3);
  CHECK(id.invariants == std::vector<mpz_class>{1, 1, 1});

  auto d = smith_normal_form(IntegerMatrix::diagonal({2, 3}));
  CHECK(d.rank == 2);
  CHECK(determinantal_invariants({{2, 0}, {0, 3}}) == std::vector<long long>{1, 6});
  CHECK(d.invariants == std::vector<mpz_class>{1, 6});

  auto z = smith_normal_form(IntegerMatrix(2, 2));
  CHECK(z.rank == 0);
  CHECK(z.invariants.empty());
}

TEST_CASE("smith_normal_form agrees with determinantal divisors") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> entry(-6, 6), dim(1, 3);
  for (int t = 0; t < 200; ++t) {
    const std::size_t r = static_cast<std::size_t>(dim(rng)), cc = static_cast<std::size_t>(dim(rng));
    std::vector<std::vector<long long>> m(r, std::vector<long long>(cc));
    IntegerMatrix M(r, cc);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < cc; ++j) { m[i][j] = entry(rng); M(i, j) = static_cast<long>(m[i][j]); }
    const auto snf = smith_normal_form(M);
    const auto oracle = determinantal_invariants(m);
    REQUIRE(snf.invariants.size() == oracle.size());
    CHECK(snf.rank == oracle.size());
    for (std::size_t i = 0; i < oracle.size(); ++i) CHECK(snf.invariants[i] == static_cast<long>(oracle[i]));
    for (std::size_t i = 1; i < snf.invariants.size(); ++i) CHECK(snf.invariants[i] % snf.invariants[i - 1] == 0);
    // fixed point on its own diagonal
    const auto again = smith_normal_form(IntegerMatrix::diagonal(snf.invariants));
    CHECK(again.invariants == snf.invariants);
  }
}

TEST_CASE("AbelianGroupStructure canonical form") {
  const auto g = AbelianGroupStructure::from_cyclic_orders({2, 3, 4, 0, 1});
  CHECK(g.torsion() == std::vector<std::int64_t>{2, 12});
  CHECK(g.free_rank() == 1);
  CHECK(g.to_string() == "C2 x C12 x Z");
  CHECK(AbelianGroupStructure::from_cyclic_orders({1, 1}).trivial());
  CHECK(AbelianGroupStructure::from_cyclic_orders({6}) == AbelianGroupStructure::from_cyclic_orders({2, 3}));
  CHECK(AbelianGroupStructure::homocyclic(3, 5).to_string() == "C3 x C3 x C3 x C3 x C3");
  IntegerMatrix rel(2, 3, {2, 0, 0, 0, 3, 0});
  CHECK(AbelianGroupStructure::from_relation_matrix(rel).to_string() == "C6 x Z");
}

TEST_CASE("abelian_tensor examples") {
  const auto C2 = AbelianGroupStructure::from_cyclic_orders({2});
  const auto C4 = AbelianGroupStructure::from_cyclic_orders({4});
  const auto Z = AbelianGroupStructure::from_cyclic_orders({0});
  CHECK(bilinear_count({2}, {4}, 0, 8) == 2);
  CHECK(abelian_tensor(C2, C4, 0) == C2);
  CHECK(abelian_tensor(AbelianGroupStructure{}, C4, 3).trivial());
  CHECK(abelian_tensor(AbelianGroupStructure{}, Z, 0).trivial());
  CHECK(abelian_tensor(Z, Z, 0) == Z);
}

TEST_CASE("abelian_tensor matches bilinear-map counts for orders up to 16") {
  const std::vector<std::vector<long long>> groups = {{2}, {3}, {4}, {2, 2}, {6}, {2, 4}, {8}, {3, 3}, {2, 6}, {4, 4}, {2, 8}, {2, 2, 2}, {16}};
  for (const auto& A : groups) {
    for (const auto& B : groups) {
      for (long long q = 0; q <= 6; ++q) {
        const auto a_s = AbelianGroupStructure::from_cyclic_orders(std::vector<std::int64_t>(A.begin(), A.end()));
        const auto b_s = AbelianGroupStructure::from_cyclic_orders(std::vector<std::int64_t>(B.begin(), B.end()));
        const auto t = abelian_tensor(a_s, b_s, q);
        CHECK(t == abelian_tensor(b_s, a_s, q));
        CHECK(t.order()->get_si() == bilinear_count(A, B, q, 240));
      }
    }
  }
}

TEST_CASE("abelian_structure_from_counts") {
  // C2 x C4: elements with x^2 = 1 number 4, with x^4 = 1 number 8.
  const auto g = abelian_structure_from_counts(8, [](std::uint64_t m) -> std::uint64_t { return m == 2 ? 4 : 8; });
  CHECK(g.to_string() == "C2 x C4");
}

TEST_CASE("witt_rank") {
  CHECK(witt_rank(2, 3) == 2);
  for (int n = 1; n <= 6; ++n) CHECK(witt_rank(n, 1) == n);
  CHECK(witt_rank(3, 2) == (9 - 3) / 2);
  for (int n = 1; n <= 6; ++n) {
    for (int r = 1; r <= 8; ++r) {
      mpz_class sum = 0;
      for (int d = 1; d <= r; ++d) {
        if (r % d) continue;
        mpz_class p;
        mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(r / d));
        sum += mobius(d) * p;
      }
      CHECK(r * witt_rank(n, r) == sum);
    }
  }
}

TEST_CASE("arith helpers use gcd(x, 0) = x") {
  CHECK(gcd0(5, 0) == 5);
  CHECK(gcd0({12, 18, 0}) == 6);
  CHECK(divides(3, 0));
  CHECK_FALSE(divides(0, 3));
  CHECK(binomial(5, 2) == 10);
  CHECK(mobius(30) == -1);
  CHECK(mobius(12) == 0);
}
