#include "qtensor/abelian.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "qtensor/arith.hpp"
#include "qtensor/error.hpp"

namespace qtensor {

AbelianGroupStructure AbelianGroupStructure::from_cyclic_orders(const std::vector<std::int64_t>& orders) {
  AbelianGroupStructure out;
  // prime -> exponents of the primary cyclic factors
  std::map<std::int64_t, std::vector<std::int64_t>> primary;
  for (auto n : orders) {
    if (n < 0) throw InputError("cyclic order must be nonnegative");
    if (n == 0) {
      ++out.free_rank_;
      continue;
    }
    for (auto [p, e] : factorize(n)) {
      std::int64_t pk = 1;
      for (int i = 0; i < e; ++i) pk *= p;
      primary[p].push_back(pk);
    }
  }
  std::size_t k = 0;
  for (auto& [p, powers] : primary) {
    std::sort(powers.begin(), powers.end(), std::greater<>());
    k = std::max(k, powers.size());
  }
  // Invariant factor i (from the top) collects the i-th largest power of every prime.
  std::vector<std::int64_t> factors(k, 1);
  for (auto& [p, powers] : primary) {
    for (std::size_t i = 0; i < powers.size(); ++i) factors[i] *= powers[i];
  }
  std::reverse(factors.begin(), factors.end());
  out.torsion_ = std::move(factors);
  return out;
}

AbelianGroupStructure AbelianGroupStructure::from_relation_matrix(const IntegerMatrix& relations) {
  const SmithForm snf = smith_normal_form(relations);
  std::vector<std::int64_t> orders;
  for (const auto& d : snf.invariants) {
    if (!d.fits_slong_p()) throw LimitExceeded("abelian invariant exceeds 64-bit range");
    orders.push_back(d.get_si());
  }
  for (std::size_t i = snf.rank; i < relations.cols(); ++i) orders.push_back(0);
  return from_cyclic_orders(orders);
}

AbelianGroupStructure AbelianGroupStructure::homocyclic(std::int64_t m, std::int64_t rank) {
  return from_cyclic_orders(std::vector<std::int64_t>(static_cast<std::size_t>(rank), m));
}

std::optional<mpz_class> AbelianGroupStructure::order() const {
  if (free_rank_ > 0) return std::nullopt;
  mpz_class n = 1;
  for (auto d : torsion_) n *= d;
  return n;
}

std::vector<std::int64_t> AbelianGroupStructure::cyclic_orders() const {
  std::vector<std::int64_t> out = torsion_;
  out.insert(out.end(), static_cast<std::size_t>(free_rank_), 0);
  return out;
}

AbelianGroupStructure AbelianGroupStructure::operator*(const AbelianGroupStructure& other) const {
  auto orders = cyclic_orders();
  auto more = other.cyclic_orders();
  orders.insert(orders.end(), more.begin(), more.end());
  return from_cyclic_orders(orders);
}

std::string AbelianGroupStructure::to_string() const {
  if (trivial()) return "1";
  std::ostringstream os;
  bool first = true;
  for (auto d : torsion_) {
    if (!first) os << " x ";
    first = false;
    os << 'C' << d;
  }
  if (free_rank_ > 0) {
    if (!first) os << " x ";
    os << 'Z';
    if (free_rank_ > 1) os << '^' << free_rank_;
  }
  return os.str();
}

AbelianGroupStructure abelian_structure_from_counts(
    std::uint64_t order, const std::function<std::uint64_t(std::uint64_t)>& solutions) {
  std::vector<std::int64_t> orders;
  for (auto [p, e] : factorize(static_cast<std::int64_t>(order))) {
    // s_k = log_p #{x : x^{p^k} = 1}; factors of order >= p^k number s_k - s_{k-1}.
    std::vector<int> s(static_cast<std::size_t>(e) + 1, 0);
    std::uint64_t pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= static_cast<std::uint64_t>(p);
      std::uint64_t c = solutions(pk);
      int log = 0;
      while (c % static_cast<std::uint64_t>(p) == 0 && c > 1) {
        c /= static_cast<std::uint64_t>(p);
        ++log;
      }
      if (c != 1) throw InternalError("abelian_structure_from_counts: count is not a prime power");
      s[static_cast<std::size_t>(k)] = log;
    }
    if (s[static_cast<std::size_t>(e)] != e) throw InternalError("abelian_structure_from_counts: counts inconsistent with order");
    std::vector<int> at_least(static_cast<std::size_t>(e) + 2, 0);
    for (int k = 1; k <= e; ++k) at_least[static_cast<std::size_t>(k)] = s[static_cast<std::size_t>(k)] - s[static_cast<std::size_t>(k) - 1];
    std::int64_t pk2 = 1;
    for (int k = 1; k <= e; ++k) {
      pk2 *= p;
      const int exactly = at_least[static_cast<std::size_t>(k)] - at_least[static_cast<std::size_t>(k) + 1];
      for (int i = 0; i < exactly; ++i) orders.push_back(pk2);
    }
  }
  return AbelianGroupStructure::from_cyclic_orders(orders);
}

AbelianGroupStructure abelian_tensor(const AbelianGroupStructure& a, const AbelianGroupStructure& b,
                                     std::int64_t q) {
  if (q < 0) throw InputError("abelian_tensor: q must be nonnegative");
  std::vector<std::int64_t> orders;
  for (auto m : a.cyclic_orders()) {
    for (auto n : b.cyclic_orders()) {
      std::int64_t g = gcd0(m, n);
      if (q > 0) g = gcd0(g, q);
      orders.push_back(g);
    }
  }
  return AbelianGroupStructure::from_cyclic_orders(orders);
}

}  // namespace qtensor
