#include "qfleck/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>

namespace qfleck {

namespace {

std::shared_mutex cache_mutex;
std::map<unsigned, BigPoly>& cache() {
  static std::map<unsigned, BigPoly> table;
  return table;
}

BigPoly q_power_minus_one(unsigned n) {
  std::vector<BigInt> c(n + 1);
  c[0] = -1;
  c[n] = 1;
  return BigPoly(std::move(c));
}

}  // namespace

const BigPoly& cyclotomic(unsigned n) {
  if (n == 0) throw std::invalid_argument("cyclotomic(n) requires n >= 1");
  {
    std::shared_lock lock(cache_mutex);
    auto it = cache().find(n);
    if (it != cache().end()) return it->second;
  }
  // Compute proper-divisor cyclotomics before taking the write lock; the
  // recursion must not hold it.
  BigPoly value = q_power_minus_one(n);
  for (unsigned d = 1; d < n; ++d) {
    if (n % d == 0) value = divexact_monic(value, cyclotomic(d));
  }
  std::unique_lock lock(cache_mutex);
  return cache().try_emplace(n, std::move(value)).first->second;
}

unsigned euler_phi(unsigned n) {
  if (n == 0) throw std::invalid_argument("euler_phi(n) requires n >= 1");
  unsigned result = n;
  unsigned m = n;
  for (unsigned p = 2; static_cast<unsigned long long>(p) * p <= m; ++p) {
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      result -= result / p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

unsigned phi_valuation(const BigPoly& p, unsigned m) {
  if (p.is_zero_poly()) {
    throw ZeroPolynomial("phi_valuation is undefined for the zero polynomial");
  }
  const BigPoly& phi = cyclotomic(m);
  const std::size_t dphi = *phi.degree();
  unsigned e = 0;
  BigPoly cur = p;
  while (*cur.degree() >= dphi) {
    auto [q, r] = divmod_monic(cur, phi);
    if (!r.is_zero_poly()) break;
    ++e;
    cur = std::move(q);
    if (cur.is_zero_poly()) break;
  }
  return e;
}

}  // namespace qfleck
