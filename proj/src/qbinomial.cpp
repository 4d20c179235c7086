#include "qfleck/qbinomial.hpp"

#include <map>
#include <mutex>
#include <shared_mutex>
#include <utility>

namespace qfleck {

namespace {

std::shared_mutex table_mutex;

using Key = std::pair<unsigned, unsigned>;

std::map<Key, BigPoly>& table() {
  static std::map<Key, BigPoly> memo;
  return memo;
}

const BigPoly& zero_poly() {
  static const BigPoly zero{};
  return zero;
}

const BigPoly& one_poly() {
  static const BigPoly one = BigPoly::monomial(BigInt(1), 0);
  return one;
}

Key canonical(unsigned n, unsigned m) {
  return {n, std::min(m, n - m)};
}

// Fills every entry (r, k) with k <= min(m, r/2) for r <= n, bottom-up, so a
// single write lock covers the whole batch. Entries already present are kept.
const BigPoly& fill_and_get(unsigned n, unsigned m) {
  std::unique_lock lock(table_mutex);
  auto& memo = table();
  for (unsigned r = 2; r <= n; ++r) {
    const unsigned k_max = std::min(m, r / 2);
    for (unsigned k = 1; k <= k_max; ++k) {
      Key key{r, k};
      if (memo.count(key)) continue;
      auto prev = [&](unsigned kk) -> const BigPoly& {
        if (kk == 0 || kk == r - 1) return one_poly();
        auto it = memo.find(canonical(r - 1, kk));
        return it->second;
      };
      // q^k * C(r-1, k)_q + C(r-1, k-1)_q
      BigPoly value = shift(prev(k), k) + prev(k - 1);
      memo.emplace(std::move(key), std::move(value));
    }
  }
  return memo.at(canonical(n, m));
}

}  // namespace

const BigPoly& qbinom(unsigned n, long m) {
  if (m < 0 || m > static_cast<long>(n)) return zero_poly();
  const unsigned mm = std::min<unsigned>(static_cast<unsigned>(m),
                                         n - static_cast<unsigned>(m));
  if (mm == 0) return one_poly();
  {
    std::shared_lock lock(table_mutex);
    auto it = table().find({n, mm});
    if (it != table().end()) return it->second;
  }
  return fill_and_get(n, mm);
}

BigPoly qbinom_deriv(unsigned n, long m, unsigned l) {
  return derivative(qbinom(n, m), l);
}

BigInt int_binom(unsigned n, long m) {
  if (m < 0 || m > static_cast<long>(n)) return BigInt(0);
  BigInt r;
  mpz_bin_ui(r.get_mpz_t(), BigInt(n).get_mpz_t(), static_cast<unsigned long>(m));
  return r;
}

}  // namespace qfleck
