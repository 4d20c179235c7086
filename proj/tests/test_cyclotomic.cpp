#include <doctest.h>

#include <random>

#include "qfleck/cyclotomic.hpp"
#include "qfleck/format.hpp"
#include "test_util.hpp"

using namespace qfleck;

namespace {
BigPoly P(const char* text) { return parse_bigpoly(text); }

BigPoly q_power_minus_one(unsigned n) {
  std::vector<BigInt> c(n + 1);
  c[0] = -1;
  c[n] = 1;
  return BigPoly(std::move(c));
}
}  // namespace

TEST_CASE("small cyclotomics") {
  CHECK(cyclotomic(1) == P("q-1"));
  CHECK(cyclotomic(2) == P("q+1"));
  CHECK(cyclotomic(3) == P("q^2+q+1"));
  CHECK(cyclotomic(4) == P("q^2+1"));
  CHECK(cyclotomic(6) == P("q^2-q+1"));
  CHECK(cyclotomic(12) == P("q^4-q^2+1"));
}

TEST_CASE("product over divisors gives q^n - 1") {
  for (unsigned n = 1; n <= 200; ++n) {
    BigPoly prod = P("1");
    for (unsigned d = 1; d <= n; ++d) {
      if (n % d == 0) prod *= cyclotomic(d);
    }
    CHECK(prod == q_power_minus_one(n));
  }
}

TEST_CASE("monic with the expected constant term and degree") {
  for (unsigned n = 1; n <= 200; ++n) {
    const BigPoly& phi = cyclotomic(n);
    CHECK(is_one(phi.leading()));
    CHECK(phi[0] == (n == 1 ? BigInt(-1) : BigInt(1)));
    CHECK(*phi.degree() == euler_phi(n));
  }
}

TEST_CASE("euler_phi") {
  CHECK(euler_phi(1) == 1);
  CHECK(euler_phi(2) == 1);
  CHECK(euler_phi(9) == 6);
  CHECK(euler_phi(12) == 4);
  CHECK(euler_phi(97) == 96);
  CHECK(euler_phi(360) == 96);
}

TEST_CASE("phi_valuation basics") {
  CHECK(phi_valuation(q_power_minus_one(4), 4) == 1);
  CHECK(phi_valuation(cyclotomic(1) * cyclotomic(1) * cyclotomic(3), 1) == 2);
  CHECK(phi_valuation(P("q^3+q+1"), 3) == 0);
  CHECK(phi_valuation(P("7"), 5) == 0);
  CHECK_THROWS_AS(phi_valuation(BigPoly{}, 3), ZeroPolynomial);
}

TEST_CASE("phi_valuation on constructed products") {
  std::mt19937 rng(4242);
  std::uniform_int_distribution<unsigned> mdist(1, 12), edist(0, 4);
  int done = 0;
  while (done < 100) {
    unsigned m = mdist(rng);
    unsigned e = edist(rng);
    BigPoly r = testutil::random_nonzero_bigpoly(rng, 6);
    if (phi_valuation(r, m) != 0) continue;
    BigPoly p = r;
    for (unsigned i = 0; i < e; ++i) p *= cyclotomic(m);
    CHECK(phi_valuation(p, m) == e);
    ++done;
  }
}

TEST_CASE("Phi_n divides 1 - q^m iff n divides m") {
  for (unsigned n = 1; n <= 60; ++n) {
    for (unsigned m = 1; m <= 60; ++m) {
      const bool divides = phi_valuation(-q_power_minus_one(m), n) >= 1;
      CHECK(divides == (m % n == 0));
    }
  }
}
