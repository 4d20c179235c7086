#include <doctest.h>

#include <random>

#include "qfleck/cycring.hpp"
#include "qfleck/format.hpp"
#include "test_util.hpp"

using namespace qfleck;
using testutil::random_elem;

namespace {
BigPoly P(const char* text) { return parse_bigpoly(text); }
}  // namespace

TEST_CASE("context construction") {
  auto c1 = ctx_new(1);
  CHECK(c1->reduction() == parse_bigpoly("x+1", 'x'));
  CHECK(c1->dim() == 1);

  auto c2 = ctx_new(2);
  CHECK(c2->reduction() == parse_bigpoly("x^2+1", 'x'));
  CHECK(c2->dim() == 2);

  auto c3 = ctx_new(3);
  CHECK(c3->reduction() == parse_bigpoly("x^2-x+1", 'x'));
  CHECK(c3->dim() == 2);

  CHECK(ctx_new(2).get() == c2.get());
}

TEST_CASE("zeta powers") {
  auto c2 = ctx_new(2);
  CHECK(zeta_pow(c2, 2) == CycElem(c2, BigInt(-1)));
  CHECK(zeta_pow(c2, 0) == CycElem(c2, BigInt(1)));

  for (unsigned c = 1; c <= 4; ++c) {
    auto ctx = ctx_new(c);
    CHECK(zeta_pow(ctx, static_cast<long>(c)) == CycElem(ctx, BigInt(-1)));
    CHECK(zeta_pow(ctx, static_cast<long>(c)) * zeta_pow(ctx, static_cast<long>(c)) ==
          CycElem(ctx, BigInt(1)));
  }

  auto c3 = ctx_new(3);
  CHECK(zeta_pow(c3, 1) == CycElem(c3, {BigInt(0), BigInt(1)}));

  // periodicity, including negative exponents
  for (unsigned c = 1; c <= 5; ++c) {
    auto ctx = ctx_new(c);
    for (long e = -15; e <= 15; ++e) {
      CHECK(zeta_pow(ctx, e) == zeta_pow(ctx, e + 2L * c));
    }
  }
}

TEST_CASE("element arithmetic") {
  auto c2 = ctx_new(2);
  CycElem i = zeta_pow(c2, 1);
  CHECK(elem_mul(i, i) == CycElem(c2, BigInt(-1)));
  CHECK(elem_mul(i, CycElem(c2, BigInt(1))) == i);

  auto c3 = ctx_new(3);
  CycElem z6 = zeta_pow(c3, 1);
  CHECK(elem_mul(z6, z6) == CycElem(c3, {BigInt(-1), BigInt(1)}));

  CHECK_THROWS_AS((void)(i + zeta_pow(c3, 1)), CtxMismatch);
}

TEST_CASE("element ring axioms") {
  std::mt19937 rng(31);
  for (unsigned c : {1u, 2u, 3u, 4u, 6u}) {
    auto ctx = ctx_new(c);
    for (int iter = 0; iter < 50; ++iter) {
      CycElem a = random_elem(rng, ctx);
      CycElem b = random_elem(rng, ctx);
      CycElem d = random_elem(rng, ctx);
      CHECK(a * b == b * a);
      CHECK((a * b) * d == a * (b * d));
      CHECK(a * (b + d) == a * b + a * d);
      CHECK(a + (-a) == CycElem(ctx, BigInt(0)));
    }
  }
}

TEST_CASE("cpoly arithmetic and derivative") {
  auto c2 = ctx_new(2);
  CycElem z = zeta_pow(c2, 1);
  CycPoly one_plus_zq = parse_cycpoly("1+z*q", c2);
  CycPoly one_minus_zq = parse_cycpoly("1-z*q", c2);
  CHECK(cpoly_add(one_plus_zq, one_minus_zq) == parse_cycpoly("2", c2));
  CHECK(cpoly_derivative(parse_cycpoly("5", c2)).is_zero_poly());

  CycPoly zp = embed(c2, P("1+q")) * z;
  CHECK(cpoly_mul(zp, CycPoly::monomial(z, 0)) == -embed(c2, P("1+q")));
}

TEST_CASE("cpoly_divexact_int") {
  auto c2 = ctx_new(2);
  CycElem z = zeta_pow(c2, 1);
  CycPoly zp = embed(c2, P("1+q")) * z;
  CHECK(cpoly_divexact_int(zp, P("q+1")) == CycPoly::monomial(z, 0));
  CHECK(cpoly_divexact_int(CycPoly{}, cyclotomic(3)).is_zero_poly());
  CHECK_THROWS_AS(cpoly_divexact_int(parse_cycpoly("z*q+1", c2), P("q+1")),
                  NotDivisible);
  CHECK_THROWS_AS(cpoly_divexact_int(zp, P("2*q+2")), NonMonicDivisor);
}

TEST_CASE("cpoly_phi_valuation") {
  auto c2 = ctx_new(2);
  CycElem z = zeta_pow(c2, 1);
  CycPoly zp = embed(c2, P("1+q")) * z;
  CHECK(cpoly_phi_valuation(zp, 2) == 1);
  CHECK(cpoly_phi_valuation(CycPoly::monomial(CycElem(c2, BigInt(7)), 0), 5) == 0);
  auto c1 = ctx_new(1);
  CycPoly sq = embed(c1, cyclotomic(3) * cyclotomic(3));
  CHECK(cpoly_phi_valuation(sq, 3) == 2);
  CHECK_THROWS_AS(cpoly_phi_valuation(CycPoly{}, 2), ZeroPolynomial);
}

TEST_CASE("cpoly_to_bigpoly") {
  auto c2 = ctx_new(2);
  BigPoly p = P("q^3-4*q+2");
  CHECK(cpoly_to_bigpoly(embed(c2, p)) == p);
  CHECK_THROWS_AS(cpoly_to_bigpoly(CycPoly::monomial(zeta_pow(c2, 1), 0)),
                  NotRational);
  auto c1 = ctx_new(1);
  CHECK(cpoly_to_bigpoly(embed(c1, p) * zeta_pow(c1, 1)) == -p);
}

TEST_CASE("c=1 matches integer arithmetic") {
  auto c1 = ctx_new(1);
  std::mt19937 rng(90);
  for (int iter = 0; iter < 100; ++iter) {
    BigPoly a = testutil::random_bigpoly(rng, 8);
    BigPoly b = testutil::random_bigpoly(rng, 8);
    CHECK(cpoly_to_bigpoly(embed(c1, a) * embed(c1, b)) == a * b);
    CHECK(cpoly_to_bigpoly(embed(c1, a) + embed(c1, b)) == a + b);
    CHECK(cpoly_to_bigpoly(cpoly_derivative(embed(c1, a))) == derivative(a, 1));
  }
}

TEST_CASE("divexact inverts cpoly multiplication by monic integer polys") {
  std::mt19937 rng(91);
  for (unsigned c : {1u, 2u, 3u}) {
    auto ctx = ctx_new(c);
    for (int iter = 0; iter < 60; ++iter) {
      std::vector<CycElem> ac(1 + static_cast<std::size_t>(rng() % 6));
      for (auto& e : ac) e = random_elem(rng, ctx);
      CycPoly a(std::move(ac));
      if (a.is_zero_poly()) continue;
      BigPoly b = testutil::random_bigpoly(rng, 4);
      std::vector<BigInt> bc(b.coeffs());
      bc.resize(5);
      bc[4] = 1;
      BigPoly monic(std::move(bc));
      CHECK(cpoly_divexact_int(a * embed(ctx, monic), monic) == a);
    }
  }
}

TEST_CASE("cycpoly text format round trip") {
  auto c2 = ctx_new(2);
  CycPoly p = parse_cycpoly("(1+z)*q^2-z^3*q+2", c2);
  // z^3 = -z in Z[zeta_4]
  CHECK(p == parse_cycpoly("(1+z)*q^2+z*q+2", c2));
  CHECK(parse_cycpoly(to_string(p), c2) == p);

  std::mt19937 rng(92);
  for (unsigned c : {1u, 2u, 3u, 4u, 6u}) {
    auto ctx = ctx_new(c);
    for (int iter = 0; iter < 50; ++iter) {
      std::vector<CycElem> coeffs(1 + rng() % 5);
      for (auto& e : coeffs) e = random_elem(rng, ctx, 3);
      CycPoly q(std::move(coeffs));
      CHECK(parse_cycpoly(to_string(q), ctx) == q);
    }
  }
}
