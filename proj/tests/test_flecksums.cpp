#include <doctest.h>

#include <random>

#include "qfleck/cyclotomic.hpp"
#include "qfleck/flecksums.hpp"
#include "qfleck/format.hpp"
#include "test_util.hpp"

using namespace qfleck;
using testutil::random_xpoly;

namespace {

BigPoly P(const char* text) { return parse_bigpoly(text); }

SumSpec full_sum_spec(unsigned c, unsigned l, unsigned z, unsigned n) {
  return SumSpec{c, l, z, n, xpoly_one(ctx_new(c)), std::nullopt};
}

SumSpec class_sum_spec(unsigned c, unsigned j, unsigned n, unsigned l = 0,
                       unsigned z = 0) {
  return SumSpec{c, l, z, n, xpoly_one(ctx_new(c)), j};
}

}  // namespace

TEST_CASE("xpoly_shift") {
  auto c2 = ctx_new(2);
  XPoly x = parse_cycpoly("x", c2, 'x');
  CHECK(xpoly_shift(x, 1) == parse_cycpoly("x+1", c2, 'x'));
  XPoly x2 = parse_cycpoly("x^2", c2, 'x');
  CHECK(xpoly_shift(x2, 1) == parse_cycpoly("x^2+2*x+1", c2, 'x'));
  XPoly p = parse_cycpoly("(1+z)*x^2-3*x+z", c2, 'x');
  CHECK(xpoly_shift(p, 0) == p);
  CHECK(xpoly_shift(xpoly_shift(p, 5), -5) == p);

  // agreement with direct evaluation
  std::mt19937 rng(7);
  for (int iter = 0; iter < 50; ++iter) {
    XPoly r = random_xpoly(rng, c2, rng() % 4);
    long t = static_cast<long>(rng() % 9) - 4;
    XPoly shifted = xpoly_shift(r, t);
    for (long m = -3; m <= 3; ++m) {
      CHECK(eval(shifted, BigInt(m)) == eval(r, BigInt(m + t)));
    }
  }
}

TEST_CASE("q_sum known values") {
  CHECK(cpoly_to_bigpoly(q_sum(full_sum_spec(1, 0, 0, 2))) == P("-q+1"));
  CHECK(q_sum(full_sum_spec(1, 0, 0, 1)).is_zero_poly());

  auto c2 = ctx_new(2);
  CHECK(q_sum(full_sum_spec(2, 0, 0, 2)) ==
        embed(c2, P("q+1")) * zeta_pow(c2, 1));
}

TEST_CASE("fleck_sum known values") {
  // direct summation pins the unit: the class (1 mod 4) sum at n=7 is
  // -q^2 Phi_4 Phi_7
  CHECK(fleck_sum_int(class_sum_spec(4, 1, 7)) ==
        -(shift(cyclotomic(4) * cyclotomic(7), 2)));

  // c=1, j=0 coincides with the full alternating sum
  for (unsigned n = 0; n <= 12; ++n) {
    CHECK(fleck_sum(class_sum_spec(1, 0, n)) == q_sum(full_sum_spec(1, 0, 0, n)));
  }

  // class sums recombine to the full sum: sum_j zeta^j fleck_j = Q
  for (unsigned c : {2u, 3u, 4u}) {
    auto ctx = ctx_new(c);
    for (unsigned n = 0; n <= 10; ++n) {
      CycPoly recombined;
      for (unsigned j = 0; j < c; ++j) {
        recombined += fleck_sum(class_sum_spec(c, j, n)) *
                      CycPoly::monomial(zeta_pow(ctx, j), 0);
      }
      CHECK(recombined == q_sum(full_sum_spec(c, 0, 0, n)));
    }
  }
}

TEST_CASE("alternating sums satisfy the two-step product recursion at c=1") {
  // sum (-1)^m C(n,m)_q = (1 - q^(n-1)) * sum (-1)^m C(n-2,m)_q
  for (unsigned n = 2; n <= 20; ++n) {
    BigPoly lhs = cpoly_to_bigpoly(q_sum(full_sum_spec(1, 0, 0, n)));
    std::vector<BigInt> f(n);
    f[0] = 1;
    f[n - 1] = -1;  // n >= 2, so this is not the constant slot
    BigPoly factor(std::move(f));
    BigPoly rhs = factor * cpoly_to_bigpoly(q_sum(full_sum_spec(1, 0, 0, n - 2)));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("nonalternating_class_sum") {
  CHECK(nonalternating_class_sum(4, 1, 7) ==
        -(cyclotomic(7) * P("q^4+q^2+2")));
  CHECK(nonalternating_class_sum(1, 0, 4) == P("1-q") * P("1-q^3"));
  CHECK(nonalternating_class_sum(2, 0, 2) == P("2"));
}

TEST_CASE("round_nearest") {
  CHECK(round_nearest(BigInt(-3), BigInt(2)) == 0);
  CHECK(round_nearest(BigInt(3), BigInt(2)) == 2);
  CHECK(round_nearest(BigInt(4), BigInt(3)) == 1);
  CHECK(round_nearest(BigInt(1), BigInt(2)) == 1);
  CHECK(round_nearest(BigInt(0), BigInt(7)) == 0);
  CHECK(round_nearest(BigInt(11), BigInt(4)) == 3);
  CHECK(round_nearest(BigInt(5), BigInt(1)) == 5);
}

TEST_CASE("epsilon") {
  CHECK(epsilon(3, 0, 0, 8) == 1);
  CHECK(epsilon(9, 0, 0, 8) == 0);
  CHECK(epsilon(1, 0, 0, 4) == 2);
  CHECK(epsilon(2, 0, 0, 2) == 1);
  CHECK(epsilon(1, 1, 0, 4) == 1);
  CHECK(epsilon(1, 0, 1, 4) == 2);  // round(2 - 1/2) = round(3/2) half-up
  CHECK(epsilon(5, 2, 3, 20) == 0);
}

TEST_CASE("predicted_product") {
  CHECK(predicted_product(1, 0, 0, 4) ==
        cyclotomic(1) * cyclotomic(1) * cyclotomic(3));
  CHECK(predicted_product(1, 0, 0, 2) == cyclotomic(1));
  CHECK(predicted_product(3, 0, 0, 0) == P("1"));
  CHECK(predicted_product(5, 0, 0, 21) ==
        cyclotomic(5) * cyclotomic(5) * cyclotomic(15));
}

TEST_CASE("residual closed form at c=1") {
  for (unsigned n = 1; n <= 40; ++n) {
    CycPoly r = residual_R(full_sum_spec(1, 0, 0, n));
    if (n % 2 == 1) {
      CHECK(r.is_zero_poly());
    } else {
      BigPoly expected = (n / 2) % 2 == 0 ? P("1") : P("-1");
      CHECK(cpoly_to_bigpoly(r) == expected);
    }
  }
}

TEST_CASE("alpha and beta") {
  CHECK(alpha(3, 9) == 1);
  CHECK(alpha(3, 6) == 0);
  CHECK(alpha(3, 10) == 1);
  CHECK(beta(3, 10) == 1);
  CHECK(beta(3, 9) == 0);
  for (unsigned kc = 1; kc <= 30; ++kc) {
    for (unsigned n = 0; n <= 100; ++n) {
      const unsigned rn = round_nearest(BigInt(n), BigInt(2) * kc);
      const unsigned rn2 =
          round_nearest(BigInt(n) - 2, BigInt(2) * kc);
      const unsigned rn1 =
          round_nearest(BigInt(n) - 1, BigInt(2) * kc);
      CHECK(alpha(kc, n) == rn - rn2);
      CHECK(beta(kc, n) == rn1 - rn2);
    }
  }
}

TEST_CASE("make_Rj") {
  auto c1 = ctx_new(1);
  CHECK(make_Rj(c1, 1, 1) == parse_cycpoly("x", c1, 'x'));
  CHECK(make_Rj(c1, 2, 1) == parse_cycpoly("2*x", c1, 'x'));
  CHECK(make_Rj(c1, 2, 2) == parse_cycpoly("x^2-x", c1, 'x'));
  CHECK(make_Rj(c1, 3, 2) == parse_cycpoly("3*x^2-3*x", c1, 'x'));
}

TEST_CASE("gaussian_closed_form") {
  CHECK(gaussian_closed_form(2) == P("1-q"));
  CHECK(gaussian_closed_form(4) == P("1-q") * P("1-q^3"));
  CHECK(gaussian_closed_form(7).is_zero_poly());
}

TEST_CASE("g_sum") {
  auto c2 = ctx_new(2);
  XPoly one = xpoly_one(c2);
  CHECK(g_sum(c2, 0, one, 0, 0, 2) == q_sum(full_sum_spec(2, 0, 0, 2)));
  CHECK(g_sum(c2, 1, one, 0, 0, 2) ==
        -(embed(c2, P("1+q")) * zeta_pow(c2, 1)));

  auto c1 = ctx_new(1);
  CHECK(cpoly_to_bigpoly(g_sum(c1, 0, xpoly_one(c1), 0, 0, 2)) == P("1-q"));
}

TEST_CASE("factor_report") {
  FactorReport r1 = factor_report(shift(cyclotomic(4) * cyclotomic(7), 2));
  CHECK(r1.unit == 1);
  CHECK(r1.qpower == 2);
  CHECK(r1.cyclo_exponents == std::map<unsigned, unsigned>{{4, 1}, {7, 1}});
  CHECK(r1.residual == P("1"));

  FactorReport r2 = factor_report(P("1-q") * P("1-q^3"));
  CHECK(r2.unit == 1);
  CHECK(r2.qpower == 0);
  CHECK(r2.cyclo_exponents == std::map<unsigned, unsigned>{{1, 2}, {3, 1}});
  CHECK(r2.residual == P("1"));

  FactorReport r3 = factor_report(P("q^3+q+1"));
  CHECK(r3.unit == 1);
  CHECK(r3.qpower == 0);
  CHECK(r3.cyclo_exponents.empty());
  CHECK(r3.residual == P("q^3+q+1"));

  // unit, q-power and cyclotomic part reconstruct the input
  FactorReport r4 = factor_report(-shift(cyclotomic(2) * P("q^3+q+1"), 3));
  CHECK(r4.unit == -1);
  CHECK(r4.qpower == 3);
  CHECK(r4.cyclo_exponents == std::map<unsigned, unsigned>{{2, 1}});
  CHECK(r4.residual == P("q^3+q+1"));
  BigPoly rebuilt = shift(r4.residual, r4.qpower);
  for (auto [m, e] : r4.cyclo_exponents) {
    for (unsigned i = 0; i < e; ++i) rebuilt *= cyclotomic(m);
  }
  CHECK(-rebuilt == -shift(cyclotomic(2) * P("q^3+q+1"), 3));

  // a factor with m beyond the residual degree is still found
  FactorReport r5 = factor_report(cyclotomic(6) * cyclotomic(2));
  CHECK(r5.cyclo_exponents == std::map<unsigned, unsigned>{{2, 1}, {6, 1}});
  CHECK(r5.residual == P("1"));

  CHECK_THROWS_AS(factor_report(BigPoly{}), ZeroPolynomial);

  // zeta-coefficient path
  auto c2 = ctx_new(2);
  CycPoly zval = embed(c2, shift(cyclotomic(2), 1)) * zeta_pow(c2, 1);
  FactorReport rc = factor_report(zval);
  CHECK(!rc.residual_is_integer);
  CHECK(rc.qpower == 1);
  CHECK(rc.cyclo_exponents == std::map<unsigned, unsigned>{{2, 1}});
  CHECK(rc.residual_cyc == CycPoly::monomial(zeta_pow(c2, 1), 0));
}

TEST_CASE("argument validation") {
  auto c2 = ctx_new(2);
  SumSpec with_class{2, 0, 0, 4, xpoly_one(c2), 1};
  SumSpec without_class{2, 0, 0, 4, xpoly_one(c2), std::nullopt};
  CHECK_THROWS_AS((void)q_sum(with_class), std::invalid_argument);
  CHECK_THROWS_AS((void)fleck_sum(without_class), std::invalid_argument);
  SumSpec bad_class{2, 0, 0, 4, xpoly_one(c2), 2};
  CHECK_THROWS_AS((void)fleck_sum(bad_class), std::invalid_argument);
  CHECK_THROWS_AS((void)nonalternating_class_sum(3, 3, 5), std::invalid_argument);
  CHECK_THROWS_AS((void)make_Rj(c2, 2, 0), std::invalid_argument);
  CHECK_THROWS_AS((void)make_Rj(c2, 2, 3), std::invalid_argument);
  CHECK_THROWS_AS((void)gaussian_closed_form(0), std::invalid_argument);
  CHECK_THROWS_AS((void)g_sum(c2, 2, xpoly_one(c2), 0, 0, 3),
                  std::invalid_argument);

  // mixing a P from the wrong ring with the sum's c is a hard error
  SumSpec mismatched{3, 0, 0, 4, xpoly_one(c2), std::nullopt};
  CHECK_THROWS_AS((void)q_sum(mismatched), CtxMismatch);
}

TEST_CASE("residual never escapes the predicted product on spot checks") {
  // Table-row style specs: the quotient must exist
  for (auto [c, j, n] : {std::tuple<unsigned, unsigned, unsigned>{3, 1, 8},
                         {5, 1, 21}, {7, 3, 23}}) {
    CycPoly r = residual_R(class_sum_spec(c, j, n));
    CHECK(!r.is_zero_poly());
  }
}
