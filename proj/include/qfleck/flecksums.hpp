#pragma once

#include <map>
#include <optional>

#include "qfleck/cycring.hpp"
#include "qfleck/qbinomial.hpp"

namespace qfleck {

// Names one alternating q-binomial sum: the full sum over m in [0, n] with
// weights zeta_2c^m P(m) q^{zm} applied to the l-th derivative of C(n,m)_q,
// or, when class_j is set, the sum restricted to m = j (mod c) with signs
// (-1)^((m-j)/c).
struct SumSpec {
  unsigned c = 1;
  unsigned l = 0;
  unsigned z = 0;
  unsigned n = 0;
  XPoly P;
  std::optional<unsigned> class_j;
};

// Convenience constructors for the weight polynomial P.
XPoly xpoly_const(const RingCtxPtr& ctx, BigInt value);
XPoly xpoly_one(const RingCtxPtr& ctx);

// P(x + t), expanded by substitution.
XPoly xpoly_shift(const XPoly& P, long t);

// The full alternating sum; requires class_j to be absent.
CycPoly q_sum(const SumSpec& spec);

// The class-restricted alternating sum; requires class_j.
CycPoly fleck_sum(const SumSpec& spec);

// fleck_sum extracted to Z[q]; NotRational if P has zeta-components.
BigPoly fleck_sum_int(const SumSpec& spec);

// Sum of (-1)^m C(n,m)_q over m = j (mod c): the sign convention of the
// classical congruences, kept for contrast experiments.
BigPoly nonalternating_class_sum(unsigned c, unsigned j, unsigned n);

// Nonnegative integer closest to num/den (den > 0): 0 below 1/2, halves
// round up. Exact; the tie rule is load-bearing.
unsigned round_nearest(const BigInt& num, const BigInt& den);

// Predicted multiplicity of Phi_kc: round_nearest(n/(2kc) - deg(P)/2 - l).
unsigned epsilon(unsigned kc, unsigned l, unsigned degP, unsigned n);

// Exponents of the predicted cyclotomic product over odd k with kc <= n.
std::map<unsigned, unsigned> predicted_exponents(unsigned c, unsigned l,
                                                 unsigned degP, unsigned n);

// prod over odd k of Phi_kc(q)^epsilon(kc, l, degP, n).
BigPoly predicted_product(unsigned c, unsigned l, unsigned degP, unsigned n);

// Exact quotient of the named sum by its predicted cyclotomic product. A
// NotDivisible escape here falsifies the prediction and must surface loudly.
CycPoly residual_R(const SumSpec& spec);

// Step indicators of the residual recursion: alpha is 1 iff n = i*kc or
// n = i*kc + 1 for odd i; beta is 1 iff n = i*kc + 1 for odd i.
unsigned alpha(unsigned kc, unsigned n);
unsigned beta(unsigned kc, unsigned n);

// Falling-factorial helper binom(l,j) * x(x-1)...(x-j+1), for 1 <= j <= l.
XPoly make_Rj(const RingCtxPtr& ctx, unsigned l, unsigned j);

// prod of (1 - q^k) over odd k <= n for even n; the zero polynomial for odd n.
BigPoly gaussian_closed_form(unsigned n);

// The full sum with zeta_2c replaced by zeta_2c^(1+2h), 0 <= h < c.
CycPoly g_sum(const RingCtxPtr& ctx, unsigned h, const XPoly& P, unsigned z,
              unsigned l, unsigned n);

// A sum decomposed as unit * q^qpower * prod Phi_m^e * residual. The unit and
// sign normalization apply to the integer case; a residual that genuinely
// lives in Z[zeta_2c][q] is kept as-is with unit +1.
struct FactorReport {
  int unit = 1;
  unsigned qpower = 0;
  std::map<unsigned, unsigned> cyclo_exponents;
  bool residual_is_integer = true;
  BigPoly residual;
  CycPoly residual_cyc;
  std::map<unsigned, unsigned> predicted;
};

FactorReport factor_report(const BigPoly& p,
                           std::map<unsigned, unsigned> predicted = {});
FactorReport factor_report(const CycPoly& p,
                           std::map<unsigned, unsigned> predicted = {});

}  // namespace qfleck
