#include "qfleck/flecksums.hpp"

#include <utility>

namespace qfleck {

namespace {

RingCtxPtr spec_ctx(const SumSpec& spec) {
  RingCtxPtr ctx = cpoly_ctx(spec.P);
  if (ctx) {
    if (ctx->c() != spec.c) {
      throw CtxMismatch("P lives in a different ring than the sum's c");
    }
    return ctx;
  }
  return ctx_new(spec.c);
}

// Accumulate scalar * base(q) * q^offset into acc.
void add_scaled_shifted(CycPoly& acc, const CycElem& scalar,
                        const BigPoly& base, std::size_t offset) {
  if (is_zero(scalar) || base.is_zero_poly()) return;
  std::vector<CycElem> coeffs(offset + base.coeffs().size());
  for (std::size_t i = 0; i < base.coeffs().size(); ++i) {
    if (is_zero(base.coeffs()[i])) continue;
    coeffs[offset + i] = scalar * base.coeffs()[i];
  }
  acc += CycPoly(std::move(coeffs));
}

}  // namespace

XPoly xpoly_const(const RingCtxPtr& ctx, BigInt value) {
  return XPoly::monomial(CycElem(ctx, std::move(value)), 0);
}

XPoly xpoly_one(const RingCtxPtr& ctx) { return xpoly_const(ctx, BigInt(1)); }

XPoly xpoly_shift(const XPoly& P, long t) {
  if (P.is_zero_poly() || t == 0) return P;
  RingCtxPtr ctx = cpoly_ctx(P);
  // Horner over x + t: result = (...(p_d (x+t) + p_{d-1})(x+t) + ...).
  const CycElem tt(ctx, BigInt(t));
  XPoly result;
  for (std::size_t i = P.coeffs().size(); i-- > 0;) {
    result = shift(result, 1) + result * tt;
    result += XPoly::monomial(P.coeffs()[i], 0);
  }
  return result;
}

CycPoly q_sum(const SumSpec& spec) {
  if (spec.class_j) {
    throw std::invalid_argument("q_sum expects a spec without class_j");
  }
  RingCtxPtr ctx = spec_ctx(spec);
  CycPoly acc;
  for (unsigned m = 0; m <= spec.n; ++m) {
    CycElem weight = zeta_pow(ctx, static_cast<long>(m)) * eval(spec.P, BigInt(m));
    add_scaled_shifted(acc, weight, qbinom_deriv(spec.n, m, spec.l),
                       static_cast<std::size_t>(spec.z) * m);
  }
  return acc;
}

CycPoly fleck_sum(const SumSpec& spec) {
  if (!spec.class_j) {
    throw std::invalid_argument("fleck_sum expects a spec with class_j");
  }
  const unsigned j = *spec.class_j;
  if (j >= spec.c) {
    throw std::invalid_argument("class_j must satisfy 0 <= j < c");
  }
  RingCtxPtr ctx = spec_ctx(spec);
  CycPoly acc;
  long sign = 1;
  for (unsigned m = j; m <= spec.n; m += spec.c, sign = -sign) {
    CycElem weight = eval(spec.P, BigInt(m)) * sign;
    add_scaled_shifted(acc, weight, qbinom_deriv(spec.n, m, spec.l),
                       static_cast<std::size_t>(spec.z) * m);
  }
  return acc;
}

BigPoly fleck_sum_int(const SumSpec& spec) {
  return cpoly_to_bigpoly(fleck_sum(spec));
}

BigPoly nonalternating_class_sum(unsigned c, unsigned j, unsigned n) {
  if (j >= c) throw std::invalid_argument("class j must satisfy 0 <= j < c");
  BigPoly acc;
  for (unsigned m = j; m <= n; m += c) {
    BigPoly term = qbinom(n, m);
    acc += (m % 2 == 0) ? term : -term;
  }
  return acc;
}

unsigned round_nearest(const BigInt& num, const BigInt& den) {
  if (sign(den) <= 0) throw std::invalid_argument("round_nearest needs den > 0");
  if (2 * num < den) return 0;
  BigInt q;
  BigInt n2 = 2 * num + den;
  BigInt d2 = 2 * den;
  mpz_fdiv_q(q.get_mpz_t(), n2.get_mpz_t(), d2.get_mpz_t());
  return static_cast<unsigned>(q.get_ui());
}

unsigned epsilon(unsigned kc, unsigned l, unsigned degP, unsigned n) {
  // n/(2kc) - degP/2 - l over the common denominator 2kc.
  BigInt num = BigInt(n) - BigInt(kc) * degP - BigInt(2) * kc * l;
  return round_nearest(num, BigInt(2) * kc);
}

std::map<unsigned, unsigned> predicted_exponents(unsigned c, unsigned l,
                                                 unsigned degP, unsigned n) {
  std::map<unsigned, unsigned> out;
  for (unsigned k = 1; k * c <= n; k += 2) {
    unsigned e = epsilon(k * c, l, degP, n);
    if (e > 0) out[k * c] = e;
  }
  return out;
}

BigPoly predicted_product(unsigned c, unsigned l, unsigned degP, unsigned n) {
  BigPoly prod = BigPoly::monomial(BigInt(1), 0);
  for (const auto& [m, e] : predicted_exponents(c, l, degP, n)) {
    for (unsigned i = 0; i < e; ++i) prod *= cyclotomic(m);
  }
  return prod;
}

CycPoly residual_R(const SumSpec& spec) {
  CycPoly sum = spec.class_j ? fleck_sum(spec) : q_sum(spec);
  if (sum.is_zero_poly()) return sum;
  const unsigned degP =
      spec.P.is_zero_poly() ? 0 : static_cast<unsigned>(*spec.P.degree());
  return cpoly_divexact_int(sum,
                            predicted_product(spec.c, spec.l, degP, spec.n));
}

unsigned alpha(unsigned kc, unsigned n) {
  if (n % kc == 0 && (n / kc) % 2 == 1) return 1;
  return beta(kc, n);
}

unsigned beta(unsigned kc, unsigned n) {
  if (n >= 1 && (n - 1) % kc == 0 && ((n - 1) / kc) % 2 == 1) return 1;
  return 0;
}

XPoly make_Rj(const RingCtxPtr& ctx, unsigned l, unsigned j) {
  if (j < 1 || j > l) throw std::invalid_argument("make_Rj needs 1 <= j <= l");
  XPoly result = xpoly_const(ctx, int_binom(l, static_cast<long>(j)));
  for (unsigned k = 0; k < j; ++k) {
    // multiply by (x - k)
    XPoly factor = shift(xpoly_one(ctx), 1) +
                   xpoly_const(ctx, BigInt(-static_cast<long>(k)));
    result *= factor;
  }
  return result;
}

BigPoly gaussian_closed_form(unsigned n) {
  if (n == 0) throw std::invalid_argument("gaussian_closed_form needs n >= 1");
  if (n % 2 == 1) return BigPoly{};
  BigPoly prod = BigPoly::monomial(BigInt(1), 0);
  for (unsigned k = 1; k <= n; k += 2) {
    // (1 - q^k)
    std::vector<BigInt> c(k + 1);
    c[0] = 1;
    c[k] = -1;
    prod *= BigPoly(std::move(c));
  }
  return prod;
}

CycPoly g_sum(const RingCtxPtr& ctx, unsigned h, const XPoly& P, unsigned z,
              unsigned l, unsigned n) {
  if (h >= ctx->c()) throw std::invalid_argument("g_sum needs 0 <= h < c");
  CycPoly acc;
  for (unsigned m = 0; m <= n; ++m) {
    CycElem weight =
        zeta_pow(ctx, static_cast<long>(1 + 2 * h) * m) * eval(P, BigInt(m));
    add_scaled_shifted(acc, weight, qbinom_deriv(n, m, l),
                       static_cast<std::size_t>(z) * m);
  }
  return acc;
}

namespace {

// Gap-free cyclotomic scan. Phi_m | p forces phi(m) <= deg(p), and
// phi(m) >= sqrt(m/2), so once m exceeds 2*deg^2 no further index can
// divide; indices with phi(m) beyond the remaining degree are skipped
// without building Phi_m.
template <class P, class DivTry>
void strip_cyclotomics(P& value, std::map<unsigned, unsigned>& exps,
                       DivTry try_divide) {
  for (unsigned long long m = 1;; ++m) {
    const std::size_t deg = *value.degree();
    if (deg == 0 || m > 2ull * deg * deg) break;
    if (euler_phi(static_cast<unsigned>(m)) > deg) continue;
    unsigned e = 0;
    while (try_divide(value, static_cast<unsigned>(m))) ++e;
    if (e > 0) exps[static_cast<unsigned>(m)] = e;
  }
}

}  // namespace

FactorReport factor_report(const BigPoly& p,
                           std::map<unsigned, unsigned> predicted) {
  if (p.is_zero_poly()) {
    throw ZeroPolynomial("factor_report is undefined for the zero polynomial");
  }
  FactorReport report;
  report.predicted = std::move(predicted);
  BigPoly value = p;
  if (sign(value.leading()) < 0) {
    report.unit = -1;
    value = -value;
  }
  report.qpower = static_cast<unsigned>(*value.low_degree());
  value = shift_down(value, report.qpower);
  strip_cyclotomics(value, report.cyclo_exponents,
                    [](BigPoly& v, unsigned m) {
    const BigPoly& phi = cyclotomic(m);
    if (*v.degree() < *phi.degree()) return false;
    auto [q, r] = divmod_monic(v, phi);
    if (!r.is_zero_poly()) return false;
    v = std::move(q);
    return true;
  });
  report.residual = std::move(value);
  return report;
}

FactorReport factor_report(const CycPoly& p,
                           std::map<unsigned, unsigned> predicted) {
  if (p.is_zero_poly()) {
    throw ZeroPolynomial("factor_report is undefined for the zero polynomial");
  }
  bool integral = true;
  for (const CycElem& e : p.coeffs()) {
    if (!e.is_integer()) {
      integral = false;
      break;
    }
  }
  if (integral) return factor_report(cpoly_to_bigpoly(p), std::move(predicted));

  FactorReport report;
  report.predicted = std::move(predicted);
  report.residual_is_integer = false;
  CycPoly value = p;
  report.qpower = static_cast<unsigned>(*value.low_degree());
  value = shift_down(value, report.qpower);
  RingCtxPtr ctx = cpoly_ctx(value);
  strip_cyclotomics(value, report.cyclo_exponents,
                    [&](CycPoly& v, unsigned m) {
    const CycPoly phi = embed(ctx, cyclotomic(m));
    if (*v.degree() < *phi.degree()) return false;
    auto [q, r] = divmod_monic(v, phi);
    if (!r.is_zero_poly()) return false;
    v = std::move(q);
    return true;
  });
  report.residual_cyc = std::move(value);
  return report;
}

}  // namespace qfleck
