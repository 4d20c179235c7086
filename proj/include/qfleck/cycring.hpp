#pragma once

#include <memory>
#include <vector>

#include "qfleck/cyclotomic.hpp"
#include "qfleck/poly.hpp"

namespace qfleck {

// The ring Z[zeta_2c], modeled as Z[x] / Phi_2c(x). Exact by construction;
// divisibility statements about these elements are certificates, which rules
// out any floating-point representation of the root of unity.
class RingCtx {
 public:
  explicit RingCtx(unsigned c);

  unsigned c() const { return c_; }
  unsigned dim() const { return dim_; }
  const BigPoly& reduction() const { return reduction_; }

  // Coordinates of zeta^e for e in [0, 2c).
  const std::vector<BigInt>& zeta_power(unsigned e) const {
    return zeta_powers_[e];
  }

 private:
  unsigned c_;
  unsigned dim_;
  BigPoly reduction_;  // Phi_2c(x), monic of degree dim_
  std::vector<std::vector<BigInt>> zeta_powers_;
};

using RingCtxPtr = std::shared_ptr<const RingCtx>;

// Memoized context factory; contexts are immutable and shared freely.
RingCtxPtr ctx_new(unsigned c);

// An element of Z[zeta_2c]: coordinates over the power basis 1, zeta, ...,
// zeta^(dim-1). A default-constructed element is the zero of every context;
// it acquires a context the first time it meets a typed value.
class CycElem {
 public:
  CycElem() = default;
  CycElem(RingCtxPtr ctx, BigInt value);
  CycElem(RingCtxPtr ctx, std::vector<BigInt> coords);

  const RingCtxPtr& ctx() const { return ctx_; }
  const std::vector<BigInt>& coords() const { return coords_; }

  bool is_integer() const;
  // The coordinate of 1 when all zeta-components vanish; NotRational
  // otherwise.
  BigInt to_integer() const;

  CycElem operator-() const;
  CycElem& operator+=(const CycElem& rhs);
  CycElem& operator-=(const CycElem& rhs);
  friend CycElem operator+(CycElem a, const CycElem& b) { return a += b; }
  friend CycElem operator-(CycElem a, const CycElem& b) { return a -= b; }
  friend CycElem operator*(const CycElem& a, const CycElem& b);
  friend CycElem operator*(const CycElem& a, const BigInt& s);
  friend CycElem operator*(const CycElem& a, long s);
  friend bool operator==(const CycElem& a, const CycElem& b);
  friend bool operator!=(const CycElem& a, const CycElem& b) {
    return !(a == b);
  }

 private:
  RingCtxPtr ctx_;               // null for the universal zero
  std::vector<BigInt> coords_;   // size ctx_->dim() when ctx_ is set
};

bool is_zero(const CycElem& a);
bool is_one(const CycElem& a);

// zeta_2c^e, for any integer e (reduced mod 2c first).
CycElem zeta_pow(const RingCtxPtr& ctx, long e);

CycElem elem_add(const CycElem& a, const CycElem& b);
CycElem elem_mul(const CycElem& a, const CycElem& b);

// Polynomials in q over Z[zeta_2c]; the same dense type also carries the
// integer-argument polynomials P(x) that weight the sums.
using CycPoly = Poly<CycElem>;
using XPoly = Poly<CycElem>;

// Image of an integer polynomial in Z[zeta_2c][q].
CycPoly embed(const RingCtxPtr& ctx, const BigPoly& p);

// Inverse of embed; NotRational if any coefficient has a zeta-component.
BigPoly cpoly_to_bigpoly(const CycPoly& p);

CycPoly cpoly_add(const CycPoly& a, const CycPoly& b);
CycPoly cpoly_mul(const CycPoly& a, const CycPoly& b);
CycPoly cpoly_derivative(const CycPoly& a, unsigned order = 1);

// Exact quotient by a monic integer polynomial; NotDivisible if any remainder
// coefficient is nonzero.
CycPoly cpoly_divexact_int(const CycPoly& a, const BigPoly& b);

// Largest e with Phi_m(q)^e | a over Z[zeta_2c][q]; ZeroPolynomial on a = 0.
unsigned cpoly_phi_valuation(const CycPoly& a, unsigned m);

// Context shared by the coefficients of p, or null for the zero polynomial.
RingCtxPtr cpoly_ctx(const CycPoly& p);

}  // namespace qfleck
