#pragma once

#include "qfleck/poly.hpp"

namespace qfleck {

// Gaussian binomial coefficient, built by the Pascal recursion
//   C(n+1,m)_q = q^m C(n,m)_q + C(n,m-1)_q
// and memoized process-wide (symmetry folds the table onto m <= n/2). No
// rational arithmetic is ever involved; the product-formula construction
// exists only in tests, as an independent oracle. Out-of-range m gives the
// zero polynomial. The returned reference stays valid for the life of the
// process.
const BigPoly& qbinom(unsigned n, long m);

// l-fold formal derivative of qbinom(n, m).
BigPoly qbinom_deriv(unsigned n, long m, unsigned l);

// Ordinary binomial coefficient; 0 out of range.
BigInt int_binom(unsigned n, long m);

}  // namespace qfleck
