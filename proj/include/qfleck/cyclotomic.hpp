#pragma once

#include "qfleck/poly.hpp"

namespace qfleck {

// n-th cyclotomic polynomial, computed by exact divide-down of q^n - 1 by the
// proper-divisor cyclotomics and memoized process-wide. The returned reference
// stays valid for the life of the process (the cache is append-only).
const BigPoly& cyclotomic(unsigned n);

// Euler totient by trial factorization.
unsigned euler_phi(unsigned n);

// Largest e with Phi_m(q)^e | p; ZeroPolynomial when p = 0.
unsigned phi_valuation(const BigPoly& p, unsigned m);

}  // namespace qfleck
