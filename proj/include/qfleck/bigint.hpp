#pragma once

#include <gmpxx.h>

#include <string>

#include "qfleck/errors.hpp"

namespace qfleck {

// Unbounded signed integer. GMP carries the sign-magnitude representation and
// the arithmetic; everything in this library that is worth testing sits above
// this layer.
using BigInt = mpz_class;

inline bool is_zero(const BigInt& v) { return sgn(v) == 0; }
inline bool is_one(const BigInt& v) { return v == 1; }

// -1, 0, +1
inline int sign(const BigInt& v) { return sgn(v); }

inline bool divides(const BigInt& d, const BigInt& v) {
  return mpz_divisible_p(v.get_mpz_t(), d.get_mpz_t()) != 0;
}

// Exact integer quotient; the caller must know d | v.
inline BigInt divexact_int(const BigInt& v, const BigInt& d) {
  if (!divides(d, v)) {
    throw NotDivisible("integer quotient is not exact");
  }
  BigInt q;
  mpz_divexact(q.get_mpz_t(), v.get_mpz_t(), d.get_mpz_t());
  return q;
}

inline BigInt pow_ui(const BigInt& base, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline BigInt factorial(unsigned long n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

inline std::string to_string(const BigInt& v) { return v.get_str(); }

}  // namespace qfleck
