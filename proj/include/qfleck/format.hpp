#pragma once

#include <string>
#include <string_view>

#include "qfleck/cycring.hpp"
#include "qfleck/poly.hpp"

namespace qfleck {

// Text form shared by files, golden data and the CLI: terms joined by +/-,
// each term [coeff][*][var[^exp]], whitespace ignored. Printing is descending
// in the main variable; parse(print(p)) == p.
std::string to_string(const BigPoly& p, char var = 'q');
BigPoly parse_bigpoly(std::string_view text, char var = 'q');

// Extension with zeta coefficients written in terms of `z`, e.g.
// "(1+z)*q^2-z^3*q+2". Powers of z are reduced into the ambient context.
std::string to_string(const CycPoly& p, char var = 'q');
CycPoly parse_cycpoly(std::string_view text, const RingCtxPtr& ctx,
                      char var = 'q');

std::string to_string(const CycElem& e);

}  // namespace qfleck
