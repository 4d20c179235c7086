#include "qfleck/format.hpp"

#include <cctype>
#include <map>
#include <sstream>

namespace qfleck {

namespace {

constexpr std::size_t kMaxExponent = 1u << 20;

struct Lexer {
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
    }
  }

  bool done() {
    skip_ws();
    return pos >= text.size();
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  bool accept(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }

  bool peek_digit() {
    return std::isdigit(static_cast<unsigned char>(peek())) != 0;
  }

  BigInt read_integer() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      ++pos;
    }
    if (pos == start) throw ParseError("expected an integer near position " + std::to_string(pos));
    return BigInt(std::string(text.substr(start, pos - start)));
  }

  std::size_t read_exponent() {
    BigInt e = read_integer();
    if (e < 0 || e > static_cast<long>(kMaxExponent)) {
      throw ParseError("exponent out of range");
    }
    return static_cast<std::size_t>(e.get_ui());
  }
};

// One parsed term: integer factor, zeta factor (optional), variable exponent.
struct Term {
  BigInt coeff = 1;
  CycElem zfactor;  // null when absent
  bool has_z = false;
  std::size_t exp = 0;
};

// Parses atom ('*'? atom)* where atoms are integers, z-powers, parenthesized
// z-polynomials, or var-powers. The '*' is optional except between two
// integers. `ctx` null means plain integer mode (z and parentheses rejected).
Term parse_term(Lexer& lx, const RingCtxPtr& ctx, char var, bool allow_paren) {
  Term t;
  bool any_atom = false;
  while (true) {
    char c = lx.peek();
    bool via_star = false;
    if (any_atom && c == '*') {
      ++lx.pos;
      c = lx.peek();
      via_star = true;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      if (any_atom && !via_star) break;
      t.coeff *= lx.read_integer();
    } else if (c == var) {
      ++lx.pos;
      std::size_t e = 1;
      if (lx.accept('^')) e = lx.read_exponent();
      t.exp += e;
    } else if (c == 'z' && ctx) {
      ++lx.pos;
      std::size_t e = 1;
      if (lx.accept('^')) e = lx.read_exponent();
      CycElem zp = zeta_pow(ctx, static_cast<long>(e));
      t.zfactor = t.has_z ? t.zfactor * zp : zp;
      t.has_z = true;
    } else if (c == '(' && ctx && allow_paren) {
      ++lx.pos;
      // A polynomial in z with integer coefficients, evaluated at zeta.
      CycElem value(ctx, BigInt(0));
      bool first = true;
      while (true) {
        char s = lx.peek();
        int sign = 1;
        if (s == '+' || s == '-') {
          ++lx.pos;
          sign = (s == '-') ? -1 : 1;
        } else if (!first) {
          break;
        }
        Term inner = parse_term(lx, ctx, 'z', false);
        CycElem piece = inner.has_z ? inner.zfactor * (inner.coeff * sign)
                                    : CycElem(ctx, inner.coeff * sign);
        // 'z' is the variable inside parentheses; inner.exp counts z's.
        if (inner.exp > 0) {
          piece = piece * zeta_pow(ctx, static_cast<long>(inner.exp));
        }
        value += piece;
        first = false;
      }
      if (!lx.accept(')')) throw ParseError("expected ')'");
      t.zfactor = t.has_z ? t.zfactor * value : value;
      t.has_z = true;
    } else {
      if (via_star) throw ParseError("dangling '*' near position " + std::to_string(lx.pos));
      break;
    }
    any_atom = true;
  }
  if (!any_atom) {
    throw ParseError("expected a term near position " + std::to_string(lx.pos));
  }
  return t;
}

template <class Coeff, class MakeCoeff>
std::vector<Coeff> parse_terms(std::string_view text, const RingCtxPtr& ctx,
                               char var, MakeCoeff make) {
  Lexer lx{text};
  std::map<std::size_t, Coeff> acc;
  bool first = true;
  while (!lx.done()) {
    char c = lx.peek();
    int sign = 1;
    if (c == '+' || c == '-') {
      ++lx.pos;
      sign = (c == '-') ? -1 : 1;
    } else if (!first) {
      throw ParseError("expected '+' or '-' near position " + std::to_string(lx.pos));
    }
    Term t = parse_term(lx, ctx, var, true);
    acc[t.exp] += make(t, sign);
    first = false;
  }
  if (first) throw ParseError("empty polynomial text");
  std::vector<Coeff> coeffs;
  if (!acc.empty()) {
    coeffs.resize(acc.rbegin()->first + 1);
    for (auto& [e, v] : acc) coeffs[e] = std::move(v);
  }
  return coeffs;
}

void append_int_coeff(std::string& out, const BigInt& v, std::size_t exp,
                      bool first, char var) {
  const bool neg = sign(v) < 0;
  BigInt mag = abs(v);
  if (first) {
    if (neg) out += '-';
  } else {
    out += neg ? '-' : '+';
  }
  if (exp == 0) {
    out += mag.get_str();
    return;
  }
  if (!is_one(mag)) {
    out += mag.get_str();
    out += '*';
  }
  out += var;
  if (exp > 1) {
    out += '^';
    out += std::to_string(exp);
  }
}

// Ascending polynomial in z with integer coefficients, e.g. "1+z-2*z^3".
std::string zpoly_text(const std::vector<BigInt>& coords) {
  std::string out;
  bool first = true;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (is_zero(coords[i])) continue;
    append_int_coeff(out, coords[i], i, first, 'z');
    first = false;
  }
  return first ? "0" : out;
}

}  // namespace

std::string to_string(const BigPoly& p, char var) {
  if (p.is_zero_poly()) return "0";
  std::string out;
  bool first = true;
  for (std::size_t i = p.coeffs().size(); i-- > 0;) {
    const BigInt& v = p.coeffs()[i];
    if (is_zero(v)) continue;
    append_int_coeff(out, v, i, first, var);
    first = false;
  }
  return out;
}

BigPoly parse_bigpoly(std::string_view text, char var) {
  auto coeffs = parse_terms<BigInt>(
      text, nullptr, var,
      [](const Term& t, int sign) { return BigInt(t.coeff * sign); });
  return BigPoly(std::move(coeffs));
}

std::string to_string(const CycElem& e) {
  if (is_zero(e)) return "0";
  if (e.is_integer()) return e.to_integer().get_str();
  return "(" + zpoly_text(e.coords()) + ")";
}

std::string to_string(const CycPoly& p, char var) {
  if (p.is_zero_poly()) return "0";
  std::string out;
  bool first = true;
  for (std::size_t i = p.coeffs().size(); i-- > 0;) {
    const CycElem& e = p.coeffs()[i];
    if (is_zero(e)) continue;
    if (e.is_integer()) {
      append_int_coeff(out, e.to_integer(), i, first, var);
      first = false;
      continue;
    }
    // Count nonzero coordinates to pick a monomial or parenthesized form.
    std::size_t nonzero = 0, idx = 0;
    for (std::size_t k = 0; k < e.coords().size(); ++k) {
      if (!is_zero(e.coords()[k])) {
        ++nonzero;
        idx = k;
      }
    }
    if (nonzero == 1) {
      const BigInt& v = e.coords()[idx];
      const bool neg = sign(v) < 0;
      BigInt mag = abs(v);
      if (first) {
        if (neg) out += '-';
      } else {
        out += neg ? '-' : '+';
      }
      if (!is_one(mag)) {
        out += mag.get_str();
        out += '*';
      }
      out += 'z';
      if (idx > 1) {
        out += '^';
        out += std::to_string(idx);
      }
      if (i > 0) {
        out += '*';
        out += var;
        if (i > 1) {
          out += '^';
          out += std::to_string(i);
        }
      }
    } else {
      if (!first) out += '+';
      out += '(';
      out += zpoly_text(e.coords());
      out += ')';
      if (i > 0) {
        out += '*';
        out += var;
        if (i > 1) {
          out += '^';
          out += std::to_string(i);
        }
      }
    }
    first = false;
  }
  return out;
}

CycPoly parse_cycpoly(std::string_view text, const RingCtxPtr& ctx, char var) {
  auto coeffs = parse_terms<CycElem>(text, ctx, var, [&](const Term& t, int sign) {
    CycElem base = t.has_z ? t.zfactor : CycElem(ctx, BigInt(1));
    return base * (t.coeff * sign);
  });
  return CycPoly(std::move(coeffs));
}

}  // namespace qfleck
