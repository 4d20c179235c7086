#include "qfleck/cycring.hpp"

#include <map>
#include <mutex>
#include <utility>

namespace qfleck {

namespace {

// Two non-null contexts are interchangeable iff they model the same ring.
void require_same_ring(const RingCtxPtr& a, const RingCtxPtr& b) {
  if (a.get() == b.get()) return;
  if (a->c() != b->c()) {
    throw CtxMismatch("mixing elements of Z[zeta_" + std::to_string(2 * a->c()) +
                      "] and Z[zeta_" + std::to_string(2 * b->c()) + "]");
  }
}

}  // namespace

RingCtx::RingCtx(unsigned c) : c_(c) {
  if (c == 0) throw std::invalid_argument("RingCtx requires c >= 1");
  reduction_ = cyclotomic(2 * c);
  dim_ = static_cast<unsigned>(*reduction_.degree());
  // x^e mod Phi_2c(x) for e in [0, 2c): multiply by x and reduce as we go.
  zeta_powers_.reserve(2 * c);
  std::vector<BigInt> cur(dim_);
  cur[0] = 1;
  for (unsigned e = 0; e < 2 * c; ++e) {
    zeta_powers_.push_back(cur);
    // cur <- x * cur mod Phi_2c
    BigInt top = cur[dim_ - 1];
    for (unsigned i = dim_ - 1; i > 0; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    if (!is_zero(top)) {
      for (unsigned i = 0; i < dim_; ++i) {
        cur[i] -= top * reduction_.coeffs()[i];
      }
    }
  }
}

RingCtxPtr ctx_new(unsigned c) {
  static std::mutex mutex;
  static std::map<unsigned, RingCtxPtr> table;
  std::lock_guard lock(mutex);
  auto it = table.find(c);
  if (it == table.end()) {
    it = table.emplace(c, std::make_shared<RingCtx>(c)).first;
  }
  return it->second;
}

CycElem::CycElem(RingCtxPtr ctx, BigInt value) : ctx_(std::move(ctx)) {
  coords_.assign(ctx_->dim(), BigInt(0));
  coords_[0] = std::move(value);
}

CycElem::CycElem(RingCtxPtr ctx, std::vector<BigInt> coords)
    : ctx_(std::move(ctx)), coords_(std::move(coords)) {
  if (coords_.size() != ctx_->dim()) {
    throw std::invalid_argument("CycElem coordinate count must equal dim");
  }
}

bool CycElem::is_integer() const {
  for (std::size_t i = 1; i < coords_.size(); ++i) {
    if (!qfleck::is_zero(coords_[i])) return false;
  }
  return true;
}

BigInt CycElem::to_integer() const {
  if (!is_integer()) {
    throw NotRational("element has a nonzero zeta-component");
  }
  return coords_.empty() ? BigInt(0) : coords_[0];
}

CycElem CycElem::operator-() const {
  if (!ctx_) return {};
  std::vector<BigInt> c(coords_.size());
  for (std::size_t i = 0; i < coords_.size(); ++i) c[i] = -coords_[i];
  return CycElem(ctx_, std::move(c));
}

CycElem& CycElem::operator+=(const CycElem& rhs) {
  if (!rhs.ctx_) return *this;
  if (!ctx_) {
    *this = rhs;
    return *this;
  }
  require_same_ring(ctx_, rhs.ctx_);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += rhs.coords_[i];
  return *this;
}

CycElem& CycElem::operator-=(const CycElem& rhs) {
  if (!rhs.ctx_) return *this;
  if (!ctx_) {
    *this = -rhs;
    return *this;
  }
  require_same_ring(ctx_, rhs.ctx_);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= rhs.coords_[i];
  return *this;
}

CycElem operator*(const CycElem& a, const CycElem& b) {
  if (!a.ctx_ || !b.ctx_) return {};
  require_same_ring(a.ctx_, b.ctx_);
  const RingCtx& ring = *a.ctx_;
  const unsigned dim = ring.dim();
  // Convolve, then fold each power x^e (e < 2*dim - 1 <= 2c) back onto the
  // basis via the precomputed reduced powers.
  std::vector<BigInt> conv(2 * dim - 1);
  for (unsigned i = 0; i < dim; ++i) {
    if (is_zero(a.coords_[i])) continue;
    for (unsigned j = 0; j < dim; ++j) {
      conv[i + j] += a.coords_[i] * b.coords_[j];
    }
  }
  std::vector<BigInt> out(dim);
  for (unsigned e = 0; e < conv.size(); ++e) {
    if (is_zero(conv[e])) continue;
    if (e < dim) {
      out[e] += conv[e];
    } else {
      const std::vector<BigInt>& pw = ring.zeta_power(e);
      for (unsigned i = 0; i < dim; ++i) out[i] += conv[e] * pw[i];
    }
  }
  return CycElem(a.ctx_, std::move(out));
}

CycElem operator*(const CycElem& a, const BigInt& s) {
  if (!a.ctx_ || is_zero(s)) return a.ctx_ ? CycElem(a.ctx_, BigInt(0)) : CycElem{};
  std::vector<BigInt> c(a.coords_.size());
  for (std::size_t i = 0; i < a.coords_.size(); ++i) c[i] = a.coords_[i] * s;
  return CycElem(a.ctx_, std::move(c));
}

CycElem operator*(const CycElem& a, long s) { return a * BigInt(s); }

bool operator==(const CycElem& a, const CycElem& b) {
  if (!a.ctx_ && !b.ctx_) return true;
  if (!a.ctx_) return is_zero(b);
  if (!b.ctx_) return is_zero(a);
  require_same_ring(a.ctx_, b.ctx_);
  return a.coords_ == b.coords_;
}

bool is_zero(const CycElem& a) {
  for (const BigInt& v : a.coords()) {
    if (!is_zero(v)) return false;
  }
  return true;
}

bool is_one(const CycElem& a) {
  if (!a.ctx()) return false;
  if (!is_one(a.coords()[0])) return false;
  for (std::size_t i = 1; i < a.coords().size(); ++i) {
    if (!is_zero(a.coords()[i])) return false;
  }
  return true;
}

CycElem zeta_pow(const RingCtxPtr& ctx, long e) {
  const long period = 2L * ctx->c();
  long r = e % period;
  if (r < 0) r += period;
  return CycElem(ctx, ctx->zeta_power(static_cast<unsigned>(r)));
}

CycElem elem_add(const CycElem& a, const CycElem& b) { return a + b; }
CycElem elem_mul(const CycElem& a, const CycElem& b) { return a * b; }

CycPoly embed(const RingCtxPtr& ctx, const BigPoly& p) {
  std::vector<CycElem> c;
  c.reserve(p.coeffs().size());
  for (const BigInt& v : p.coeffs()) c.emplace_back(ctx, v);
  return CycPoly(std::move(c));
}

BigPoly cpoly_to_bigpoly(const CycPoly& p) {
  std::vector<BigInt> c;
  c.reserve(p.coeffs().size());
  for (const CycElem& e : p.coeffs()) c.push_back(e.to_integer());
  return BigPoly(std::move(c));
}

CycPoly cpoly_add(const CycPoly& a, const CycPoly& b) { return a + b; }
CycPoly cpoly_mul(const CycPoly& a, const CycPoly& b) { return a * b; }

CycPoly cpoly_derivative(const CycPoly& a, unsigned order) {
  return derivative(a, order);
}

RingCtxPtr cpoly_ctx(const CycPoly& p) {
  for (const CycElem& e : p.coeffs()) {
    if (e.ctx()) return e.ctx();
  }
  return nullptr;
}

CycPoly cpoly_divexact_int(const CycPoly& a, const BigPoly& b) {
  if (b.is_zero_poly() || !is_one(b.leading())) {
    throw NonMonicDivisor("integer divisor must be monic and nonzero");
  }
  RingCtxPtr ctx = cpoly_ctx(a);
  if (!ctx) return CycPoly{};
  return divexact_monic(a, embed(ctx, b));
}

unsigned cpoly_phi_valuation(const CycPoly& a, unsigned m) {
  if (a.is_zero_poly()) {
    throw ZeroPolynomial("phi_valuation is undefined for the zero polynomial");
  }
  RingCtxPtr ctx = cpoly_ctx(a);
  const CycPoly phi = embed(ctx, cyclotomic(m));
  const std::size_t dphi = *phi.degree();
  unsigned e = 0;
  CycPoly cur = a;
  while (!cur.is_zero_poly() && *cur.degree() >= dphi) {
    auto [q, r] = divmod_monic(cur, phi);
    if (!r.is_zero_poly()) break;
    ++e;
    cur = std::move(q);
  }
  return e;
}

}  // namespace qfleck
