#include "qsv/exact_poly.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>
#include <unordered_map>

namespace qsv {

namespace {

// Dense ordinary polynomial, constant term first.  Internal helper for
// division and reduction; the public types stay sparse/canonical.
using Dense = std::vector<Int>;

Dense to_dense(const LaurentPoly& f) {
  // caller guarantees min_exp() >= 0
  Dense d(static_cast<std::size_t>(f.max_exp()) + 1);
  for (const auto& [e, c] : f.terms()) d[static_cast<std::size_t>(e)] = c;
  return d;
}

void trim(Dense& d) {
  while (!d.empty() && d.back() == 0) d.pop_back();
}

// Exact division over Z: returns quotient if g | f, nullopt otherwise.
std::optional<Dense> dense_exact_div(Dense f, const Dense& g) {
  if (f.empty()) return Dense{};
  if (f.size() < g.size()) return std::nullopt;
  const Int& lead = g.back();
  Dense q(f.size() - g.size() + 1);
  for (std::size_t i = q.size(); i-- > 0;) {
    Int c = f[i + g.size() - 1];
    if (c == 0) continue;
    if (c % lead != 0) return std::nullopt;
    Int qi = c / lead;
    q[i] = qi;
    for (std::size_t j = 0; j < g.size(); ++j) f[i + j] -= qi * g[j];
  }
  trim(f);
  if (!f.empty()) return std::nullopt;
  return q;
}

// Remainder of f modulo a monic polynomial m (in place).
void reduce_mod_monic(Dense& f, const Dense& m) {
  trim(f);
  while (f.size() >= m.size()) {
    Int c = f.back();
    std::size_t shift = f.size() - m.size();
    for (std::size_t j = 0; j < m.size(); ++j) f[shift + j] -= c * m[j];
    trim(f);
  }
}

const Dense& psi_coeffs(long long ell) {
  static std::mutex mu;
  static std::unordered_map<long long, Dense> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(ell);
  if (it == cache.end()) {
    LaurentPoly psi = cyclotomic(ell);
    it = cache.emplace(ell, to_dense(psi)).first;
  }
  return it->second;
}

std::string monomial_str(const Int& c, long long e, const char* var,
                         bool first) {
  std::ostringstream os;
  Int a = c;
  if (a < 0) {
    os << (first ? "-" : " - ");
    a = -a;
  } else if (!first) {
    os << " + ";
  }
  if (a != 1 || e == 0) os << a.str();
  if (e != 0) {
    if (a != 1) os << "*";
    os << var;
    if (e != 1) os << "^" << e;
  }
  return os.str();
}

}  // namespace

LaurentPoly LaurentPoly::monomial(Int coeff, long long exp) {
  LaurentPoly p;
  p.set(exp, std::move(coeff));
  return p;
}

void LaurentPoly::set(long long exp, Int c) {
  if (c == 0)
    terms_.erase(exp);
  else
    terms_[exp] = std::move(c);
}

Int LaurentPoly::coeff(long long exp) const {
  auto it = terms_.find(exp);
  return it == terms_.end() ? Int(0) : it->second;
}

long long LaurentPoly::min_exp() const {
  detail::require(!terms_.empty(), "min_exp of zero polynomial");
  return terms_.begin()->first;
}

long long LaurentPoly::max_exp() const {
  detail::require(!terms_.empty(), "max_exp of zero polynomial");
  return terms_.rbegin()->first;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.terms_) set(e, coeff(e) + c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.terms_) set(e, coeff(e) - c);
  return *this;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  LaurentPoly r = *this;
  r += o;
  return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const {
  LaurentPoly r = *this;
  r -= o;
  return r;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r;
  for (const auto& [e, c] : terms_) r.terms_[e] = -c;
  return r;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  LaurentPoly r;
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) r.set(e1 + e2, r.coeff(e1 + e2) + c1 * c2);
  return r;
}

LaurentPoly LaurentPoly::operator*(const Int& k) const {
  LaurentPoly r;
  if (k == 0) return r;
  for (const auto& [e, c] : terms_) r.terms_[e] = c * k;
  return r;
}

Int LaurentPoly::eval_one() const {
  Int s = 0;
  for (const auto& [e, c] : terms_) s += c;
  return s;
}

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    out += monomial_str(it->second, it->first, "t", first);
    first = false;
  }
  return out;
}

LaurentPoly cyclotomic(long long ell) {
  detail::require(ell >= 1, "cyclotomic: ell must be >= 1");
  // Psi_ell = (t^ell - 1) / prod_{d | ell, d < ell} Psi_d
  LaurentPoly num = LaurentPoly::monomial(1, ell) - LaurentPoly::one();
  for (long long d = 1; d < ell; ++d) {
    if (ell % d != 0) continue;
    auto q = exact_div(num, cyclotomic(d));
    detail::ensure(q.has_value(), "cyclotomic: division failed");
    num = *q;
  }
  return num;
}

LaurentPoly derivative(const LaurentPoly& f, int s) {
  detail::require(s >= 0, "derivative: order must be >= 0");
  LaurentPoly g = f;
  for (int k = 0; k < s; ++k) {
    LaurentPoly h;
    for (const auto& [e, c] : g.terms_)
      if (e != 0) h.terms_[e - 1] = c * e;
    g = std::move(h);
  }
  return g;
}

std::optional<LaurentPoly> exact_div(const LaurentPoly& f,
                                     const LaurentPoly& g) {
  detail::require(!g.is_zero(), "exact_div: division by zero");
  if (f.is_zero()) return LaurentPoly::zero();
  // Units of Z[t,t^-1] are +-t^k: shift both operands to ordinary
  // polynomials with nonzero constant term, divide over Z[t], shift back.
  long long fshift = f.min_exp();
  long long gshift = g.min_exp();
  LaurentPoly fn, gn;
  for (const auto& [e, c] : f.terms()) fn.terms_[e - fshift] = c;
  for (const auto& [e, c] : g.terms()) gn.terms_[e - gshift] = c;
  auto q = dense_exact_div(to_dense(fn), to_dense(gn));
  if (!q) return std::nullopt;
  LaurentPoly out;
  for (std::size_t i = 0; i < q->size(); ++i)
    if ((*q)[i] != 0)
      out.terms_[static_cast<long long>(i) + fshift - gshift] = (*q)[i];
  return out;
}

int psi_multiplicity(const LaurentPoly& f, long long ell) {
  detail::require(!f.is_zero(), "psi_multiplicity: undefined for f = 0");
  LaurentPoly psi = cyclotomic(ell);
  LaurentPoly cur = f;
  int m = 0;
  while (true) {
    auto q = exact_div(cur, psi);
    if (!q) break;
    cur = *q;
    ++m;
  }
  return m;
}

CyclotomicInt::CyclotomicInt(long long ell) : ell_(ell) {
  detail::require(ell >= 1, "CyclotomicInt: ell must be >= 1");
  coeffs_.assign(psi_coeffs(ell).size() - 1, Int(0));
}

CyclotomicInt CyclotomicInt::from_int(long long ell, Int value) {
  // deg Psi_ell = phi(ell) >= 1, so constants always fit.
  CyclotomicInt r(ell);
  r.coeffs_[0] = std::move(value);
  return r;
}

CyclotomicInt CyclotomicInt::zeta_power(long long ell, long long k) {
  LaurentPoly t = LaurentPoly::monomial(1, ((k % ell) + ell) % ell);
  return eval_at_zeta(t, ell);
}

bool CyclotomicInt::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](const Int& c) { return c == 0; });
}

CyclotomicInt CyclotomicInt::operator+(const CyclotomicInt& o) const {
  detail::require(ell_ == o.ell_, "CyclotomicInt: level mismatch");
  CyclotomicInt r(ell_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    r.coeffs_[i] = coeffs_[i] + o.coeffs_[i];
  return r;
}

CyclotomicInt CyclotomicInt::operator-(const CyclotomicInt& o) const {
  detail::require(ell_ == o.ell_, "CyclotomicInt: level mismatch");
  CyclotomicInt r(ell_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    r.coeffs_[i] = coeffs_[i] - o.coeffs_[i];
  return r;
}

CyclotomicInt CyclotomicInt::operator-() const {
  CyclotomicInt r(ell_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = -coeffs_[i];
  return r;
}

CyclotomicInt CyclotomicInt::operator*(const CyclotomicInt& o) const {
  detail::require(ell_ == o.ell_, "CyclotomicInt: level mismatch");
  if (coeffs_.empty()) return CyclotomicInt(ell_);
  Dense prod(2 * coeffs_.size(), Int(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
      prod[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  reduce_mod_monic(prod, psi_coeffs(ell_));
  CyclotomicInt r(ell_);
  for (std::size_t i = 0; i < prod.size(); ++i) r.coeffs_[i] = prod[i];
  return r;
}

CyclotomicInt CyclotomicInt::operator*(const Int& k) const {
  CyclotomicInt r(ell_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = coeffs_[i] * k;
  return r;
}

bool CyclotomicInt::operator==(const CyclotomicInt& o) const {
  return ell_ == o.ell_ && coeffs_ == o.coeffs_;
}

std::string CyclotomicInt::to_string() const {
  bool all_zero = true;
  std::string out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    out += monomial_str(coeffs_[i], static_cast<long long>(i), "z", all_zero);
    all_zero = false;
  }
  return all_zero ? "0" : out;
}

CyclotomicInt eval_at_zeta(const LaurentPoly& f, long long ell) {
  detail::require(ell >= 1, "eval_at_zeta: ell must be >= 1");
  // t^ell = 1 in the quotient, so exponents reduce mod ell first.
  Dense acc(static_cast<std::size_t>(ell), Int(0));
  for (const auto& [e, c] : f.terms())
    acc[static_cast<std::size_t>(((e % ell) + ell) % ell)] += c;
  reduce_mod_monic(acc, psi_coeffs(ell));
  CyclotomicInt r(ell);
  for (std::size_t i = 0; i < acc.size(); ++i) r.coeffs_[i] = acc[i];
  return r;
}

}  // namespace qsv
