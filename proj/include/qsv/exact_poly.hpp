/*
  Exact integer Laurent polynomials in one variable, cyclotomic polynomials,
  and the quotient ring Z[t]/Psi_ell(t) where evaluations at a primitive
  ell-th root of unity live.
*/
#ifndef QSV_EXACT_POLY_HPP
#define QSV_EXACT_POLY_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qsv/common.hpp"

namespace qsv {

// Element of Z[t, t^-1] with finite support; no zero coefficients stored.
class LaurentPoly {
 public:
  LaurentPoly() = default;

  static LaurentPoly zero() { return {}; }
  static LaurentPoly one() { return monomial(1, 0); }
  static LaurentPoly monomial(Int coeff, long long exp);

  bool is_zero() const { return terms_.empty(); }
  const std::map<long long, Int>& terms() const { return terms_; }
  Int coeff(long long exp) const;
  long long min_exp() const;  // requires nonzero
  long long max_exp() const;  // requires nonzero

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  LaurentPoly operator-() const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  LaurentPoly operator*(const Int& k) const;
  bool operator==(const LaurentPoly& o) const { return terms_ == o.terms_; }
  bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

  // Substitution t = 1 (sum of coefficients).
  Int eval_one() const;

  std::string to_string() const;

 private:
  void set(long long exp, Int c);
  std::map<long long, Int> terms_;

  friend LaurentPoly derivative(const LaurentPoly&, int);
  friend std::optional<LaurentPoly> exact_div(const LaurentPoly&,
                                              const LaurentPoly&);
};

// The ell-th cyclotomic polynomial Psi_ell, by iterated exact division of
// t^ell - 1 by the lower cyclotomics.
LaurentPoly cyclotomic(long long ell);

// Formal s-th derivative; negative exponents follow the power rule.
LaurentPoly derivative(const LaurentPoly& f, int s = 1);

// Quotient q with f = q*g when g divides f in Z[t,t^-1]; nullopt otherwise.
// Non-divisibility is a query result, not an error.  g = 0 is rejected.
std::optional<LaurentPoly> exact_div(const LaurentPoly& f,
                                     const LaurentPoly& g);

// Largest m with Psi_ell^m | f in Z[t,t^-1].  f = 0 is rejected.
int psi_multiplicity(const LaurentPoly& f, long long ell);

// Residue class in Z[t]/Psi_ell(t), kept in canonical reduced form
// (degree < deg Psi_ell).  The residue of t is the distinguished primitive
// ell-th root of unity zeta; it is a unit with inverse t^(ell-1).
class CyclotomicInt {
 public:
  explicit CyclotomicInt(long long ell);  // zero element
  static CyclotomicInt from_int(long long ell, Int value);
  // zeta^k for any integer k (k reduced mod ell).
  static CyclotomicInt zeta_power(long long ell, long long k);

  long long level() const { return ell_; }
  const std::vector<Int>& coeffs() const { return coeffs_; }
  bool is_zero() const;

  CyclotomicInt operator+(const CyclotomicInt& o) const;
  CyclotomicInt operator-(const CyclotomicInt& o) const;
  CyclotomicInt operator-() const;
  CyclotomicInt operator*(const CyclotomicInt& o) const;
  CyclotomicInt operator*(const Int& k) const;
  bool operator==(const CyclotomicInt& o) const;
  bool operator!=(const CyclotomicInt& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  long long ell_;
  std::vector<Int> coeffs_;  // length deg Psi_ell

  friend CyclotomicInt eval_at_zeta(const LaurentPoly&, long long);
};

// Ring-homomorphic image of f under t -> zeta.
CyclotomicInt eval_at_zeta(const LaurentPoly& f, long long ell);

}  // namespace qsv

#endif  // QSV_EXACT_POLY_HPP
