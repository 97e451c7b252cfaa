/*
  Generic dimensions: the Laurent polynomial D_lambda(t), Weyl and
  irreducible generic dimensions, the closed form for the s-th derivative
  of D_lambda at the root of unity, and the multiplicity bookkeeping that
  feeds the support-variety dimension bound.
*/
#ifndef QSV_GENDIM_HPP
#define QSV_GENDIM_HPP

#include <string>
#include <vector>

#include "qsv/exact_poly.hpp"
#include "qsv/kl.hpp"

namespace qsv {

// Signed combination  sum_i sign_i * mult_i * ch Delta(weight_i)  of Weyl
// characters, as produced by the irreducible character formula.
struct CharacterTerm {
  int sign = 1;            // +1 or -1
  long long multiplicity = 0;  // parabolic KL value at 1, > 0
  Weight weight;           // dominant
};

struct CharacterCombination {
  Weight lambda;
  AlcoveReduction reduction;
  std::vector<CharacterTerm> terms;
};

// D_lambda(t) = prod over positive alpha of
//   (t^(d_alpha <lambda+rho, alpha^vee>) - t^(-d_alpha <lambda+rho, alpha^vee>))
LaurentPoly d_poly(const RootSystem& rs, const Weight& la);

// D_lambda / D_0, the generic dimension of a module with Weyl character
// chi(lambda); its value at t = 1 is the classical Weyl dimension.
LaurentPoly weyl_generic_dim(const RootSystem& rs, const Weight& la);

// ch L(lambda) as a signed sum of Weyl characters at linked dominant
// weights, via the parabolic Kazhdan-Lusztig values at 1.
CharacterCombination irreducible_character(KLTable& klt, const Weight& la);

// Generic dimension of the irreducible module: the signed sum of Weyl
// generic dimensions over the character combination.
LaurentPoly irreducible_generic_dim(KLTable& klt, const Weight& la);

// The closed-form value of the s-th derivative of D_lambda at zeta,
// s = |Phi^+_lambda|, assembled from the alcove reduction of lambda:
//   (-1)^(l(w) - a) * s! * prod over Phi^+_lambda of
//   2 d_alpha <lambda+rho, alpha^vee> zeta^-1 * E_{lambda^-}(zeta).
CyclotomicInt closed_form_derivative_at_zeta(const AffineGroup& group,
                                             const Weight& la);

// E_{lambda^-}(zeta): product of (zeta^e - zeta^-e) over positive roots
// outside Phi_{lambda^-}, with e = d_alpha <lambda^- + rho, alpha^vee>.
CyclotomicInt wall_product(const AffineGroup& group, const Weight& lambda_minus);

struct DerivativeCertificate {
  Weight lambda;
  int s = 0;                 // |Phi^+_lambda|
  CyclotomicInt lhs;         // eval at zeta of the s-th derivative of D_lambda
  CyclotomicInt rhs;         // closed form
  bool equal = false;
  bool nonzero = false;
  bool pass() const { return equal && nonzero; }
};

// Compare both routes to the s-th derivative at zeta; exact, no tolerance.
DerivativeCertificate verify_derivative_formula(const AffineGroup& group,
                                                const Weight& la);

struct MultiplicityReport {
  Weight lambda;
  int s = 0;                    // |Phi^+_{lambda^-}|
  int n = 0;                    // multiplicity of Psi_ell in D_0 * dim_t L
  bool derivative_nonzero = false;  // f^(s)(zeta) != 0
  long long borel_bound = 0;        // |Phi^+| - s
  long long support_dimension = 0;  // |Phi| - |Phi_{lambda^-}|
  bool ok() const { return n == s && derivative_nonzero; }
  std::string message;
};

// Multiplicity of the cyclotomic factor in f = D_0 * dim_t L(lambda) and
// the derived dimension bounds.  n != s is reported, not thrown: it would
// falsify the formula at this instance.
MultiplicityReport multiplicity_and_complexity(KLTable& klt, const Weight& la);

// True iff |Phi^+_{y . lambda_minus}| is constant over the sample and
// equals |Phi^+_{lambda_minus}|.
bool s_invariance_check(const AffineGroup& group, const Weight& lambda_minus,
                        const std::vector<AffineElement>& sample);

}  // namespace qsv

#endif  // QSV_GENDIM_HPP
