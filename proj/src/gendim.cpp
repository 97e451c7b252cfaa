#include "qsv/gendim.hpp"

#include <algorithm>

namespace qsv {

namespace {

Weight shifted(const Weight& la) {
  Weight mu = la;
  for (auto& c : mu.fw) c += 1;
  return mu;
}

Int factorial(int s) {
  Int f = 1;
  for (int i = 2; i <= s; ++i) f *= i;
  return f;
}

}  // namespace

LaurentPoly d_poly(const RootSystem& rs, const Weight& la) {
  Weight mu = shifted(la);
  LaurentPoly prod = LaurentPoly::one();
  for (const Root& alpha : rs.positive_roots()) {
    long long e = static_cast<long long>(rs.d_of(alpha)) * rs.pairing(mu, alpha);
    prod = prod * (LaurentPoly::monomial(1, e) - LaurentPoly::monomial(1, -e));
  }
  return prod;
}

LaurentPoly weyl_generic_dim(const RootSystem& rs, const Weight& la) {
  detail::require(rs.is_dominant(la),
                  "weyl_generic_dim: weight must be dominant");
  auto q = exact_div(d_poly(rs, la), d_poly(rs, Weight{CoordVec(rs.rank(), 0)}));
  detail::ensure(q.has_value(), "D_0 must divide D_lambda for dominant lambda");
  return *q;
}

CharacterCombination irreducible_character(KLTable& klt, const Weight& la) {
  const AffineGroup& G = klt.group();
  const RootSystem& rs = G.roots();
  detail::require(rs.is_dominant(la),
                  "irreducible_character: weight must be dominant");
  rs.validate_ell(G.level(), ParamMode::Quantum);

  CharacterCombination out;
  out.lambda = la;
  out.reduction = G.reduce_to_fundamental(la);
  const AffineElement& w = out.reduction.w;
  long long lw = G.length(w);

  // ch L(lambda) = sum over minimal coset representatives y <= w with
  // y . lambda^- dominant of (-1)^(l(w)-l(y)) P^{I,-1}_{y,w}(1) ch Delta.
  auto reps = G.dominant_coset_reps(out.reduction.lambda_minus,
                                    out.reduction.stabilizer, lw);
  for (const AffineElement& y : reps) {
    Weight mu = G.dot(y, out.reduction.lambda_minus);
    if (!rs.is_dominant(mu)) continue;
    if (!G.bruhat_leq(y, w)) continue;
    KLPoly p = klt.parabolic(out.reduction.stabilizer, y, w);
    long long m = p.eval_one();
    if (m == 0) continue;
    CharacterTerm term;
    term.sign = (lw - G.length(y)) % 2 == 0 ? 1 : -1;
    term.multiplicity = m;
    term.weight = std::move(mu);
    out.terms.push_back(std::move(term));
  }
  detail::ensure(!out.terms.empty() && out.terms.back().weight == la &&
                     out.terms.back().sign == 1 &&
                     out.terms.back().multiplicity == 1,
                 "head term of the character combination must be +Delta(lambda)");
  return out;
}

LaurentPoly irreducible_generic_dim(KLTable& klt, const Weight& la) {
  const RootSystem& rs = klt.group().roots();
  CharacterCombination comb = irreducible_character(klt, la);
  LaurentPoly sum;
  for (const CharacterTerm& t : comb.terms) {
    LaurentPoly g = weyl_generic_dim(rs, t.weight) * Int(t.multiplicity);
    if (t.sign > 0)
      sum += g;
    else
      sum -= g;
  }
  detail::ensure(sum.eval_one() > 0,
                 "irreducible generic dimension must be positive at t = 1");
  return sum;
}

CyclotomicInt wall_product(const AffineGroup& group,
                           const Weight& lambda_minus) {
  const RootSystem& rs = group.roots();
  long long ell = group.level();
  Weight mu = shifted(lambda_minus);
  CyclotomicInt prod = CyclotomicInt::from_int(ell, 1);
  for (const Root& alpha : rs.positive_roots()) {
    Coord pair = rs.pairing(mu, alpha);
    if (pair % ell == 0) continue;  // alpha in Phi_{lambda^-}
    long long e = static_cast<long long>(rs.d_of(alpha)) * pair;
    prod = prod * (CyclotomicInt::zeta_power(ell, e) -
                   CyclotomicInt::zeta_power(ell, -e));
  }
  return prod;
}

CyclotomicInt closed_form_derivative_at_zeta(const AffineGroup& group,
                                             const Weight& la) {
  const RootSystem& rs = group.roots();
  long long ell = group.level();
  detail::require(rs.is_dominant(la), "weight must be dominant");

  AlcoveReduction red = group.reduce_to_fundamental(la);
  Weight mu = shifted(la);

  // Scalar part: s! times the product of 2 d_alpha <lambda+rho, alpha^vee>
  // over the walls through lambda, each carrying one zeta^-1.
  int s = 0;
  Int scalar = 1;
  for (const Root& alpha : rs.positive_roots()) {
    Coord pair = rs.pairing(mu, alpha);
    if (pair % ell != 0) continue;
    ++s;
    scalar *= Int(2) * rs.d_of(alpha) * pair;
  }
  scalar *= factorial(s);

  long long sign_exp = group.length(red.w) - red.a_count;
  if (sign_exp % 2 != 0) scalar = -scalar;

  CyclotomicInt value = CyclotomicInt::zeta_power(ell, -s) * scalar;
  value = value * wall_product(group, red.lambda_minus);
  detail::ensure(!value.is_zero(),
                 "closed form for the derivative at zeta evaluated to zero");
  return value;
}

DerivativeCertificate verify_derivative_formula(const AffineGroup& group,
                                                const Weight& la) {
  const RootSystem& rs = group.roots();
  long long ell = group.level();
  DerivativeCertificate cert{la, 0, CyclotomicInt(ell), CyclotomicInt(ell)};
  cert.s = static_cast<int>(rs.phi_lambda(la, ell).positive.size());
  cert.lhs = eval_at_zeta(derivative(d_poly(rs, la), cert.s), ell);
  cert.rhs = closed_form_derivative_at_zeta(group, la);
  cert.equal = cert.lhs == cert.rhs;
  cert.nonzero = !cert.lhs.is_zero();
  return cert;
}

MultiplicityReport multiplicity_and_complexity(KLTable& klt,
                                               const Weight& la) {
  const AffineGroup& G = klt.group();
  const RootSystem& rs = G.roots();
  long long ell = G.level();

  CharacterCombination comb = irreducible_character(klt, la);

  // f = D_0 * dim_t L(lambda) = signed sum of the D_mu over the combination.
  LaurentPoly f;
  for (const CharacterTerm& t : comb.terms) {
    LaurentPoly g = d_poly(rs, t.weight) * Int(t.multiplicity);
    if (t.sign > 0)
      f += g;
    else
      f -= g;
  }
  detail::ensure(!f.is_zero(), "D_0 * dim_t L vanished");

  MultiplicityReport rep;
  rep.lambda = la;
  rep.s = static_cast<int>(
      rs.phi_lambda(comb.reduction.lambda_minus, ell).positive.size());
  rep.n = psi_multiplicity(f, ell);
  rep.derivative_nonzero =
      !eval_at_zeta(derivative(f, rep.s), ell).is_zero();
  rep.borel_bound = static_cast<long long>(rs.num_positive()) - rep.s;
  rep.support_dimension =
      static_cast<long long>(rs.num_roots()) - 2 * rep.s;
  if (!rep.ok())
    rep.message = "multiplicity of the cyclotomic factor (" +
                  std::to_string(rep.n) + ") differs from |Phi^+_{lambda^-}| (" +
                  std::to_string(rep.s) + ")";
  return rep;
}

bool s_invariance_check(const AffineGroup& group, const Weight& lambda_minus,
                        const std::vector<AffineElement>& sample) {
  const RootSystem& rs = group.roots();
  long long ell = group.level();
  detail::require(group.in_fundamental_closure(lambda_minus),
                  "s_invariance_check: weight not in the fundamental domain");
  std::size_t s = rs.phi_lambda(lambda_minus, ell).positive.size();
  for (const AffineElement& y : sample) {
    Weight mu = group.dot(y, lambda_minus);
    if (rs.phi_lambda(mu, ell).positive.size() != s) return false;
  }
  return true;
}

}  // namespace qsv
