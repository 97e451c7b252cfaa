/*
  Test-side oracles: independent routes to values the library computes.
  Everything here stays deliberately naive (BFS, brute force, direct
  formulas) and must not share code with the implementation paths it checks.
*/
#ifndef QSV_TESTS_ORACLES_HPP
#define QSV_TESTS_ORACLES_HPP

#include <map>
#include <set>
#include <vector>

#include "qsv/affine_weyl.hpp"
#include "qsv/exact_poly.hpp"
#include "qsv/kl.hpp"

namespace oracles {

using namespace qsv;

// Cayley-graph distances from the identity out to the given radius,
// computed by plain BFS over generator multiplication.  Uses only mult()
// and key(), never the length function under test.
inline std::map<CoordVec, long long> bfs_distances(const AffineGroup& g,
                                                   long long radius) {
  std::map<CoordVec, long long> dist;
  std::vector<AffineElement> frontier{g.identity()};
  dist[g.key(g.identity())] = 0;
  for (long long d = 1; d <= radius; ++d) {
    std::vector<AffineElement> next;
    for (const AffineElement& w : frontier) {
      for (int i = 0; i <= g.roots().rank(); ++i) {
        AffineElement v = g.mult(w, g.generator(i));
        if (dist.emplace(g.key(v), d).second) next.push_back(v);
      }
    }
    frontier = std::move(next);
  }
  return dist;
}

inline std::vector<AffineElement> bfs_elements(const AffineGroup& g,
                                               long long radius) {
  std::set<CoordVec> seen;
  std::vector<AffineElement> out{g.identity()};
  seen.insert(g.key(g.identity()));
  std::vector<AffineElement> frontier = out;
  for (long long d = 1; d <= radius; ++d) {
    std::vector<AffineElement> next;
    for (const AffineElement& w : frontier)
      for (int i = 0; i <= g.roots().rank(); ++i) {
        AffineElement v = g.mult(w, g.generator(i));
        if (seen.insert(g.key(v)).second) next.push_back(v);
      }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

// Subword criterion for the Bruhat order: the lower cone of w is the set
// of products of subsequences of any fixed reduced word of w.
inline bool subword_leq(const AffineGroup& g, const AffineElement& y,
                        const AffineElement& w) {
  std::vector<int> word = g.reduced_word(w);
  std::map<CoordVec, AffineElement> cone;
  cone.emplace(g.key(g.identity()), g.identity());
  for (int s : word) {
    std::vector<AffineElement> grown;
    for (const auto& [k, x] : cone) grown.push_back(g.mult(x, g.generator(s)));
    for (AffineElement& x : grown) cone.emplace(g.key(x), std::move(x));
  }
  return cone.count(g.key(y)) > 0;
}

// Classical Weyl dimension: prod <lambda+rho, alpha^vee> / prod <rho, alpha^vee>.
inline Int weyl_dimension_product(const RootSystem& rs, const Weight& la) {
  Int num = 1, den = 1;
  Weight rho = rs.rho();
  Weight shifted = la;
  for (auto& c : shifted.fw) c += 1;
  for (const Root& alpha : rs.positive_roots()) {
    num *= Int(rs.pairing(shifted, alpha));
    den *= Int(rs.pairing(rho, alpha));
  }
  if (num % den != 0) return Int(-1);  // not a Weyl dimension: flag loudly
  return num / den;
}

// --- Hecke-algebra check of the Kazhdan-Lusztig table --------------------
//
// The KL basis element C'_w = v^{-l(w)} sum_y P_{y,w}(v^2) T_y is the unique
// bar-invariant element with that triangular shape, so bar-invariance of
// the sum assembled from the computed table certifies the whole table up
// to l(w).  Coefficients live in Z[v, v^-1]; bar sends v to v^-1.

struct HeckeVec {
  std::vector<std::pair<AffineElement, LaurentPoly>> terms;
};

inline void hvec_add(const AffineGroup& g, HeckeVec& a, const AffineElement& x,
                     const LaurentPoly& c) {
  if (c.is_zero()) return;
  for (auto& [e, coeff] : a.terms)
    if (g.key(e) == g.key(x)) {
      coeff += c;
      return;
    }
  a.terms.emplace_back(x, c);
}

inline HeckeVec hvec_mult_gen(const AffineGroup& g, const HeckeVec& a, int s,
                              bool inverse) {
  const LaurentPoly q = LaurentPoly::monomial(1, 2);
  const LaurentPoly qi = LaurentPoly::monomial(1, -2);
  const LaurentPoly one = LaurentPoly::one();
  HeckeVec out;
  for (const auto& [x, c] : a.terms) {
    AffineElement xs = g.mult(x, g.generator(s));
    bool up = g.length(xs) > g.length(x);
    if (!inverse) {
      if (up) {
        hvec_add(g, out, xs, c);
      } else {
        // T_x T_s = (q-1) T_x + q T_{xs}
        hvec_add(g, out, x, c * (q - one));
        hvec_add(g, out, xs, c * q);
      }
    } else {
      if (!up) {
        hvec_add(g, out, xs, c);
      } else {
        // T_x T_s^{-1} = q^{-1} T_{xs} - (1 - q^{-1}) T_x
        hvec_add(g, out, x, c * (qi - one));
        hvec_add(g, out, xs, c * qi);
      }
    }
  }
  return out;
}

inline LaurentPoly bar_poly(const LaurentPoly& f) {
  LaurentPoly out;
  for (const auto& [e, c] : f.terms())
    out += LaurentPoly::monomial(c, -e);
  return out;
}

// bar(T_y) expanded in the T-basis: multiply out T_{s_1}^{-1} ... T_{s_k}^{-1}
// along a reduced word of y.
inline HeckeVec bar_T(const AffineGroup& g, const AffineElement& y) {
  HeckeVec out;
  out.terms.emplace_back(g.identity(), LaurentPoly::one());
  for (int s : g.reduced_word(y)) out = hvec_mult_gen(g, out, s, true);
  return out;
}

// Substitute q = v^2 into a KL polynomial.
inline LaurentPoly kl_to_v(const KLPoly& p) {
  LaurentPoly out;
  for (std::size_t i = 0; i < p.coeffs.size(); ++i)
    if (p.coeffs[i] != 0)
      out += LaurentPoly::monomial(p.coeffs[i], 2 * static_cast<long long>(i));
  return out;
}

// Assemble C'_w from the computed table and test bar-invariance.
inline bool kl_basis_bar_invariant(KLTable& klt, const AffineElement& w) {
  const AffineGroup& g = klt.group();
  long long lw = g.length(w);
  const LaurentPoly vminus = LaurentPoly::monomial(1, -lw);
  const LaurentPoly vplus = LaurentPoly::monomial(1, lw);

  HeckeVec cw;          // v^{-l(w)} sum P_{y,w}(v^2) T_y
  HeckeVec barred;      // bar of the same
  for (const AffineElement& y : bfs_elements(g, lw)) {
    if (!g.bruhat_leq(y, w)) continue;
    LaurentPoly p = kl_to_v(klt.kl(y, w));
    hvec_add(g, cw, y, p * vminus);
    HeckeVec bt = bar_T(g, y);
    LaurentPoly pb = bar_poly(p * vminus);
    for (const auto& [x, c] : bt.terms) hvec_add(g, barred, x, c * pb);
  }
  // compare
  if (cw.terms.size() != barred.terms.size()) return false;
  for (const auto& [x, c] : cw.terms) {
    bool matched = false;
    for (const auto& [x2, c2] : barred.terms)
      if (g.key(x) == g.key(x2)) {
        if (!(c == c2)) return false;
        matched = true;
        break;
      }
    if (!matched) return false;
  }
  return true;
}

}  // namespace oracles

#endif  // QSV_TESTS_ORACLES_HPP
