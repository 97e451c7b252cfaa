/*
  The affine Weyl group W_ell = Q x| W acting on the weight lattice at level
  ell: elements, length, dot action, reduction into the closure of the
  antidominant alcove, minimal dominant representatives, stabilizers, and
  Chevalley-Bruhat order.

  An element is the pair (theta, x) standing for t_{ell*theta} x.  The
  Coxeter generators are s_{alpha_1}, ..., s_{alpha_n} together with the
  affine reflection s_{alpha_0,-1} in the wall <x, alpha_0^vee> = -ell
  (alpha_0 the highest short root); generator indices follow the CLI
  convention 0 = affine, 1..n = simple.
*/
#ifndef QSV_AFFINE_WEYL_HPP
#define QSV_AFFINE_WEYL_HPP

#include <memory>
#include <unordered_map>
#include <vector>

#include "qsv/root_system.hpp"

namespace qsv {

struct AffineElement {
  CoordVec theta;  // translation part t_{ell*theta}, simple-root coords
  WeylElement x;   // finite part
  long long level = 0;

  bool operator==(const AffineElement& o) const {
    return level == o.level && theta == o.theta && x == o.x;
  }
  bool operator!=(const AffineElement& o) const { return !(*this == o); }
};

// Result of walking a dominant weight into the fundamental domain:
// w . lambda_minus = lambda with w minimal dominant, I the stabilizer
// generators of lambda_minus, and a_count the number of walls of
// Phi^+_{lambda^-} sitting at pairing exactly -ell.
struct AlcoveReduction {
  Weight lambda_minus;
  AffineElement w;
  std::vector<int> stabilizer;  // generator indices (0 = affine)
  int a_count = 0;
};

class AffineGroup {
 public:
  AffineGroup(std::shared_ptr<const RootSystem> rs, long long ell);

  AffineGroup(const AffineGroup&) = delete;
  AffineGroup& operator=(const AffineGroup&) = delete;

  const RootSystem& roots() const { return *rs_; }
  std::shared_ptr<const RootSystem> roots_ptr() const { return rs_; }
  long long level() const { return ell_; }
  int num_generators() const { return rs_->rank() + 1; }

  AffineElement identity() const;
  // i = 0 is the affine generator, i = 1..n the simple reflections.
  const AffineElement& generator(int i) const;

  AffineElement mult(const AffineElement& a, const AffineElement& b) const;
  AffineElement inverse(const AffineElement& a) const;
  AffineElement from_word(const std::vector<int>& word) const;
  // Canonical reduced word by greedy lowest-index right descent.
  std::vector<int> reduced_word(const AffineElement& a) const;

  // w . lambda = x(lambda + rho) + ell*theta - rho
  Weight dot(const AffineElement& a, const Weight& la) const;

  // Iwahori-Matsumoto style hyperplane count; agrees with Cayley-graph
  // distance over the generators (checked exhaustively in the tests).
  long long length(const AffineElement& a) const;
  bool is_identity(const AffineElement& a) const;

  // Memo key: level is fixed per group, so (theta, weight matrix) suffices.
  CoordVec key(const AffineElement& a) const;

  // Right descent set as generator indices.
  std::vector<int> right_descents(const AffineElement& a) const;
  int lowest_right_descent(const AffineElement& a) const;   // -1 if identity
  int lowest_left_descent(const AffineElement& a) const;    // -1 if identity

  // Chevalley-Bruhat order via the lifting property, memoized.
  bool bruhat_leq(const AffineElement& y, const AffineElement& w) const;

  // BFS enumeration of the Cayley ball, lazily extended and cached; each
  // layer holds the elements of one exact length, sorted by canonical key.
  void ensure_ball(long long radius) const;
  const std::vector<AffineElement>& layer(long long k) const;
  std::vector<AffineElement> ball(long long radius) const;

  // Finite parabolic subgroup <I>; rejects I = full generator set.
  std::vector<AffineElement> parabolic_subgroup(
      const std::vector<int>& I) const;

  // True iff l(ys) > l(y) for every s in I (y minimal in its coset y W_I).
  bool is_minimal_in_coset(const AffineElement& y,
                           const std::vector<int>& I) const;

  // All minimal coset representatives of length <= max_length, lengths
  // weakly increasing.  lambda_minus must lie in the closed antidominant
  // alcove and I inside its stabilizer.
  std::vector<AffineElement> dominant_coset_reps(const Weight& lambda_minus,
                                                 const std::vector<int>& I,
                                                 long long max_length) const;

  // Walk a dominant weight to its fundamental-domain representative and
  // return the minimal dominant element over it.
  AlcoveReduction reduce_to_fundamental(const Weight& la) const;

  bool in_fundamental_closure(const Weight& la) const;
  // Pairings <la + rho, alpha^vee> over the positive roots.
  std::vector<Coord> shifted_pairings(const Weight& la) const;

 private:
  void check(const AffineElement& a) const;
  AffineElement mult_gen(const AffineElement& a, int i) const;  // a * s_i
  AffineElement gen_mult(int i, const AffineElement& a) const;  // s_i * a
  long long separation_count(const Weight& la) const;

  std::shared_ptr<const RootSystem> rs_;
  long long ell_;
  std::vector<AffineElement> gens_;
  mutable std::unordered_map<CoordVec, bool, detail::CoordVecHash>
      bruhat_memo_;
  mutable std::vector<std::vector<AffineElement>> layers_;  // layers_[k]: l = k
  mutable std::unordered_map<CoordVec, long long, detail::CoordVecHash>
      ball_seen_;
};

}  // namespace qsv

#endif  // QSV_AFFINE_WEYL_HPP
