/*
  Simple root systems of rank <= 8: roots, coroots, pairings, heights, the
  finite Weyl group, and the normalization data (d_alpha, rho, Coxeter
  number, bad primes) everything downstream is built on.

  Conventions.  Weights are integer vectors in the fundamental-weight basis
  (coords[i] = <lambda, alpha_i^vee>); roots are integer vectors in the
  simple-root basis.  The inner product is normalized so <alpha,alpha> = 2
  for short roots, making d_alpha = <alpha,alpha>/2 land in {1,2,3}.  All
  arithmetic is exact.
*/
#ifndef QSV_ROOT_SYSTEM_HPP
#define QSV_ROOT_SYSTEM_HPP

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qsv/common.hpp"

namespace qsv {

// Weight lattice element, fundamental-weight coordinates.
struct Weight {
  CoordVec fw;
  bool operator==(const Weight& o) const { return fw == o.fw; }
  bool operator!=(const Weight& o) const { return fw != o.fw; }
  bool operator<(const Weight& o) const { return fw < o.fw; }
};

// Root lattice element, simple-root coordinates.
struct Root {
  CoordVec sr;
  bool operator==(const Root& o) const { return sr == o.sr; }
  bool operator!=(const Root& o) const { return sr != o.sr; }
  bool operator<(const Root& o) const { return sr < o.sr; }
};

// Finite Weyl group element as exact matrices on the weight and root
// lattices (column-vector convention).  Composition and inversion never
// leave integer arithmetic; equality and hashing use the weight action.
class WeylElement {
 public:
  WeylElement() = default;

  int rank() const { return static_cast<int>(wt_.size()); }
  bool is_identity() const;

  WeylElement operator*(const WeylElement& o) const;  // apply o first
  WeylElement inverse() const;
  bool operator==(const WeylElement& o) const { return wt_ == o.wt_; }
  bool operator!=(const WeylElement& o) const { return !(*this == o); }
  bool operator<(const WeylElement& o) const { return wt_ < o.wt_; }

  Weight apply(const Weight& la) const;
  Root apply(const Root& r) const;
  Root apply_inverse(const Root& r) const;

  // Flattened weight-action matrix; canonical form for memo keys.
  CoordVec key() const;

 private:
  friend class RootSystem;
  // n x n integer matrices: action on fw coords, its inverse, action on
  // sr coords, its inverse.
  std::vector<CoordVec> wt_, wt_inv_, rt_, rt_inv_;
};

// Phi_lambda = {alpha : <lambda+rho, alpha^vee> = 0 mod ell}, stored by its
// positive part (the set is stable under negation).
struct PhiSubset {
  std::vector<Root> positive;
  std::size_t size() const { return 2 * positive.size(); }
  std::vector<Root> all() const;
  bool contains_positive(const Root& r) const;
};

class RootSystem : public std::enable_shared_from_this<RootSystem> {
 public:
  // Valid simple types: A(n>=1), B(n>=2), C(n>=2), D(n>=4), E(6..8),
  // F(4), G(2); rank capped at 8.
  static std::shared_ptr<const RootSystem> build(char type_label, int rank);

  char type_label() const { return type_; }
  int rank() const { return rank_; }
  std::string name() const;  // e.g. "B2"

  // --- static tables ---------------------------------------------------
  const std::vector<Root>& positive_roots() const { return positive_; }
  std::size_t num_positive() const { return positive_.size(); }
  std::size_t num_roots() const { return 2 * positive_.size(); }
  Root simple_root(int i) const;  // 0-based
  const Root& highest_short_root() const { return positive_[alpha0_]; }
  Weight rho() const;
  int coxeter_number() const { return coxeter_; }
  const std::set<long long>& bad_primes() const { return bad_primes_; }
  unsigned long long weyl_order() const { return weyl_order_; }
  // Cartan matrix entry <alpha_j, alpha_i^vee>.
  Coord cartan(int i, int j) const { return cartan_[i][j]; }
  int d_of_simple(int i) const { return d_[i]; }

  bool is_root(const Root& r) const;
  bool is_positive_root(const Root& r) const;
  int d_of(const Root& r) const;  // <alpha,alpha>/2 in {1,2,3}

  // --- pairings and heights ---------------------------------------------
  Coord pairing(const Weight& la, const Root& alpha) const;  // <la,alpha^vee>
  Coord pairing(const Root& beta, const Root& alpha) const;  // <beta,alpha^vee>
  Coord height(const Root& r) const;
  Coord height(const Weight& la) const;  // rejects la outside Q
  // 2*wht(lambda); wht itself is a half-integer.
  Coord twice_weighted_height(const Weight& la) const;

  // --- basis conversions -------------------------------------------------
  Weight fw_of_root(const Root& r) const;
  // Simple-root coordinates of a weight, if it lies in the root lattice.
  std::optional<Root> root_coords(const Weight& la) const;

  bool is_dominant(const Weight& la) const;

  // --- finite Weyl group -------------------------------------------------
  WeylElement identity() const;
  WeylElement simple_reflection(int i) const;  // 0-based
  WeylElement reflection(const Root& beta) const;
  int length(const WeylElement& w) const;  // inversion count
  // Canonical reduced word (0-based letters), greedy lowest descent.
  std::vector<int> word(const WeylElement& w) const;
  WeylElement from_word(const std::vector<int>& word) const;
  WeylElement longest_element() const;
  // Full enumeration of W; throws CapacityError past the desk-scale cap.
  const std::vector<WeylElement>& all_elements() const;

  // --- wall systems ---------------------------------------------------
  PhiSubset phi_lambda(const Weight& la, long long ell) const;

  // Empty when (ell, mode) satisfies the standing hypotheses: ell odd,
  // ell > h, coprime to all bad primes, and prime in modular mode.
  std::vector<std::string> ell_violations(long long ell, ParamMode mode) const;
  void validate_ell(long long ell, ParamMode mode) const;

 private:
  RootSystem() = default;
  void check_rank(const Weight& la) const;
  void check_rank(const Root& r) const;

  char type_ = '?';
  int rank_ = 0;
  std::vector<CoordVec> cartan_;       // cartan_[i][j] = <alpha_j, alpha_i^vee>
  std::vector<int> d_;                 // symmetrizer, min-normalized
  std::vector<Root> positive_;         // sorted by (height, coords)
  std::vector<CoordVec> coroot_fw_;    // coroot of positive_[k] in the
                                       // simple-coroot basis: pairing with a
                                       // weight is a plain dot product
  std::vector<int> d_alpha_;           // d of positive_[k]
  std::vector<Coord> height_;          // height of positive_[k]
  std::map<CoordVec, int> pos_index_;  // sr coords -> index into positive_
  int alpha0_ = -1;                    // index of the highest short root
  int coxeter_ = 0;
  std::set<long long> bad_primes_;
  unsigned long long weyl_order_ = 0;
  std::vector<CoordVec> adj_cartan_;  // adjugate of the Cartan matrix ...
  Coord det_cartan_ = 0;              // ... and its determinant (for Q tests)
  mutable std::vector<WeylElement> all_elements_;  // lazy, built once
  mutable std::mutex enum_mutex_;                  // guards the lazy build
};

}  // namespace qsv

#endif  // QSV_ROOT_SYSTEM_HPP
