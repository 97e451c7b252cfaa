/*
  Ordinary and parabolic Kazhdan-Lusztig polynomials over the affine Weyl
  group, with a memo table that can be exported/imported for persistence.

  The ordinary P_{y,w} follow the classical recursion (descent step plus
  mu-correction), normalized so P_{w,w} = 1 and P_{y,w} = 0 unless y <= w.
  The parabolic P^{I,-1}_{y,w} are computed by Deodhar's alternating sum
  over the finite parabolic subgroup W_I; their coefficients are checked
  nonnegative on every computation.
*/
#ifndef QSV_KL_HPP
#define QSV_KL_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <unordered_map>
#include <vector>

#include "qsv/affine_weyl.hpp"

namespace qsv {

// Polynomial in q with integer coefficients, constant term first.
struct KLPoly {
  std::vector<long long> coeffs;

  static KLPoly zero() { return {}; }
  static KLPoly one() { return {{1}}; }

  bool is_zero() const { return coeffs.empty(); }
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  long long coeff(int k) const {
    return (k >= 0 && k < static_cast<int>(coeffs.size())) ? coeffs[k] : 0;
  }
  long long eval_one() const;
  void add_shifted(const KLPoly& other, int shift, long long scale = 1);
  void normalize();  // drop trailing zeros
  bool operator==(const KLPoly& o) const { return coeffs == o.coeffs; }
};

class KLTable {
 public:
  // max_length caps l(w); computations past it raise CapacityError rather
  // than silently truncating.
  explicit KLTable(std::shared_ptr<AffineGroup> group,
                   long long max_length = 14);

  const AffineGroup& group() const { return *group_; }
  std::shared_ptr<AffineGroup> group_ptr() const { return group_; }
  long long max_length() const { return max_length_; }

  // Ordinary Kazhdan-Lusztig polynomial P_{y,w}.
  KLPoly kl(const AffineElement& y, const AffineElement& w);

  // Parabolic polynomial P^{I,-1}_{y,w} for y, w minimal in their
  // W_I-cosets; I given as generator indices (0 = affine).
  KLPoly parabolic(const std::vector<int>& I, const AffineElement& y,
                   const AffineElement& w);

  struct Stats {
    std::uint64_t hits = 0;
    std::uint64_t computed = 0;
    std::uint64_t loaded = 0;
  };
  const Stats& stats() const { return stats_; }
  void clear();

  // Persistence hooks: the memoized ordinary polynomials as plain data.
  struct Entry {
    AffineElement y;
    AffineElement w;
    KLPoly p;
  };
  std::vector<Entry> export_entries() const;
  void import_entry(const AffineElement& y, const AffineElement& w,
                    KLPoly p);
  void merge_from(const KLTable& other);

 private:
  KLPoly kl_inner(const AffineElement& y, const AffineElement& w);
  CoordVec pair_key(const AffineElement& y, const AffineElement& w) const;
  const std::vector<AffineElement>& subgroup(const std::vector<int>& I);

  std::shared_ptr<AffineGroup> group_;
  long long max_length_;
  std::unordered_map<CoordVec, KLPoly, detail::CoordVecHash> memo_;
  std::vector<Entry> entries_;  // memo contents in insertion order
  std::map<std::vector<int>, std::vector<AffineElement>> subgroups_;
  Stats stats_;
};

}  // namespace qsv

#endif  // QSV_KL_HPP
