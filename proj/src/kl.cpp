#include "qsv/kl.hpp"

#include <algorithm>

namespace qsv {

long long KLPoly::eval_one() const {
  long long s = 0;
  for (long long c : coeffs) s += c;
  return s;
}

void KLPoly::add_shifted(const KLPoly& other, int shift, long long scale) {
  if (other.is_zero() || scale == 0) return;
  if (static_cast<int>(coeffs.size()) < static_cast<int>(other.coeffs.size()) + shift)
    coeffs.resize(other.coeffs.size() + shift, 0);
  for (std::size_t i = 0; i < other.coeffs.size(); ++i)
    coeffs[i + shift] += scale * other.coeffs[i];
  normalize();
}

void KLPoly::normalize() {
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
}

KLTable::KLTable(std::shared_ptr<AffineGroup> group, long long max_length)
    : group_(std::move(group)), max_length_(max_length) {
  detail::require(max_length_ >= 0, "KLTable: max_length must be >= 0");
}

CoordVec KLTable::pair_key(const AffineElement& y,
                           const AffineElement& w) const {
  CoordVec k = group_->key(y);
  k.push_back(static_cast<Coord>(0x7fffffff));
  CoordVec wk = group_->key(w);
  k.insert(k.end(), wk.begin(), wk.end());
  return k;
}

void KLTable::clear() {
  memo_.clear();
  entries_.clear();
  stats_ = Stats{};
}

KLPoly KLTable::kl(const AffineElement& y, const AffineElement& w) {
  long long lw = group_->length(w);
  if (lw > max_length_)
    throw CapacityError("KL computation needs l(w) = " + std::to_string(lw) +
                        " > configured cap " + std::to_string(max_length_));
  return kl_inner(y, w);
}

KLPoly KLTable::kl_inner(const AffineElement& y, const AffineElement& w) {
  const AffineGroup& G = *group_;
  long long ly = G.length(y), lw = G.length(w);
  if (ly > lw) return KLPoly::zero();
  if (y == w) return KLPoly::one();
  if (ly == lw) return KLPoly::zero();
  if (!G.bruhat_leq(y, w)) return KLPoly::zero();

  CoordVec mk = pair_key(y, w);
  auto it = memo_.find(mk);
  if (it != memo_.end()) {
    ++stats_.hits;
    return it->second;
  }

  // Classical recursion on a left descent s of w, with v = sw:
  //   P_{y,w} = q^(1-c) P_{sy,v} + q^c P_{y,v}
  //           - sum_{z: sz<z, y<=z<v} mu(z,v) q^((l(w)-l(z))/2) P_{y,z},
  // where c = 1 if sy < y and 0 otherwise.
  int s = G.lowest_left_descent(w);
  detail::ensure(s >= 0, "kl: w has no descent");
  AffineElement v = G.mult(G.generator(s), w);
  AffineElement sy = G.mult(G.generator(s), y);
  int c = G.length(sy) < ly ? 1 : 0;

  KLPoly p;
  p.add_shifted(kl_inner(sy, v), 1 - c);
  p.add_shifted(kl_inner(y, v), c);

  long long lv = lw - 1;
  G.ensure_ball(lv > 0 ? lv - 1 : 0);
  for (long long lz = ly; lz < lv; ++lz) {
    if ((lv - lz) % 2 == 0) continue;  // mu vanishes by the degree bound
    for (const AffineElement& z : G.layer(lz)) {
      if (G.length(G.mult(G.generator(s), z)) >= lz) continue;  // need sz < z
      if (!G.bruhat_leq(y, z) || !G.bruhat_leq(z, v)) continue;
      KLPoly pzv = kl_inner(z, v);
      long long mu = pzv.coeff(static_cast<int>((lv - lz - 1) / 2));
      if (mu == 0) continue;
      p.add_shifted(kl_inner(y, z), static_cast<int>((lw - lz) / 2), -mu);
    }
  }

  // Triangularity invariants of the KL basis.
  detail::ensure(!p.is_zero() && p.coeffs[0] == 1,
                 "KL polynomial must have constant term 1 for y <= w");
  detail::ensure(2 * p.degree() <= lw - ly - 1,
                 "KL polynomial exceeds its degree bound");
  ++stats_.computed;
  if (memo_.emplace(std::move(mk), p).second)
    entries_.push_back(Entry{y, w, p});
  return p;
}

const std::vector<AffineElement>& KLTable::subgroup(
    const std::vector<int>& I) {
  std::vector<int> key = I;
  std::sort(key.begin(), key.end());
  key.erase(std::unique(key.begin(), key.end()), key.end());
  auto it = subgroups_.find(key);
  if (it == subgroups_.end())
    it = subgroups_.emplace(key, group_->parabolic_subgroup(key)).first;
  return it->second;
}

KLPoly KLTable::parabolic(const std::vector<int>& I, const AffineElement& y,
                          const AffineElement& w) {
  const AffineGroup& G = *group_;
  detail::require(G.is_minimal_in_coset(y, I),
                  "parabolic KL: y is not minimal in its coset");
  detail::require(G.is_minimal_in_coset(w, I),
                  "parabolic KL: w is not minimal in its coset");
  long long lw = G.length(w);
  if (lw > max_length_)
    throw CapacityError("KL computation needs l(w) = " + std::to_string(lw) +
                        " > configured cap " + std::to_string(max_length_));
  if (!G.bruhat_leq(y, w)) return KLPoly::zero();

  // P^{I,-1}_{y,w} = sum over x in W_I with yx <= w of (-1)^l(x) P_{yx,w}
  KLPoly p;
  for (const AffineElement& x : subgroup(I)) {
    long long lx = G.length(x);
    AffineElement yx = G.mult(y, x);
    detail::ensure(G.length(yx) == G.length(y) + lx,
                   "coset representative is not length-additive");
    if (G.length(yx) > lw || !G.bruhat_leq(yx, w)) continue;
    p.add_shifted(kl_inner(yx, w), 0, lx % 2 == 0 ? 1 : -1);
  }
  for (long long c : p.coeffs)
    detail::ensure(c >= 0, "parabolic KL coefficient is negative");
  return p;
}

std::vector<KLTable::Entry> KLTable::export_entries() const { return entries_; }

void KLTable::import_entry(const AffineElement& y, const AffineElement& w,
                           KLPoly p) {
  if (memo_.emplace(pair_key(y, w), p).second) {
    entries_.push_back(Entry{y, w, std::move(p)});
    ++stats_.loaded;
  }
}

void KLTable::merge_from(const KLTable& other) {
  for (const auto& e : other.entries_)
    if (memo_.emplace(pair_key(e.y, e.w), e.p).second)
      entries_.push_back(e);
}

}  // namespace qsv
