#include "qsv/affine_weyl.hpp"

#include <algorithm>

namespace qsv {

namespace {

constexpr std::size_t kSubgroupCap = 2000000;
constexpr std::size_t kBallCap = 5000000;

bool all_nonpos(const CoordVec& v) {
  return std::all_of(v.begin(), v.end(), [](Coord c) { return c <= 0; });
}

}  // namespace

AffineGroup::AffineGroup(std::shared_ptr<const RootSystem> rs, long long ell)
    : rs_(std::move(rs)), ell_(ell) {
  detail::require(ell_ >= 1, "AffineGroup: level must be >= 1");
  int n = rs_->rank();
  gens_.resize(n + 1);
  // s_{alpha_0,-1} = t_{-ell*alpha_0} s_{alpha_0}
  const Root& a0 = rs_->highest_short_root();
  CoordVec theta0(a0.sr.size());
  for (std::size_t i = 0; i < a0.sr.size(); ++i) theta0[i] = -a0.sr[i];
  gens_[0] = AffineElement{theta0, rs_->reflection(a0), ell_};
  for (int i = 1; i <= n; ++i)
    gens_[i] =
        AffineElement{CoordVec(n, 0), rs_->simple_reflection(i - 1), ell_};
  layers_.push_back({identity()});
  ball_seen_[key(identity())] = 0;
}

void AffineGroup::check(const AffineElement& a) const {
  detail::require(a.level == ell_, "affine element level mismatch");
  detail::require(static_cast<int>(a.theta.size()) == rs_->rank(),
                  "affine element rank mismatch");
}

AffineElement AffineGroup::identity() const {
  return AffineElement{CoordVec(rs_->rank(), 0), rs_->identity(), ell_};
}

const AffineElement& AffineGroup::generator(int i) const {
  detail::require(i >= 0 && i <= rs_->rank(),
                  "generator index out of range (0 = affine, 1..n = simple)");
  return gens_[i];
}

AffineElement AffineGroup::mult(const AffineElement& a,
                                const AffineElement& b) const {
  check(a);
  check(b);
  // t_{l theta} x . t_{l theta'} x' = t_{l(theta + x theta')} x x'
  Root xb = a.x.apply(Root{b.theta});
  CoordVec theta = a.theta;
  for (std::size_t i = 0; i < theta.size(); ++i) theta[i] += xb.sr[i];
  return AffineElement{std::move(theta), a.x * b.x, ell_};
}

AffineElement AffineGroup::inverse(const AffineElement& a) const {
  check(a);
  WeylElement xi = a.x.inverse();
  Root t = xi.apply(Root{a.theta});
  CoordVec theta(t.sr.size());
  for (std::size_t i = 0; i < t.sr.size(); ++i) theta[i] = -t.sr[i];
  return AffineElement{std::move(theta), std::move(xi), ell_};
}

AffineElement AffineGroup::mult_gen(const AffineElement& a, int i) const {
  return mult(a, generator(i));
}

AffineElement AffineGroup::gen_mult(int i, const AffineElement& a) const {
  return mult(generator(i), a);
}

AffineElement AffineGroup::from_word(const std::vector<int>& word) const {
  AffineElement w = identity();
  for (int s : word) w = mult_gen(w, s);
  return w;
}

Weight AffineGroup::dot(const AffineElement& a, const Weight& la) const {
  check(a);
  CoordVec shifted = la.fw;
  for (auto& c : shifted) c += 1;
  Weight moved = a.x.apply(Weight{shifted});
  Weight tfw = rs_->fw_of_root(Root{a.theta});
  for (int i = 0; i < rs_->rank(); ++i)
    moved.fw[i] += ell_ * tfw.fw[i] - 1;
  return moved;
}

long long AffineGroup::length(const AffineElement& a) const {
  check(a);
  // Count reflection hyperplanes <., alpha^vee> = r*ell separating the
  // fundamental (antidominant) alcove from its image under a = t_{l theta} x:
  //   sum over alpha > 0 with x^-1 alpha > 0 of |<theta, alpha^vee>|
  // + sum over alpha > 0 with x^-1 alpha < 0 of |<theta, alpha^vee> + 1|.
  Weight tfw = rs_->fw_of_root(Root{a.theta});
  long long len = 0;
  for (const Root& alpha : rs_->positive_roots()) {
    Coord m = rs_->pairing(tfw, alpha);
    bool inv = all_nonpos(a.x.apply_inverse(alpha).sr);
    long long term = inv ? m + 1 : m;
    len += term < 0 ? -term : term;
  }
  return len;
}

bool AffineGroup::is_identity(const AffineElement& a) const {
  check(a);
  return a.x.is_identity() &&
         std::all_of(a.theta.begin(), a.theta.end(),
                     [](Coord c) { return c == 0; });
}

CoordVec AffineGroup::key(const AffineElement& a) const {
  CoordVec k = a.theta;
  CoordVec xk = a.x.key();
  k.insert(k.end(), xk.begin(), xk.end());
  return k;
}

std::vector<int> AffineGroup::right_descents(const AffineElement& a) const {
  std::vector<int> out;
  long long la = length(a);
  for (int i = 0; i <= rs_->rank(); ++i)
    if (length(mult_gen(a, i)) < la) out.push_back(i);
  return out;
}

int AffineGroup::lowest_right_descent(const AffineElement& a) const {
  long long la = length(a);
  for (int i = 0; i <= rs_->rank(); ++i)
    if (length(mult_gen(a, i)) < la) return i;
  return -1;
}

int AffineGroup::lowest_left_descent(const AffineElement& a) const {
  long long la = length(a);
  for (int i = 0; i <= rs_->rank(); ++i)
    if (length(gen_mult(i, a)) < la) return i;
  return -1;
}

std::vector<int> AffineGroup::reduced_word(const AffineElement& a) const {
  std::vector<int> out;
  AffineElement cur = a;
  while (!is_identity(cur)) {
    int s = lowest_right_descent(cur);
    detail::ensure(s >= 0, "reduced_word: no descent");
    out.push_back(s);
    cur = mult_gen(cur, s);
  }
  std::reverse(out.begin(), out.end());
  return out;
}

bool AffineGroup::bruhat_leq(const AffineElement& y,
                             const AffineElement& w) const {
  check(y);
  check(w);
  long long ly = length(y), lw = length(w);
  if (ly > lw) return false;
  if (y == w) return true;
  if (ly == lw) return false;
  if (lw == 0) return is_identity(y);

  CoordVec memo_key = key(y);
  CoordVec wk = key(w);
  memo_key.push_back(static_cast<Coord>(0x7fffffff));  // separator
  memo_key.insert(memo_key.end(), wk.begin(), wk.end());
  auto it = bruhat_memo_.find(memo_key);
  if (it != bruhat_memo_.end()) return it->second;

  // Lifting property: for ws < w,  y <= w iff (ys < y ? ys <= ws : y <= ws).
  int s = lowest_right_descent(w);
  detail::ensure(s >= 0, "bruhat_leq: element of positive length without descent");
  AffineElement ws = mult_gen(w, s);
  AffineElement ys = mult_gen(y, s);
  bool result = length(ys) < ly ? bruhat_leq(ys, ws) : bruhat_leq(y, ws);
  bruhat_memo_.emplace(std::move(memo_key), result);
  return result;
}

void AffineGroup::ensure_ball(long long radius) const {
  detail::require(radius >= 0, "ball: radius must be >= 0");
  std::size_t total = 0;
  for (const auto& l : layers_) total += l.size();
  while (static_cast<long long>(layers_.size()) <= radius) {
    long long k = static_cast<long long>(layers_.size());
    std::vector<AffineElement> next;
    for (const AffineElement& w : layers_.back()) {
      for (int i = 0; i <= rs_->rank(); ++i) {
        AffineElement v = mult_gen(w, i);
        CoordVec vk = key(v);
        if (ball_seen_.count(vk)) continue;
        long long lv = length(v);
        detail::ensure(lv == k,
                       "length formula disagrees with Cayley-graph distance");
        ball_seen_.emplace(std::move(vk), k);
        next.push_back(std::move(v));
      }
    }
    std::sort(next.begin(), next.end(),
              [this](const AffineElement& a, const AffineElement& b) {
                return key(a) < key(b);
              });
    total += next.size();
    if (total > kBallCap)
      throw CapacityError("affine ball enumeration exceeds capacity");
    layers_.push_back(std::move(next));
  }
}

const std::vector<AffineElement>& AffineGroup::layer(long long k) const {
  ensure_ball(k);
  return layers_[static_cast<std::size_t>(k)];
}

std::vector<AffineElement> AffineGroup::ball(long long radius) const {
  ensure_ball(radius);
  std::vector<AffineElement> flat;
  for (long long k = 0; k <= radius; ++k)
    flat.insert(flat.end(), layers_[k].begin(), layers_[k].end());
  return flat;
}

std::vector<AffineElement> AffineGroup::parabolic_subgroup(
    const std::vector<int>& I) const {
  for (int i : I)
    detail::require(i >= 0 && i <= rs_->rank(),
                    "parabolic_subgroup: bad generator index");
  detail::require(static_cast<int>(I.size()) <= rs_->rank(),
                  "parabolic_subgroup: proper subsets of the generators only");
  std::vector<AffineElement> out{identity()};
  std::unordered_map<CoordVec, bool, detail::CoordVecHash> seen;
  seen[key(out[0])] = true;
  for (std::size_t head = 0; head < out.size(); ++head) {
    AffineElement cur = out[head];
    for (int i : I) {
      AffineElement nxt = mult_gen(cur, i);
      if (seen.emplace(key(nxt), true).second) {
        out.push_back(std::move(nxt));
        if (out.size() > kSubgroupCap)
          throw CapacityError("parabolic subgroup enumeration exceeds capacity");
      }
    }
  }
  std::sort(out.begin(), out.end(),
            [this](const AffineElement& a, const AffineElement& b) {
              long long la = length(a), lb = length(b);
              return la != lb ? la < lb : key(a) < key(b);
            });
  return out;
}

bool AffineGroup::is_minimal_in_coset(const AffineElement& y,
                                      const std::vector<int>& I) const {
  long long ly = length(y);
  for (int s : I)
    if (length(mult_gen(y, s)) < ly) return false;
  return true;
}

std::vector<Coord> AffineGroup::shifted_pairings(const Weight& la) const {
  CoordVec shifted = la.fw;
  for (auto& c : shifted) c += 1;
  Weight mu{shifted};
  std::vector<Coord> out;
  out.reserve(rs_->num_positive());
  for (const Root& alpha : rs_->positive_roots())
    out.push_back(rs_->pairing(mu, alpha));
  return out;
}

bool AffineGroup::in_fundamental_closure(const Weight& la) const {
  for (Coord v : shifted_pairings(la))
    if (v > 0 || v < -ell_) return false;
  return true;
}

long long AffineGroup::separation_count(const Weight& la) const {
  // Hyperplanes <., alpha^vee> = r*ell strictly between la + rho and the
  // base box (-ell, 0); zero exactly on the fundamental closure.
  long long count = 0;
  for (Coord v : shifted_pairings(la)) {
    if (v > 0)
      count += (v - 1) / ell_ + 1;
    else if (v < -ell_)
      count += (-v - 1) / ell_;
  }
  return count;
}

std::vector<AffineElement> AffineGroup::dominant_coset_reps(
    const Weight& lambda_minus, const std::vector<int>& I,
    long long max_length) const {
  detail::require(in_fundamental_closure(lambda_minus),
                  "dominant_coset_reps: weight not in the fundamental domain");
  for (int s : I)
    detail::require(dot(generator(s), lambda_minus) == lambda_minus,
                    "dominant_coset_reps: I must stabilize lambda_minus");
  std::vector<AffineElement> out;
  for (const AffineElement& y : ball(max_length))
    if (is_minimal_in_coset(y, I)) out.push_back(y);
  return out;
}

AlcoveReduction AffineGroup::reduce_to_fundamental(const Weight& la) const {
  detail::require(rs_->is_dominant(la),
                  "reduce_to_fundamental: weight must be dominant");
  Weight mu = la;
  AffineElement w = identity();
  long long pot = separation_count(mu);
  while (pot > 0) {
    int chosen = -1;
    Weight nxt;
    long long npot = pot;
    for (int i = 0; i <= rs_->rank(); ++i) {
      Weight cand = dot(generator(i), mu);
      long long p = separation_count(cand);
      if (p < pot) {
        chosen = i;
        nxt = cand;
        npot = p;
        break;  // ties resolved by lowest generator index
      }
    }
    detail::ensure(chosen >= 0, "alcove walk stalled outside the fundamental domain");
    mu = nxt;
    w = mult_gen(w, chosen);
    pot = npot;
  }

  AlcoveReduction red;
  red.lambda_minus = mu;
  for (int i = 0; i <= rs_->rank(); ++i)
    if (dot(generator(i), mu) == mu) red.stabilizer.push_back(i);

  // Minimal coset representative modulo the stabilizer W_{l,I}.
  bool moved = true;
  while (moved) {
    moved = false;
    long long lw = length(w);
    for (int s : red.stabilizer) {
      AffineElement ws = mult_gen(w, s);
      if (length(ws) < lw) {
        w = std::move(ws);
        moved = true;
        break;
      }
    }
  }
  detail::ensure(dot(w, mu) == la, "alcove reduction round trip failed");
  red.w = std::move(w);

  for (Coord v : shifted_pairings(mu))
    if (v == -ell_) ++red.a_count;
  return red;
}

}  // namespace qsv
