#include "qsv/root_system.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <sstream>

namespace qsv {

namespace {

constexpr int kMaxRank = 8;
// Memory guard for full Weyl-group enumeration (find_J and friends are
// desk-scale operations; |W| <= 1152 for rank <= 4).
constexpr std::size_t kWeylEnumCap = 200000;

struct CartanData {
  std::vector<CoordVec> a;  // a[i][j] = <alpha_j, alpha_i^vee>
  std::vector<int> d;       // symmetrizer with short roots at 1
};

void add_edge(CartanData& cd, int i, int j) {  // single bond
  cd.a[i][j] = -1;
  cd.a[j][i] = -1;
}

CartanData cartan_for(char type, int n) {
  CartanData cd;
  cd.a.assign(n, CoordVec(n, 0));
  for (int i = 0; i < n; ++i) cd.a[i][i] = 2;
  cd.d.assign(n, 1);
  switch (type) {
    case 'A':
      detail::require(n >= 1, "type A requires rank >= 1");
      for (int i = 0; i + 1 < n; ++i) add_edge(cd, i, i + 1);
      break;
    case 'B':
      // alpha_n short; the double bond points from the long chain to it
      detail::require(n >= 2, "type B requires rank >= 2");
      for (int i = 0; i + 2 < n; ++i) add_edge(cd, i, i + 1);
      cd.a[n - 2][n - 1] = -1;
      cd.a[n - 1][n - 2] = -2;
      for (int i = 0; i < n - 1; ++i) cd.d[i] = 2;
      break;
    case 'C':
      // alpha_n long
      detail::require(n >= 2, "type C requires rank >= 2");
      for (int i = 0; i + 2 < n; ++i) add_edge(cd, i, i + 1);
      cd.a[n - 2][n - 1] = -2;
      cd.a[n - 1][n - 2] = -1;
      cd.d[n - 1] = 2;
      break;
    case 'D':
      detail::require(n >= 4, "type D requires rank >= 4");
      for (int i = 0; i + 2 < n; ++i) add_edge(cd, i, i + 1);
      add_edge(cd, n - 3, n - 1);
      break;
    case 'E':
      detail::require(n >= 6 && n <= 8, "type E requires rank 6, 7, or 8");
      // Bourbaki: chain 1-3-4-5-6(-7-8), node 2 hangs off node 4
      add_edge(cd, 0, 2);
      add_edge(cd, 1, 3);
      for (int i = 2; i + 1 < n; ++i) add_edge(cd, i, i + 1);
      break;
    case 'F':
      detail::require(n == 4, "type F requires rank 4");
      add_edge(cd, 0, 1);
      add_edge(cd, 2, 3);
      cd.a[1][2] = -1;
      cd.a[2][1] = -2;
      cd.d[0] = cd.d[1] = 2;
      break;
    case 'G':
      detail::require(n == 2, "type G requires rank 2");
      cd.a[0][1] = -3;
      cd.a[1][0] = -1;
      cd.d[1] = 3;
      break;
    default:
      throw InvalidInputError(std::string("unknown type label '") + type +
                              "'");
  }
  return cd;
}

std::set<long long> bad_primes_for(char type) {
  switch (type) {
    case 'A':
      return {};
    case 'B':
    case 'C':
    case 'D':
      return {2};
    case 'G':
    case 'F':
      return {2, 3};
    case 'E':
      return {2, 3};  // E6, E7; E8 adds 5 (adjusted by caller)
    default:
      return {};
  }
}

unsigned long long factorial(int n) {
  unsigned long long f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<unsigned long long>(i);
  return f;
}

unsigned long long weyl_order_for(char type, int n) {
  switch (type) {
    case 'A':
      return factorial(n + 1);
    case 'B':
    case 'C':
      return (1ull << n) * factorial(n);
    case 'D':
      return (1ull << (n - 1)) * factorial(n);
    case 'E':
      if (n == 6) return 51840ull;
      if (n == 7) return 2903040ull;
      return 696729600ull;
    case 'F':
      return 1152ull;
    case 'G':
      return 12ull;
    default:
      return 0;
  }
}

// Determinant of an integer matrix by cofactor expansion (n <= 8, one-off).
Coord int_det(const std::vector<CoordVec>& m) {
  std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  Coord det = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (m[0][k] == 0) continue;
    std::vector<CoordVec> minor(n - 1, CoordVec(n - 1));
    for (std::size_t r = 1; r < n; ++r) {
      std::size_t cc = 0;
      for (std::size_t c = 0; c < n; ++c) {
        if (c == k) continue;
        minor[r - 1][cc++] = m[r][c];
      }
    }
    Coord sgn = (k % 2 == 0) ? 1 : -1;
    det += sgn * m[0][k] * int_det(minor);
  }
  return det;
}

std::vector<CoordVec> adjugate(const std::vector<CoordVec>& m) {
  std::size_t n = m.size();
  std::vector<CoordVec> adj(n, CoordVec(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<CoordVec> minor(n - 1, CoordVec(n - 1));
      std::size_t rr = 0;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == i) continue;
        std::size_t cc = 0;
        for (std::size_t c = 0; c < n; ++c) {
          if (c == j) continue;
          minor[rr][cc++] = m[r][c];
        }
        ++rr;
      }
      Coord sgn = ((i + j) % 2 == 0) ? 1 : -1;
      adj[j][i] = sgn * int_det(minor);  // note the transpose
    }
  }
  return adj;
}

std::vector<CoordVec> mat_mul(const std::vector<CoordVec>& a,
                              const std::vector<CoordVec>& b) {
  std::size_t n = a.size();
  std::vector<CoordVec> r(n, CoordVec(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      Coord aik = a[i][k];
      if (aik == 0) continue;
      for (std::size_t j = 0; j < n; ++j) r[i][j] += aik * b[k][j];
    }
  return r;
}

CoordVec mat_apply(const std::vector<CoordVec>& m, const CoordVec& v) {
  CoordVec r(m.size(), 0);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) r[i] += m[i][j] * v[j];
  return r;
}

std::vector<CoordVec> identity_matrix(int n) {
  std::vector<CoordVec> m(n, CoordVec(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

bool all_nonneg(const CoordVec& v) {
  return std::all_of(v.begin(), v.end(), [](Coord c) { return c >= 0; });
}

bool all_nonpos(const CoordVec& v) {
  return std::all_of(v.begin(), v.end(), [](Coord c) { return c <= 0; });
}

}  // namespace

// ---------------------------------------------------------------------------
// WeylElement

bool WeylElement::is_identity() const {
  int n = rank();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (wt_[i][j] != (i == j ? 1 : 0)) return false;
  return true;
}

WeylElement WeylElement::operator*(const WeylElement& o) const {
  detail::require(rank() == o.rank(), "WeylElement: rank mismatch");
  WeylElement r;
  r.wt_ = mat_mul(wt_, o.wt_);
  r.wt_inv_ = mat_mul(o.wt_inv_, wt_inv_);
  r.rt_ = mat_mul(rt_, o.rt_);
  r.rt_inv_ = mat_mul(o.rt_inv_, rt_inv_);
  return r;
}

WeylElement WeylElement::inverse() const {
  WeylElement r;
  r.wt_ = wt_inv_;
  r.wt_inv_ = wt_;
  r.rt_ = rt_inv_;
  r.rt_inv_ = rt_;
  return r;
}

Weight WeylElement::apply(const Weight& la) const {
  detail::require(static_cast<int>(la.fw.size()) == rank(),
                  "WeylElement: weight rank mismatch");
  return Weight{mat_apply(wt_, la.fw)};
}

Root WeylElement::apply(const Root& r) const {
  detail::require(static_cast<int>(r.sr.size()) == rank(),
                  "WeylElement: root rank mismatch");
  return Root{mat_apply(rt_, r.sr)};
}

Root WeylElement::apply_inverse(const Root& r) const {
  detail::require(static_cast<int>(r.sr.size()) == rank(),
                  "WeylElement: root rank mismatch");
  return Root{mat_apply(rt_inv_, r.sr)};
}

CoordVec WeylElement::key() const {
  CoordVec k;
  k.reserve(static_cast<std::size_t>(rank()) * rank());
  for (const auto& row : wt_) k.insert(k.end(), row.begin(), row.end());
  return k;
}

// ---------------------------------------------------------------------------
// PhiSubset

std::vector<Root> PhiSubset::all() const {
  std::vector<Root> out;
  out.reserve(2 * positive.size());
  for (const Root& r : positive) out.push_back(r);
  for (const Root& r : positive) {
    CoordVec neg(r.sr.size());
    for (std::size_t i = 0; i < r.sr.size(); ++i) neg[i] = -r.sr[i];
    out.push_back(Root{std::move(neg)});
  }
  return out;
}

bool PhiSubset::contains_positive(const Root& r) const {
  return std::find(positive.begin(), positive.end(), r) != positive.end();
}

// ---------------------------------------------------------------------------
// RootSystem construction

std::shared_ptr<const RootSystem> RootSystem::build(char type_label,
                                                    int rank) {
  detail::require(rank >= 1 && rank <= kMaxRank,
                  "rank must be between 1 and 8");
  auto rs = std::shared_ptr<RootSystem>(new RootSystem());
  rs->type_ = type_label;
  rs->rank_ = rank;
  CartanData cd = cartan_for(type_label, rank);
  rs->cartan_ = cd.a;
  rs->d_ = cd.d;
  rs->bad_primes_ = bad_primes_for(type_label);
  if (type_label == 'E' && rank == 8) rs->bad_primes_.insert(5);
  rs->weyl_order_ = weyl_order_for(type_label, rank);
  rs->det_cartan_ = int_det(cd.a);
  rs->adj_cartan_ = adjugate(cd.a);

  // Close the simple roots under all simple reflections to get Phi.
  std::set<CoordVec> seen;
  std::vector<CoordVec> frontier;
  for (int i = 0; i < rank; ++i) {
    CoordVec e(rank, 0);
    e[i] = 1;
    seen.insert(e);
    frontier.push_back(e);
  }
  while (!frontier.empty()) {
    std::vector<CoordVec> next;
    for (const CoordVec& c : frontier) {
      for (int i = 0; i < rank; ++i) {
        CoordVec img = c;
        Coord pair = 0;
        for (int j = 0; j < rank; ++j) pair += cd.a[i][j] * c[j];
        img[i] -= pair;
        if (seen.insert(img).second) next.push_back(img);
      }
    }
    frontier = std::move(next);
  }

  std::vector<Root> pos;
  for (const CoordVec& c : seen)
    if (all_nonneg(c)) pos.push_back(Root{c});
  std::sort(pos.begin(), pos.end(), [](const Root& a, const Root& b) {
    Coord ha = std::accumulate(a.sr.begin(), a.sr.end(), Coord(0));
    Coord hb = std::accumulate(b.sr.begin(), b.sr.end(), Coord(0));
    return ha != hb ? ha < hb : a.sr < b.sr;
  });
  rs->positive_ = pos;

  // Per-root tables: d_alpha, heights, integral coroot coordinates.
  for (std::size_t k = 0; k < pos.size(); ++k) {
    const CoordVec& c = pos[k].sr;
    Coord norm = 0;  // <alpha,alpha> via the symmetrized form d_i * a_ij
    for (int i = 0; i < rank; ++i)
      for (int j = 0; j < rank; ++j) norm += c[i] * cd.d[i] * cd.a[i][j] * c[j];
    detail::ensure(norm > 0 && norm % 2 == 0, "root norm must be a positive even integer");
    Coord dal = norm / 2;
    detail::ensure(dal >= 1 && dal <= 3, "d_alpha out of range");
    rs->d_alpha_.push_back(static_cast<int>(dal));
    rs->height_.push_back(std::accumulate(c.begin(), c.end(), Coord(0)));
    CoordVec cc(rank);
    for (int i = 0; i < rank; ++i) {
      Coord num = c[i] * cd.d[i];
      detail::ensure(num % dal == 0, "coroot coordinates must be integral");
      cc[i] = num / dal;
    }
    rs->coroot_fw_.push_back(std::move(cc));
    rs->pos_index_[c] = static_cast<int>(k);
  }

  // Highest short root: maximal height among roots of minimal length.
  int best = -1;
  for (std::size_t k = 0; k < pos.size(); ++k) {
    if (rs->d_alpha_[k] != 1) continue;
    if (best < 0 || rs->height_[k] > rs->height_[best])
      best = static_cast<int>(k);
  }
  detail::ensure(best >= 0, "no short root found");
  rs->alpha0_ = best;

  Coord pr = 0;  // <rho, alpha_0^vee>
  for (int i = 0; i < rank; ++i) pr += rs->coroot_fw_[best][i];
  rs->coxeter_ = static_cast<int>(pr) + 1;

  return rs;
}

std::string RootSystem::name() const {
  return std::string(1, type_) + std::to_string(rank_);
}

void RootSystem::check_rank(const Weight& la) const {
  detail::require(static_cast<int>(la.fw.size()) == rank_,
                  "weight has wrong rank");
}

void RootSystem::check_rank(const Root& r) const {
  detail::require(static_cast<int>(r.sr.size()) == rank_,
                  "root vector has wrong rank");
}

Root RootSystem::simple_root(int i) const {
  detail::require(i >= 0 && i < rank_, "simple root index out of range");
  CoordVec c(rank_, 0);
  c[i] = 1;
  return Root{c};
}

Weight RootSystem::rho() const { return Weight{CoordVec(rank_, 1)}; }

bool RootSystem::is_root(const Root& r) const {
  check_rank(r);
  if (pos_index_.count(r.sr)) return true;
  CoordVec neg(r.sr.size());
  for (std::size_t i = 0; i < r.sr.size(); ++i) neg[i] = -r.sr[i];
  return pos_index_.count(neg) > 0;
}

bool RootSystem::is_positive_root(const Root& r) const {
  check_rank(r);
  return pos_index_.count(r.sr) > 0;
}

int RootSystem::d_of(const Root& r) const {
  check_rank(r);
  auto it = pos_index_.find(r.sr);
  if (it == pos_index_.end()) {
    CoordVec neg(r.sr.size());
    for (std::size_t i = 0; i < r.sr.size(); ++i) neg[i] = -r.sr[i];
    it = pos_index_.find(neg);
    detail::require(it != pos_index_.end(), "d_of: not a root");
  }
  return d_alpha_[it->second];
}

Coord RootSystem::pairing(const Weight& la, const Root& alpha) const {
  check_rank(la);
  auto it = pos_index_.find(alpha.sr);
  Coord sign = 1;
  if (it == pos_index_.end()) {
    CoordVec neg(alpha.sr.size());
    for (std::size_t i = 0; i < alpha.sr.size(); ++i) neg[i] = -alpha.sr[i];
    it = pos_index_.find(neg);
    detail::require(it != pos_index_.end(), "pairing: alpha is not a root");
    sign = -1;
  }
  const CoordVec& cc = coroot_fw_[it->second];
  Coord s = 0;
  for (int i = 0; i < rank_; ++i) s += cc[i] * la.fw[i];
  return sign * s;
}

Coord RootSystem::pairing(const Root& beta, const Root& alpha) const {
  return pairing(fw_of_root(beta), alpha);
}

Coord RootSystem::height(const Root& r) const {
  check_rank(r);
  return std::accumulate(r.sr.begin(), r.sr.end(), Coord(0));
}

Coord RootSystem::height(const Weight& la) const {
  auto rc = root_coords(la);
  detail::require(rc.has_value(), "height: weight is not in the root lattice");
  return height(*rc);
}

Coord RootSystem::twice_weighted_height(const Weight& la) const {
  check_rank(la);
  // 2*wht(lambda) = sum over positive alpha of d_alpha <lambda, alpha^vee>
  Coord s = 0;
  for (std::size_t k = 0; k < positive_.size(); ++k) {
    Coord p = 0;
    for (int i = 0; i < rank_; ++i) p += coroot_fw_[k][i] * la.fw[i];
    s += d_alpha_[k] * p;
  }
  return s;
}

Weight RootSystem::fw_of_root(const Root& r) const {
  check_rank(r);
  // <alpha_i, alpha_j^vee> = cartan_[j][i]
  CoordVec fw(rank_, 0);
  for (int j = 0; j < rank_; ++j)
    for (int i = 0; i < rank_; ++i) fw[j] += cartan_[j][i] * r.sr[i];
  return Weight{fw};
}

std::optional<Root> RootSystem::root_coords(const Weight& la) const {
  check_rank(la);
  // solve cartan * c = fw exactly via the precomputed adjugate
  CoordVec num = mat_apply(adj_cartan_, la.fw);
  CoordVec c(rank_);
  for (int i = 0; i < rank_; ++i) {
    if (num[i] % det_cartan_ != 0) return std::nullopt;
    c[i] = num[i] / det_cartan_;
  }
  return Root{c};
}

bool RootSystem::is_dominant(const Weight& la) const {
  check_rank(la);
  return all_nonneg(la.fw);
}

WeylElement RootSystem::identity() const {
  WeylElement w;
  w.wt_ = w.wt_inv_ = w.rt_ = w.rt_inv_ = identity_matrix(rank_);
  return w;
}

WeylElement RootSystem::simple_reflection(int i) const {
  detail::require(i >= 0 && i < rank_, "simple reflection index out of range");
  WeylElement w;
  w.wt_ = identity_matrix(rank_);
  for (int j = 0; j < rank_; ++j) w.wt_[j][i] -= cartan_[j][i];
  w.rt_ = identity_matrix(rank_);
  for (int j = 0; j < rank_; ++j) w.rt_[i][j] -= cartan_[i][j];
  w.wt_inv_ = w.wt_;  // involution
  w.rt_inv_ = w.rt_;
  return w;
}

WeylElement RootSystem::reflection(const Root& beta) const {
  check_rank(beta);
  detail::require(is_root(beta), "reflection: beta must be a root");
  auto it = pos_index_.find(beta.sr);
  CoordVec b = beta.sr;
  if (it == pos_index_.end()) {
    for (auto& x : b) x = -x;  // s_beta = s_{-beta}
    it = pos_index_.find(b);
  }
  const CoordVec& cc = coroot_fw_[it->second];
  CoordVec fwb = fw_of_root(Root{b}).fw;
  WeylElement w;
  w.wt_ = identity_matrix(rank_);
  for (int j = 0; j < rank_; ++j)
    for (int k = 0; k < rank_; ++k) w.wt_[j][k] -= fwb[j] * cc[k];
  w.rt_ = identity_matrix(rank_);
  // <alpha_m, beta^vee> = sum_j cc[j] * cartan_[j][m]
  for (int m = 0; m < rank_; ++m) {
    Coord p = 0;
    for (int j = 0; j < rank_; ++j) p += cc[j] * cartan_[j][m];
    for (int k = 0; k < rank_; ++k) w.rt_[k][m] -= b[k] * p;
  }
  w.wt_inv_ = w.wt_;
  w.rt_inv_ = w.rt_;
  return w;
}

int RootSystem::length(const WeylElement& w) const {
  detail::require(w.rank() == rank_, "length: rank mismatch");
  int inv = 0;
  for (const Root& alpha : positive_)
    if (all_nonpos(w.apply(alpha).sr)) ++inv;
  return inv;
}

std::vector<int> RootSystem::word(const WeylElement& w) const {
  detail::require(w.rank() == rank_, "word: rank mismatch");
  std::vector<int> out;
  WeylElement cur = w;
  while (!cur.is_identity()) {
    int s = -1;
    for (int i = 0; i < rank_; ++i) {
      // s_i is a right descent iff cur(alpha_i) < 0
      if (all_nonpos(cur.apply(simple_root(i)).sr)) {
        s = i;
        break;
      }
    }
    detail::ensure(s >= 0, "word: no descent found");
    out.push_back(s);
    cur = cur * simple_reflection(s);
  }
  std::reverse(out.begin(), out.end());
  return out;
}

WeylElement RootSystem::from_word(const std::vector<int>& word) const {
  WeylElement w = identity();
  for (int s : word) w = w * simple_reflection(s);
  return w;
}

WeylElement RootSystem::longest_element() const {
  WeylElement w = identity();
  bool moved = true;
  while (moved) {
    moved = false;
    for (int i = 0; i < rank_; ++i) {
      if (all_nonneg(w.apply(simple_root(i)).sr)) {
        w = w * simple_reflection(i);
        moved = true;
        break;
      }
    }
  }
  return w;
}

const std::vector<WeylElement>& RootSystem::all_elements() const {
  std::lock_guard<std::mutex> lock(enum_mutex_);
  if (!all_elements_.empty()) return all_elements_;
  if (weyl_order_ > kWeylEnumCap)
    throw CapacityError("Weyl group too large to enumerate (|W| = " +
                        std::to_string(weyl_order_) +
                        "); this operation is desk-scale (rank <= 4)");
  std::map<CoordVec, bool> seen;
  std::vector<WeylElement> out{identity()};
  seen[out[0].key()] = true;
  for (std::size_t head = 0; head < out.size(); ++head) {
    WeylElement cur = out[head];  // copy: out may reallocate
    for (int i = 0; i < rank_; ++i) {
      WeylElement nxt = cur * simple_reflection(i);
      if (seen.emplace(nxt.key(), true).second) out.push_back(nxt);
    }
  }
  detail::ensure(out.size() == weyl_order_,
                 "Weyl enumeration does not match the group order");
  all_elements_ = std::move(out);
  return all_elements_;
}

PhiSubset RootSystem::phi_lambda(const Weight& la, long long ell) const {
  check_rank(la);
  validate_ell(ell, ParamMode::Quantum);
  Weight shifted{la.fw};
  for (auto& c : shifted.fw) c += 1;  // lambda + rho
  PhiSubset out;
  for (std::size_t k = 0; k < positive_.size(); ++k) {
    Coord p = 0;
    for (int i = 0; i < rank_; ++i) p += coroot_fw_[k][i] * shifted.fw[i];
    if (p % ell == 0) out.positive.push_back(positive_[k]);
  }
  // Closed-subsystem sanity: alpha, beta in the set and alpha+beta a root
  // forces alpha+beta into the set.  Guaranteed by the bad-prime hypothesis.
  std::vector<Root> members = out.all();
  for (const Root& a : members)
    for (const Root& b : members) {
      CoordVec sum(static_cast<std::size_t>(rank_));
      for (int i = 0; i < rank_; ++i) sum[i] = a.sr[i] + b.sr[i];
      Root s{sum};
      if (!is_root(s)) continue;
      bool in = std::find(members.begin(), members.end(), s) != members.end();
      detail::ensure(in, "phi_lambda is not a closed subsystem");
    }
  return out;
}

std::vector<std::string> RootSystem::ell_violations(long long ell,
                                                    ParamMode mode) const {
  std::vector<std::string> v;
  if (ell % 2 == 0)
    v.push_back("ell must be odd (got " + std::to_string(ell) + ")");
  if (ell <= coxeter_)
    v.push_back("ell must exceed the Coxeter number h = " +
                std::to_string(coxeter_) + " (got " + std::to_string(ell) +
                ")");
  for (long long r : bad_primes_)
    if (ell > 0 && std::gcd(ell, r) != 1)
      v.push_back("ell shares the bad prime " + std::to_string(r) + " of " +
                  name());
  if (mode == ParamMode::Modular) {
    bool prime = ell >= 2;
    for (long long d = 2; d * d <= ell; ++d)
      if (ell % d == 0) {
        prime = false;
        break;
      }
    if (!prime)
      v.push_back("parameter must be prime in modular mode (got " +
                  std::to_string(ell) + ")");
  }
  return v;
}

void RootSystem::validate_ell(long long ell, ParamMode mode) const {
  auto v = ell_violations(ell, mode);
  if (v.empty()) return;
  std::string msg = v[0];
  for (std::size_t i = 1; i < v.size(); ++i) msg += "; " + v[i];
  throw InvalidInputError(msg);
}

}  // namespace qsv
