#include "qsv/support.hpp"

#include <algorithm>
#include <set>

namespace qsv {

namespace {

// Simple system of a closed subsystem: positive members not expressible as
// a sum of two positive members.
std::vector<Root> simple_system(const PhiSubset& phi) {
  std::vector<Root> simples;
  for (const Root& a : phi.positive) {
    bool decomposable = false;
    for (const Root& b : phi.positive) {
      if (decomposable) break;
      for (const Root& c : phi.positive) {
        CoordVec sum(b.sr.size());
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = b.sr[i] + c.sr[i];
        if (sum == a.sr) {
          decomposable = true;
          break;
        }
      }
    }
    if (!decomposable) simples.push_back(a);
  }
  return simples;
}

std::set<CoordVec> as_set(const std::vector<Root>& roots) {
  std::set<CoordVec> s;
  for (const Root& r : roots) s.insert(r.sr);
  return s;
}

int simple_index(const RootSystem& rs, const Root& r) {
  for (int i = 0; i < rs.rank(); ++i)
    if (rs.simple_root(i) == r) return i;
  return -1;
}

std::vector<Root> standard_subsystem(const RootSystem& rs,
                                     const std::vector<int>& J) {
  // positive part of Phi_J = Z J intersect Phi: positive roots supported on J
  std::vector<Root> out;
  for (const Root& alpha : rs.positive_roots()) {
    bool supported = true;
    for (int i = 0; i < rs.rank() && supported; ++i)
      if (alpha.sr[i] != 0 &&
          std::find(J.begin(), J.end(), i) == J.end())
        supported = false;
    if (supported) out.push_back(alpha);
  }
  return out;
}

}  // namespace

std::pair<std::vector<int>, WeylElement> find_J(const RootSystem& rs,
                                                const PhiSubset& phi) {
  if (phi.positive.empty()) return {std::vector<int>{}, rs.identity()};

  std::vector<Root> delta = simple_system(phi);
  std::set<CoordVec> phi_pos = as_set(phi.positive);

  // Scan W for elements mapping the simple system of Phi_lambda into Pi;
  // among all hits keep the lexicographically least index set, breaking
  // ties by Weyl length and canonical key of the conjugator.
  bool found = false;
  std::vector<int> best_J;
  WeylElement best_u;
  for (const WeylElement& u : rs.all_elements()) {
    std::vector<int> J;
    J.reserve(delta.size());
    bool ok = true;
    for (const Root& d : delta) {
      int idx = simple_index(rs, u.apply(d));
      if (idx < 0) {
        ok = false;
        break;
      }
      J.push_back(idx);
    }
    if (!ok) continue;
    std::sort(J.begin(), J.end());
    if (found) {
      if (J > best_J) continue;
      if (J == best_J) {
        int lu = rs.length(u), lb = rs.length(best_u);
        if (lu > lb || (lu == lb && !(u.key() < best_u.key()))) continue;
      }
    }
    found = true;
    best_J = std::move(J);
    best_u = u;
  }
  if (!found)
    throw InvariantViolationError(
        "no Weyl conjugate of the wall system lies in the simple roots; "
        "the level hypotheses (bad primes) are required for this");

  WeylElement w = best_u.inverse();
  // Round trip: w(Phi_J) must reproduce Phi_lambda exactly as root sets.
  std::set<CoordVec> image;
  for (const Root& alpha : standard_subsystem(rs, best_J)) {
    Root im = w.apply(alpha);
    if (rs.is_positive_root(im)) {
      image.insert(im.sr);
    } else {
      CoordVec neg(im.sr.size());
      for (std::size_t i = 0; i < neg.size(); ++i) neg[i] = -im.sr[i];
      image.insert(neg);
    }
  }
  detail::ensure(image == phi_pos, "find_J round trip failed");
  return {best_J, w};
}

namespace {

SupportVarietyDescriptor descriptor_for(const RootSystem& rs, const Weight& la,
                                        long long ell, ParamMode mode,
                                        ModuleKind kind) {
  Weight target = la;
  if (mode == ParamMode::Modular) {
    // lambda = lambda_0 + p lambda_1 with lambda_0 restricted; the support
    // only sees the restricted part.
    for (auto& c : target.fw) c %= ell;
  }
  PhiSubset phi = rs.phi_lambda(target, ell);
  auto [J, w] = find_J(rs, phi);
  SupportVarietyDescriptor d;
  d.J = J;
  d.conjugator = w;
  d.conjugator_word = rs.word(w);
  d.dimension = static_cast<long long>(rs.num_roots()) -
                static_cast<long long>(phi.size());
  d.mode = mode;
  d.kind = kind;
  d.conditional_on_LCF = (mode == ParamMode::Modular);
  detail::ensure(d.dimension ==
                     static_cast<long long>(rs.num_roots()) -
                         2 * static_cast<long long>(
                                 standard_subsystem(rs, J).size()),
                 "orbit dimension mismatch between Phi_lambda and Phi_J");
  return d;
}

}  // namespace

SupportVarietyDescriptor irreducible_support(const RootSystem& rs,
                                             const Weight& la, long long ell,
                                             ParamMode mode) {
  detail::require(rs.is_dominant(la), "support: weight must be dominant");
  rs.validate_ell(ell, mode);
  return descriptor_for(rs, la, ell, mode, ModuleKind::Irreducible);
}

SupportVarietyDescriptor weyl_module_support(const RootSystem& rs,
                                             const Weight& la, long long ell) {
  detail::require(rs.is_dominant(la), "support: weight must be dominant");
  rs.validate_ell(ell, ParamMode::Quantum);
  return descriptor_for(rs, la, ell, ParamMode::Quantum, ModuleKind::Weyl);
}

bool conjugacy_invariance_check(const RootSystem& rs,
                                const std::vector<int>& J,
                                const std::vector<int>& K) {
  for (int i : J)
    detail::require(i >= 0 && i < rs.rank(), "J index out of range");
  for (int i : K)
    detail::require(i >= 0 && i < rs.rank(), "K index out of range");
  std::set<CoordVec> phiJ = as_set(standard_subsystem(rs, J));
  std::set<CoordVec> phiK = as_set(standard_subsystem(rs, K));
  if (phiJ.size() != phiK.size()) return false;
  for (const WeylElement& u : rs.all_elements()) {
    std::set<CoordVec> image;
    for (const CoordVec& c : phiJ) {
      Root im = u.apply(Root{c});
      if (rs.is_positive_root(im)) {
        image.insert(im.sr);
      } else {
        CoordVec neg(im.sr.size());
        for (std::size_t i = 0; i < neg.size(); ++i) neg[i] = -im.sr[i];
        image.insert(neg);
      }
    }
    if (image == phiK) return true;
  }
  return false;
}

bool linkage_check(const RootSystem& rs, const CharacterCombination& comb,
                   long long ell) {
  if (comb.terms.empty()) return true;
  auto canonical = [&](const Weight& mu) {
    return find_J(rs, rs.phi_lambda(mu, ell)).first;
  };
  std::vector<int> ref = canonical(comb.terms.front().weight);
  for (std::size_t i = 1; i < comb.terms.size(); ++i)
    if (canonical(comb.terms[i].weight) != ref) return false;
  return true;
}

}  // namespace qsv
