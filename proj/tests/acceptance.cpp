/*
  Acceptance suite: the exact algebraic identities and pipeline fixed points
  this library exists to machine-check, one pass/fail line per criterion.

  Everything is zero-tolerance (integer arithmetic end to end).  The G2
  sweep is the heavy part (its KL table needs lengths up to 32); set
  QSV_ACCEPT_SKIP_G2=1 to drop it on slow machines.
*/
#include <cstdlib>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qsv/gendim.hpp"
#include "qsv/support.hpp"

using namespace qsv;

namespace {

struct Criterion {
  explicit Criterion(std::string l) : label(std::move(l)) {}
  std::string label;
  long long checked = 0;
  long long failed = 0;
  std::string first_failure;

  void expect(bool ok, const std::string& what) {
    ++checked;
    if (!ok) {
      ++failed;
      if (first_failure.empty()) first_failure = what;
    }
  }
  bool pass() const { return failed == 0 && checked > 0; }
};

std::string weight_str(const Weight& la) {
  std::string s = "(";
  for (std::size_t i = 0; i < la.fw.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(la.fw[i]);
  }
  return s + ")";
}

struct SweepConfig {
  char type;
  int rank;
  long long ell;
  long long kl_cap;
};

std::vector<Weight> sweep_box(int rank, Coord bound_exclusive) {
  std::vector<Weight> out;
  CoordVec cur(rank, 0);
  while (true) {
    out.push_back(Weight{cur});
    int i = rank - 1;
    while (i >= 0 && cur[i] == bound_exclusive - 1) {
      cur[i] = 0;
      --i;
    }
    if (i < 0) break;
    ++cur[i];
  }
  return out;
}

}  // namespace

int main() {
  bool skip_g2 = std::getenv("QSV_ACCEPT_SKIP_G2") != nullptr;

  std::vector<SweepConfig> configs = {
      {'A', 1, 5, 14}, {'A', 1, 7, 14}, {'A', 2, 5, 14},
      {'A', 2, 7, 14}, {'B', 2, 7, 14},
  };
  if (!skip_g2) configs.push_back({'G', 2, 11, 32});

  Criterion c1{"derivative identity sweep (both routes equal, nonzero)"};
  Criterion c2{"cyclotomic multiplicities: D_lambda and D_0*dim_t L"};
  Criterion c3{"affine length = BFS distance; translation formula"};
  Criterion c4{"reflection length bound; descent biconditional on walls"};
  Criterion c5{"parabolic KL: positivity scan, I=empty, diagonal"};
  Criterion c6{"support fixed points; Weyl = irreducible descriptors"};
  Criterion c7{"linkage invariance of canonical J across characters"};
  Criterion c8{"generic dimension vs classical Weyl dimension"};
  Criterion c9{"prime mode: restricted reduction and LCF flag"};

  // --- per-configuration sweeps (criteria 1, 2, 4b, 6, 7, 8) --------------
  for (const SweepConfig& cfg : configs) {
    auto rs = RootSystem::build(cfg.type, cfg.rank);
    auto group = std::make_shared<AffineGroup>(rs, cfg.ell);
    KLTable table(group, cfg.kl_cap);
    const std::string tag =
        rs->name() + " ell=" + std::to_string(cfg.ell) + " ";

    for (const Weight& la : sweep_box(cfg.rank, 2 * cfg.ell)) {
      // criterion 1
      DerivativeCertificate cert = verify_derivative_formula(*group, la);
      c1.expect(cert.pass(), tag + weight_str(la) + ": lhs " +
                                 cert.lhs.to_string() + " vs rhs " +
                                 cert.rhs.to_string());

      // criterion 2, first half: multiplicity in D_lambda
      int d_mult = psi_multiplicity(d_poly(*rs, la), cfg.ell);
      c2.expect(d_mult == cert.s,
                tag + weight_str(la) + ": D-multiplicity " +
                    std::to_string(d_mult) + " != " + std::to_string(cert.s));

      // criterion 2, second half (KL route), and criterion 7 on the same
      // character combination
      MultiplicityReport rep = multiplicity_and_complexity(table, la);
      c2.expect(rep.ok(), tag + weight_str(la) + ": " + rep.message);
      CharacterCombination comb = irreducible_character(table, la);
      c7.expect(linkage_check(*rs, comb, cfg.ell),
                tag + weight_str(la) + ": linked weights disagree on J");
      std::vector<int> headJ = find_J(*rs, rs->phi_lambda(la, cfg.ell)).first;
      for (const CharacterTerm& term : comb.terms)
        c7.expect(find_J(*rs, rs->phi_lambda(term.weight, cfg.ell)).first ==
                      headJ,
                  tag + weight_str(la) + ": canonical J drifts at " +
                      weight_str(term.weight));

      // criterion 4, second half: descent biconditional on the wall system
      AlcoveReduction red = comb.reduction;
      Weight shifted = red.lambda_minus;
      for (auto& v : shifted.fw) v += 1;
      for (const Root& alpha : rs->positive_roots()) {
        Coord pair = rs->pairing(shifted, alpha);
        if (pair % cfg.ell != 0) continue;
        bool negative = true;
        for (Coord x : red.w.x.apply(alpha).sr)
          if (x > 0) negative = false;
        c4.expect(negative == (pair == -cfg.ell),
                  tag + weight_str(la) + ": wall/descent mismatch");
      }

      // criterion 6: irreducible and Weyl descriptors agree everywhere
      SupportVarietyDescriptor irr =
          irreducible_support(*rs, la, cfg.ell, ParamMode::Quantum);
      SupportVarietyDescriptor weyl = weyl_module_support(*rs, la, cfg.ell);
      c6.expect(irr.J == weyl.J && irr.dimension == weyl.dimension,
                tag + weight_str(la) + ": Weyl vs irreducible descriptor");
      c6.expect(irr.dimension ==
                    static_cast<long long>(rs->num_roots()) -
                        static_cast<long long>(
                            rs->phi_lambda(la, cfg.ell).size()),
                tag + weight_str(la) + ": dimension bookkeeping");
      c6.expect(rep.support_dimension == irr.dimension,
                tag + weight_str(la) +
                    ": multiplicity bound vs descriptor dimension");

      // criterion 8: Weyl dimension oracle and irreducible bounds
      Int weyl_dim = weyl_generic_dim(*rs, la).eval_one();
      c8.expect(weyl_dim == oracles::weyl_dimension_product(*rs, la),
                tag + weight_str(la) + ": classical dimension mismatch");
      Int irr_dim = irreducible_generic_dim(table, la).eval_one();
      c8.expect(irr_dim > 0 && irr_dim <= weyl_dim,
                tag + weight_str(la) + ": irreducible dimension out of range");
    }

    // criterion 6 fixed points for this configuration
    Weight steinberg{CoordVec(cfg.rank, cfg.ell - 1)};
    SupportVarietyDescriptor st =
        irreducible_support(*rs, steinberg, cfg.ell, ParamMode::Quantum);
    std::vector<int> all(cfg.rank);
    for (int i = 0; i < cfg.rank; ++i) all[i] = i;
    c6.expect(st.J == all && st.dimension == 0,
              tag + "Steinberg weight descriptor");
    SupportVarietyDescriptor zero = irreducible_support(
        *rs, Weight{CoordVec(cfg.rank, 0)}, cfg.ell, ParamMode::Quantum);
    c6.expect(zero.J.empty() &&
                  zero.dimension == static_cast<long long>(rs->num_roots()),
              tag + "zero weight descriptor");
  }

  // --- criterion 3: lengths against the Cayley-graph oracle ---------------
  for (auto [type, rank, ell] : {std::tuple<char, int, long long>{'A', 1, 5},
                                 {'A', 2, 5},
                                 {'B', 2, 7}}) {
    auto rs = RootSystem::build(type, rank);
    AffineGroup group(rs, ell);
    auto dist = oracles::bfs_distances(group, 10);
    for (const AffineElement& w : oracles::bfs_elements(group, 10)) {
      c3.expect(group.length(w) == dist.at(group.key(w)),
                rs->name() + ": length vs BFS");
      Weight tfw = rs->fw_of_root(Root{w.theta});
      if (rs->is_dominant(tfw)) {
        Coord ht = 0;
        for (Coord c : w.theta) ht += c;
        c3.expect(group.length(w) == rs->length(w.x) + 2 * ht,
                  rs->name() + ": dominant translation formula");
      }
    }
  }

  // --- criterion 4, first half: finite reflection lengths -----------------
  for (auto [type, rank] :
       {std::pair<char, int>{'A', 1}, {'A', 2}, {'A', 3}, {'A', 4},
        {'B', 2}, {'B', 3}, {'B', 4}, {'C', 2}, {'C', 3}, {'C', 4},
        {'D', 4}, {'F', 4}, {'G', 2}}) {
    auto rs = RootSystem::build(type, rank);
    for (const Root& beta : rs->positive_roots())
      c4.expect(rs->length(rs->reflection(beta)) < 2 * rs->height(beta),
                rs->name() + ": reflection length bound");
  }

  // --- criterion 5: exhaustive parabolic scan, affine A1 and A2, l <= 8 ---
  for (auto [type, rank, ell] : {std::tuple<char, int, long long>{'A', 1, 5},
                                 {'A', 2, 5}}) {
    auto rs = RootSystem::build(type, rank);
    auto group = std::make_shared<AffineGroup>(rs, ell);
    KLTable table(group, 14);
    int ngens = rank + 1;
    auto elements = group->ball(8);
    for (int mask = 0; mask < (1 << ngens) - 1; ++mask) {
      std::vector<int> I;
      for (int i = 0; i < ngens; ++i)
        if (mask & (1 << i)) I.push_back(i);
      for (const AffineElement& w : elements) {
        if (!group->is_minimal_in_coset(w, I)) continue;
        for (const AffineElement& y : elements) {
          if (!group->is_minimal_in_coset(y, I)) continue;
          bool positive = true;
          KLPoly p;
          try {
            p = table.parabolic(I, y, w);  // throws if a coefficient < 0
          } catch (const InvariantViolationError&) {
            positive = false;
          }
          c5.expect(positive, rs->name() + ": negative parabolic coefficient");
          if (I.empty())
            c5.expect(p == table.kl(y, w), rs->name() + ": P^{empty} != P");
          if (y == w)
            c5.expect(p == KLPoly::one(), rs->name() + ": diagonal != 1");
        }
      }
    }
  }

  // --- criterion 9: prime-parameter mode, p = 5, type A2 ------------------
  {
    auto rs = RootSystem::build('A', 2);
    const long long p = 5;
    for (const Weight& la : sweep_box(2, 2 * p)) {
      Weight restricted = la;
      for (auto& c : restricted.fw) c %= p;
      SupportVarietyDescriptor full =
          irreducible_support(*rs, la, p, ParamMode::Modular);
      SupportVarietyDescriptor base =
          irreducible_support(*rs, restricted, p, ParamMode::Modular);
      c9.expect(full.J == base.J && full.dimension == base.dimension,
                "A2 p=5 " + weight_str(la) + ": restricted reduction");
      c9.expect(full.conditional_on_LCF && base.conditional_on_LCF,
                "A2 p=5 " + weight_str(la) + ": missing LCF flag");
    }
  }

  // --- report --------------------------------------------------------------
  std::vector<Criterion*> all = {&c1, &c2, &c3, &c4, &c5, &c6, &c7, &c8, &c9};
  bool ok = true;
  for (std::size_t i = 0; i < all.size(); ++i) {
    const Criterion& c = *all[i];
    std::cout << (c.pass() ? "[PASS]" : "[FAIL]") << " criterion " << (i + 1)
              << ": " << c.label << " (" << c.checked << " checks";
    if (c.failed > 0)
      std::cout << ", " << c.failed << " failed; first: " << c.first_failure;
    std::cout << ")\n";
    ok = ok && c.pass();
  }
  if (skip_g2)
    std::cout << "[NOTE] G2 sweep skipped via QSV_ACCEPT_SKIP_G2\n";
  return ok ? 0 : 1;
}
