#include <doctest.h>

#include "oracles.hpp"
#include "qsv/kl.hpp"

using namespace qsv;

namespace {

KLTable make_table(char type, int rank, long long ell, long long cap = 14) {
  return KLTable(std::make_shared<AffineGroup>(RootSystem::build(type, rank), ell),
                 cap);
}

}  // namespace

TEST_CASE("base cases of the recursion") {
  KLTable t = make_table('A', 2, 5);
  const AffineGroup& g = t.group();
  AffineElement w = g.from_word({1, 0, 2});
  CHECK(t.kl(w, w) == KLPoly::one());
  CHECK(t.kl(g.identity(), w) == KLPoly::one());
  // y not below w vanishes
  AffineElement y = g.from_word({1, 0, 2, 1});
  CHECK(t.kl(y, w).is_zero());
}

TEST_CASE("infinite dihedral: every polynomial is 1") {
  KLTable t = make_table('A', 1, 5);
  const AffineGroup& g = t.group();
  auto elements = oracles::bfs_elements(g, 8);
  for (const AffineElement& y : elements)
    for (const AffineElement& w : elements) {
      if (!g.bruhat_leq(y, w)) {
        CHECK(t.kl(y, w).is_zero());
      } else {
        CHECK(t.kl(y, w) == KLPoly::one());
      }
    }
}

TEST_CASE("bar invariance of the assembled KL basis elements") {
  // Independent Hecke-algebra certification of the table: C'_w built from
  // the computed polynomials must be fixed by the bar involution.  Radius 5
  // reaches well past the first nontrivial polynomials (length 4).
  for (auto [type, rank, ell] : {std::tuple<char, int, long long>{'A', 2, 5},
                                 {'B', 2, 7}}) {
    KLTable t = make_table(type, rank, ell);
    const AffineGroup& g = t.group();
    for (const AffineElement& w : oracles::bfs_elements(g, 5))
      CHECK(oracles::kl_basis_bar_invariant(t, w));
  }
}

TEST_CASE("first nontrivial polynomials in affine rank two") {
  // The shortest non-rationally-smooth elements of affine A2 sit at
  // length 4, with P = 1 + q below them in the sandwich pattern s.x.s.
  KLTable t = make_table('A', 2, 5);
  const AffineGroup& g = t.group();
  KLPoly one_plus_q{{1, 1}};
  AffineElement w = g.from_word({0, 2, 1, 0});
  CHECK(t.kl(g.identity(), w) == one_plus_q);
  CHECK(t.kl(g.from_word({0}), w) == one_plus_q);
  // the other atoms below w stay trivial
  CHECK(t.kl(g.from_word({2}), w) == KLPoly::one());
  CHECK(t.kl(g.from_word({1}), w) == KLPoly::one());
  // and nothing nontrivial exists below length 4
  for (const AffineElement& v : oracles::bfs_elements(g, 3))
    for (const AffineElement& y : oracles::bfs_elements(g, 3))
      CHECK(t.kl(y, v).degree() <= 0);
}

TEST_CASE("degree bound and constant term") {
  KLTable t = make_table('B', 2, 7);
  const AffineGroup& g = t.group();
  auto elements = oracles::bfs_elements(g, 6);
  for (const AffineElement& w : elements)
    for (const AffineElement& y : elements) {
      KLPoly p = t.kl(y, w);
      if (p.is_zero()) continue;
      CHECK(p.coeffs[0] == 1);
      if (!(y == w))
        CHECK(2 * p.degree() <= g.length(w) - g.length(y) - 1);
    }
}

TEST_CASE("parabolic polynomials") {
  KLTable t = make_table('A', 1, 5);
  const AffineGroup& g = t.group();

  // I empty: the alternating sum collapses to the ordinary polynomial
  AffineElement y = g.from_word({1});
  AffineElement w = g.from_word({1, 0, 1});
  CHECK(t.parabolic({}, y, w) == t.kl(y, w));

  // P^{I,-1}_{w,w} = 1 and vanishing above w
  std::vector<int> I{0};
  AffineElement wm = g.from_word({0, 1});  // minimal in its {s_0}-coset
  CHECK(t.parabolic(I, wm, wm) == KLPoly::one());
  CHECK(t.parabolic(I, wm, g.from_word({1})).is_zero());

  // non-minimal inputs are rejected
  AffineElement bad = g.from_word({0});  // l(bad * s_0) < l(bad)
  CHECK_THROWS_AS(t.parabolic(I, bad, wm), InvalidInputError);
}

TEST_CASE("parabolic positivity scan at small length") {
  for (auto [type, rank, ell] : {std::tuple<char, int, long long>{'A', 1, 5},
                                 {'A', 2, 5}}) {
    KLTable t = make_table(type, rank, ell);
    const AffineGroup& g = t.group();
    int ngens = g.num_generators();
    auto elements = oracles::bfs_elements(g, 5);
    // all proper subsets I of the generators
    for (int mask = 0; mask < (1 << ngens) - 1; ++mask) {
      std::vector<int> I;
      for (int i = 0; i < ngens; ++i)
        if (mask & (1 << i)) I.push_back(i);
      for (const AffineElement& w : elements) {
        if (!g.is_minimal_in_coset(w, I)) continue;
        for (const AffineElement& y : elements) {
          if (!g.is_minimal_in_coset(y, I)) continue;
          KLPoly p = t.parabolic(I, y, w);  // throws on a negative coefficient
          if (y == w) CHECK(p == KLPoly::one());
          if (!g.bruhat_leq(y, w)) CHECK(p.is_zero());
        }
      }
    }
  }
}

TEST_CASE("capacity cap is an explicit error") {
  KLTable t = make_table('A', 1, 5, 3);
  const AffineGroup& g = t.group();
  AffineElement w = g.from_word({1, 0, 1, 0});
  CHECK_THROWS_AS(t.kl(g.identity(), w), CapacityError);
  // under the cap still fine
  CHECK(t.kl(g.identity(), g.from_word({1, 0, 1})) == KLPoly::one());
}

TEST_CASE("cache transparency: warm results equal cold results") {
  KLTable cold = make_table('A', 2, 5);
  KLTable warm = make_table('A', 2, 5);
  const AffineGroup& g = cold.group();
  auto elements = oracles::bfs_elements(g, 5);

  // compute everything once to fill, then replay against a fresh table
  for (const AffineElement& w : elements)
    for (const AffineElement& y : elements) (void)cold.kl(y, w);

  for (const KLTable::Entry& e : cold.export_entries())
    warm.import_entry(e.y, e.w, e.p);
  CHECK(warm.stats().loaded > 0);

  for (const AffineElement& w : elements)
    for (const AffineElement& y : elements)
      CHECK(cold.kl(y, w) == warm.kl(y, w));

  // clearing and recomputing changes nothing
  std::uint64_t before = cold.stats().computed;
  cold.clear();
  for (const AffineElement& w : elements)
    for (const AffineElement& y : elements) (void)cold.kl(y, w);
  CHECK(cold.stats().computed == before);
}
