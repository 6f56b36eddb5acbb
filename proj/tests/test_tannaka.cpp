#include <doctest.h>

#include <random>

#include "bc/tannaka.hpp"

using namespace bc;

namespace {

Datum bc_datum() { return make_datum(Kind::QmodZ); }

GroupElem qz(long long n, long long d) { return QmodZElem{Rat(n, d)}; }

GradedSpace gs(std::initializer_list<std::pair<GroupElem, int>> items) {
  GradedSpace v;
  for (const auto& [s, d] : items) v.add(s, d);
  return v;
}

}  // namespace

TEST_CASE("grading functors") {
  const Datum d = bc_datum();
  CHECK(functor_sigma_cat(d, 2, gs({{qz(1, 6), 1}, {qz(2, 3), 2}})) == gs({{qz(1, 3), 3}}));
  CHECK(functor_rho_cat(d, 2, gs({{qz(1, 3), 1}})) == gs({{qz(1, 6), 1}, {qz(2, 3), 1}}));
  CHECK(functor_rho_cat(d, 2, gs({{qz(0, 1), 2}})) ==
        gs({{qz(0, 1), 2}, {qz(1, 2), 2}}));

  const Datum germ = make_datum(Kind::GermAlphaOne);
  CHECK(functor_rho_cat(germ, 5, gs({{GermElem{Rat(2, 3)}, 1}})) ==
        gs({{GermElem{Rat(2, 15)}, 1}}));

  // pushing the pullback multiplies every dimension by alpha(n)
  for (Kind k : {Kind::QmodZ, Kind::PairSwitch}) {
    const Datum dk = make_datum(k);
    GradedSpace v;
    for (const auto& s : sample_elements(dk, 8, 5, 11u)) v.add(s, 2);
    for (long long n = 1; n <= 8; ++n) {
      CHECK(functor_sigma_cat(dk, n, functor_rho_cat(dk, n, v)) == v.scaled(alpha_of(dk, n)));
    }
  }

  const Datum w = make_datum(Kind::Weil, 4);
  CHECK_THROWS_AS(functor_rho_cat(w, 2, gs({{WeilElem{Rat(0), 1, 4}, 1}})), NotInImage);
}

TEST_CASE("diagonal automorphisms round-trip through eigenspaces") {
  const Datum d = bc_datum();
  const GradedSpace v = gs({{qz(0, 1), 1}, {qz(1, 6), 1}, {qz(2, 3), 2}});
  const AutPair a = grading_to_aut(d, v);
  REQUIRE(a.dim == 4);
  CHECK(a.mat[0] == Cyclo::from_rat(Rat(1)));
  CHECK(a.mat[5] == Cyclo::root(6, Rat(1, 6)));

  CHECK(eig_to_grading(d, a) == v);
  CHECK(eig_to_grading_float(d, a) == v);

  // same spectrum presented off-diagonal
  AutPair b;
  b.dim = 2;
  const Cyclo z3 = Cyclo::root(3, Rat(1, 3));
  const Cyclo one = Cyclo::from_rat(Rat(1));
  b.mat = {z3, one - z3, Cyclo{}, one};
  b.eigs = {qz(1, 3), qz(0, 1)};
  CHECK(eig_to_grading(d, b) == gs({{qz(1, 3), 1}, {qz(0, 1), 1}}));
  CHECK(eig_to_grading_float(d, b) == gs({{qz(1, 3), 1}, {qz(0, 1), 1}}));

  // nilpotent part on a repeated eigenvalue
  AutPair j;
  j.dim = 2;
  j.mat = {one, one, Cyclo{}, one};
  j.eigs = {qz(0, 1), qz(0, 1)};
  CHECK_THROWS_AS(eig_to_grading(d, j), NotDiagonalizable);
  CHECK_THROWS_AS(eig_to_grading_float(d, j), NotDiagonalizable);

  // free part has no root-of-unity eigenvalue to declare
  const Datum w = make_datum(Kind::Weil, 4);
  GradedSpace wv;
  wv.add(WeilElem{Rat(0), 1, 4}, 1);
  CHECK_THROWS_AS(grading_to_aut(w, wv), KindMismatch);
}

TEST_CASE("power map pushes the grading forward") {
  const Datum d = bc_datum();
  const AutPair a = grading_to_aut(d, gs({{qz(1, 6), 1}}));
  const AutPair f2 = frobenius(d, 2, a);
  CHECK(f2.mat[0] == Cyclo::root(3, Rat(1, 3)));
  REQUIRE(f2.eigs.size() == 1);
  CHECK(f2.eigs[0] == qz(1, 3));
  CHECK(eig_to_grading(d, f2) == gs({{qz(1, 3), 1}}));

  // cube of a sixth root lands at the half turn
  const AutPair f3 = frobenius(d, 3, a);
  CHECK(f3.mat[0] == Cyclo::root(2, Rat(1, 2)));
  CHECK(f3.eigs[0] == qz(1, 2));
}

TEST_CASE("companion splitting of eigenvalues") {
  const Datum d = bc_datum();

  // trivial weight: the 2x2 block is the plain swap
  const AutPair a0 = grading_to_aut(d, gs({{qz(0, 1), 1}}));
  const AutPair v2 = verschiebung(d, 2, a0);
  REQUIRE(v2.dim == 2);
  const Cyclo one = Cyclo::from_rat(Rat(1));
  CHECK(v2.mat[0].is_zero());
  CHECK(v2.mat[1] == one);
  CHECK(v2.mat[2] == one);
  CHECK(v2.mat[3].is_zero());
  REQUIRE(v2.eigs.size() == 2);
  CHECK(v2.eigs[0] == qz(0, 1));
  CHECK(v2.eigs[1] == qz(1, 2));

  // characteristic polynomials, exact
  CHECK(char_poly(v2.mat, 2) ==
        std::vector<Cyclo>{-one, Cyclo{}, one});
  const Cyclo z3 = Cyclo::root(3, Rat(1, 3));
  const std::vector<Cyclo> comp = {Cyclo{}, z3, one, Cyclo{}};
  CHECK(char_poly(comp, 2) == std::vector<Cyclo>{-z3, Cyclo{}, one});

  CHECK(eval_poly(char_poly(comp, 2), Cyclo::root(6, Rat(1, 6))).is_zero());
  CHECK_FALSE(eval_poly(char_poly(comp, 2), one).is_zero());

  // splitting members of the fiber are exactly the roots
  for (long long n : {2LL, 3LL, 4LL}) {
    CHECK(check_verschiebung_diag(d, n, qz(1, 3)));
    CHECK(check_verschiebung_diag(d, n, qz(1, 12)));
    CHECK(check_verschiebung_diag(d, n, qz(0, 1)));
  }

  // Frobenius after Verschiebung scales gradings by alpha(n)
  const AutPair a = grading_to_aut(d, gs({{qz(1, 3), 1}, {qz(1, 4), 2}}));
  const AutPair fv = frobenius(d, 3, verschiebung(d, 3, a));
  CHECK(eig_to_grading(d, fv) == gs({{qz(1, 3), 3}, {qz(1, 4), 6}}));
}

TEST_CASE("orbit Hom dimensions agree along both counts") {
  CHECK(orbit_hom_dim(2, {{0, 1}}, {{2, 1}}) == std::pair{1LL, 1LL});
  CHECK(orbit_hom_dim(2, {{0, 1}}, {{1, 1}}) == std::pair{0LL, 0LL});
  CHECK(orbit_hom_dim(3, {{-3, 2}, {1, 1}}, {{0, 1}, {6, 1}, {4, 2}}) == std::pair{6LL, 6LL});

  std::mt19937_64 rng(20260819ULL);
  std::uniform_int_distribution<long long> wt(-10, 10);
  std::uniform_int_distribution<int> dim(0, 3);
  std::uniform_int_distribution<long long> nn(1, 6);
  for (int trial = 0; trial < 50; ++trial) {
    std::map<long long, int> v, w;
    for (int i = 0; i < 6; ++i) {
      if (int dv = dim(rng); dv > 0) v[wt(rng)] += dv;
      if (int dw = dim(rng); dw > 0) w[wt(rng)] += dw;
    }
    const auto [direct, folded] = orbit_hom_dim(nn(rng), v, w);
    CHECK(direct == folded);
  }
}

TEST_CASE("exact rank over a cyclotomic field") {
  const Cyclo one = Cyclo::from_rat(Rat(1));
  const Cyclo z3 = Cyclo::root(3, Rat(1, 3));
  // second row is z3 times the first
  CHECK(cyclo_rank({one, z3, z3, z3 * z3}, 2, 2) == 1);
  CHECK(cyclo_rank({one, z3, z3, one}, 2, 2) == 2);
  CHECK(cyclo_rank({Cyclo{}, Cyclo{}, Cyclo{}, Cyclo{}}, 2, 2) == 0);

  // division: random nonzero elements invert exactly
  std::mt19937_64 rng(7u);
  std::uniform_int_distribution<int> coeff(-3, 3);
  for (int trial = 0; trial < 20; ++trial) {
    Cyclo x;
    for (int i = 0; i < 4; ++i) {
      x += Cyclo::root(12, Rat(i, 12)).scaled(BigRat(coeff(rng)));
    }
    if (x.is_zero()) continue;
    CHECK(x * x.inverse() == one);
    CHECK(x / x == one);
  }
  CHECK_THROWS_AS(Cyclo{}.inverse(), std::domain_error);
}
