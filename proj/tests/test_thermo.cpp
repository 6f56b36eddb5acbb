#include <cmath>
#include <complex>

#include <doctest.h>

#include "bc/thermo.hpp"

using namespace bc;

namespace {

const GHom kArith{};  // g(n) = n

double cdev(std::complex<double> a, std::complex<double> b) { return std::abs(a - b); }

}  // namespace

TEST_CASE("compensated series against classical values") {
  const auto z2 = riemann_zeta(2.0, 3e-8);
  CHECK(std::abs(z2.real() - 1.6449340668482264) <= z2.tail_bound + 1e-14);
  CHECK(z2.tail_bound <= 3e-8);

  // dilogarithm at the primitive cube root of unity, real part -pi^2/18
  const std::complex<double> zeta3{std::cos(2.0 * std::numbers::pi / 3.0),
                                   std::sin(2.0 * std::numbers::pi / 3.0)};
  const auto li = polylog(2.0, zeta3, 3e-8);
  CHECK(cdev(li.value, {-0.5483113556160754, 0.6766277376064357}) <= li.tail_bound + 1e-14);

  const auto lm = polylog(2.0, {-1.0, 0.0}, 3e-8);
  CHECK(std::abs(lm.value.real() - -0.8224670334241132) <= lm.tail_bound + 1e-14);
  CHECK(std::abs(lm.value.imag()) == 0.0);

  // interior point with the closed dilogarithm value pi^2/12 - ln(2)^2/2
  const auto lh = polylog(2.0, {0.5, 0.0}, 1e-12);
  const double li_half =
      std::numbers::pi * std::numbers::pi / 12.0 - 0.5 * std::log(2.0) * std::log(2.0);
  CHECK(std::abs(lh.value.real() - li_half) <= lh.tail_bound + 1e-14);
  CHECK(lh.terms < 100);

  const auto l0 = polylog(2.0, {0.0, 0.0}, 1e-12);
  CHECK(l0.value == std::complex<double>{0.0, 0.0});
  CHECK(l0.terms == 0);

  CHECK_THROWS_AS(riemann_zeta(1.0, 1e-8), DivergentParameter);
  CHECK_THROWS_AS(riemann_zeta(0.5, 1e-8), DivergentParameter);
  CHECK_THROWS_AS(polylog(0.9, {1.0, 0.0}, 1e-8), DivergentParameter);
  CHECK_THROWS_AS(polylog(2.0, {1.5, 0.0}, 1e-8), DivergentParameter);
}

TEST_CASE("euler product against the smooth dirichlet sum") {
  const GHom g = g_from_primes({{2, 3.0}, {3, 5.0}});
  CHECK(g.value(12) == doctest::Approx(45.0).epsilon(1e-12));

  const auto ec = euler_partition(g, 2.0, 1e-12);
  CHECK(std::abs(ec.product - ec.series) <= 1e-10);
  CHECK(ec.terms > 16);

  const auto eb = euler_partition(kArith, 2.0, 1e-12);
  CHECK(eb.product == 1.0);
  CHECK(eb.series == 1.0);

  CHECK_THROWS_AS(euler_partition(g, 0.0, 1e-12), DivergentParameter);
}

TEST_CASE("convergence exponent of the weights") {
  CHECK(beta0_estimate(kArith) == 1.0);
  // finitely many overridden primes leave the exponent at 1
  CHECK(std::abs(beta0_estimate(g_from_primes({{2, 3.0}, {3, 5.0}})) - 1.0) < 0.05);
  CHECK(std::abs(beta0_estimate(g_from_primes({{2, 1.5}})) - 1.0) < 0.05);
}

TEST_CASE("partition function closed form against the trace") {
  const Datum d = make_datum(Kind::QmodZ);
  const auto closed = partition_closed(d, kArith, 2.0, 1e-7);
  CHECK(std::abs(closed.real() - 1.6449340668482264) <= closed.tail_bound + 1e-14);

  const auto trace = partition_trace(d, kArith, 2.0, TruncSpec{1'000'000, 0});
  CHECK(std::abs(closed.real() - trace.real()) <= closed.tail_bound + trace.tail_bound);
  CHECK(trace.real() <= closed.real() + closed.tail_bound);

  // window monotonicity
  const auto w1 = partition_trace(d, kArith, 2.0, TruncSpec{1000, 0});
  const auto w2 = partition_trace(d, kArith, 2.0, TruncSpec{10'000, 0});
  CHECK(w1.real() < w2.real());
  CHECK(w2.real() < trace.real());

  CHECK_THROWS_AS(partition_closed(d, kArith, 1.0, 1e-7), DivergentParameter);

  const Datum germ = make_datum(Kind::GermAlphaOne);
  CHECK_THROWS_AS(partition_closed(germ, kArith, 2.0, 1e-7), DivergentParameter);
  const auto gt = partition_trace(germ, kArith, 2.0, TruncSpec{30, 0});
  CHECK(gt.terms > 0);
  CHECK(std::isinf(gt.tail_bound));
}

TEST_CASE("the two Weil ladder forms agree") {
  const Datum d = make_datum(Kind::Weil, 4);
  const double betas[] = {2.0, 3.0, 5.0};
  const double tols[] = {1e-6, 1e-9, 1e-10};
  for (int i = 0; i < 3; ++i) {
    const auto fn = partition_function_form(d, kArith, betas[i], tols[i]);
    const auto pl = partition_polylog_form(d, betas[i], tols[i]);
    CHECK(std::abs(fn.real() - pl.real()) <= fn.tail_bound + pl.tail_bound);
  }

  // same-range comparison: the window factor at depth 200 matches the full
  // geometric factor to machine precision
  const auto fn200 = partition_function_form(d, kArith, 3.0, 1e-10, 200);
  const auto tr200 = partition_trace(d, kArith, 3.0, TruncSpec{200, 200});
  CHECK(std::abs(fn200.real() - tr200.real()) <= 1e-8);

  CHECK_THROWS_AS(partition_polylog_form(make_datum(Kind::QmodZ), 3.0, 1e-8), KindMismatch);
}

TEST_CASE("lattice chain window factorization") {
  const Datum d4 =
      make_datum(Kind::AlgNumModel, 0, {Rat(2), Rat(3), Rat(5), Rat(7)});
  const auto tr = partition_trace(d4, kArith, 2.0, TruncSpec{64, 24});
  const double fac = partition_trace_factored(d4, kArith, 2.0, TruncSpec{64, 24});
  CHECK(std::abs(tr.real() - fac) <= 1e-10);

  const Datum d2 = make_datum(Kind::AlgNumModel, 0, {Rat(2), Rat(3)});
  const auto tr2 = partition_trace(d2, kArith, 2.0, TruncSpec{48, 16});
  CHECK(std::abs(tr2.real() - partition_trace_factored(d2, kArith, 2.0, TruncSpec{48, 16})) <=
        1e-10);

  // the closed form runs over every prime progression, the generator form
  // only over the declared ones; the defect is small but genuinely positive
  const auto closed = partition_closed(d4, kArith, 4.0, 1e-10);
  const auto fn = partition_function_form(d4, kArith, 4.0, 1e-10);
  const double defect = closed.real() - fn.real();
  CHECK(defect > 1e-6);
  CHECK(defect < 1e-3);

  CHECK_THROWS_AS(partition_trace_factored(make_datum(Kind::RankTwo), kArith, 2.0, TruncSpec{8, 0}),
                  KindMismatch);
}

TEST_CASE("custom weights flow through both routes") {
  const GHom g = g_from_primes({{2, 3.0}, {3, 5.0}});
  const Datum d = make_datum(Kind::QmodZ);

  const auto closed = partition_closed(d, g, 2.0, 1e-7);
  const auto trace = partition_trace(d, g, 2.0, TruncSpec{100'000, 0});
  CHECK(std::abs(closed.real() - trace.real()) <= closed.tail_bound + trace.tail_bound);

  const GroupElem third = QmodZElem{Rat(1, 3)};
  const auto gc = gibbs_closed(d, g, third, 3.0, 1e-9);
  const auto gt = gibbs_trace_elem(d, g, third, 3.0, TruncSpec{100'000, 0});
  CHECK(cdev(gc.value, gt.value) <= gc.tail_bound + gt.tail_bound);
}

TEST_CASE("gibbs states match their closed forms at beta 2") {
  const GroupElem third = QmodZElem{Rat(1, 3)};
  const std::complex<double> li_ratio{-1.0 / 3.0, 0.4113403395571272};

  // arithmetic case: closed form is the dilogarithm ratio
  const Datum bc_d = make_datum(Kind::QmodZ);
  const auto cl = gibbs_closed(bc_d, kArith, third, 2.0, 1e-7);
  CHECK(cdev(cl.value, li_ratio) <= cl.tail_bound + 1e-14);
  const auto tr = gibbs_trace_elem(bc_d, kArith, third, 2.0, TruncSpec{2'000'000, 0});
  CHECK(cdev(tr.value, li_ratio) <= 1e-6);
  CHECK(cdev(cl.value, tr.value) <= 1e-6);

  const Datum wz = make_datum(Kind::WeilZero, 3);
  const auto wzc = gibbs_closed(wz, kArith, third, 2.0, 1e-7);
  const auto wzt = gibbs_trace_elem(wz, kArith, third, 2.0, TruncSpec{1'000'000, 0});
  CHECK(cdev(wzc.value, wzt.value) <= 1e-6);

  const Datum w4 = make_datum(Kind::Weil, 4);
  const GroupElem half = weil_pack(Rat(1, 2), 0, 4);
  const auto wc = gibbs_closed(w4, kArith, half, 2.0, 1e-7);
  const auto wt = gibbs_trace_elem(w4, kArith, half, 2.0, TruncSpec{450'000, 12});
  CHECK(cdev(wc.value, wt.value) <= 1e-6);

  const Datum r2 = make_datum(Kind::RankTwo);
  const GroupElem quart = PairElem{Rat(1, 4), Rat(1, 4)};
  const auto rc = gibbs_closed(r2, kArith, quart, 2.0, 1e-9);
  const auto rt = gibbs_trace_elem(r2, kArith, quart, 2.0, TruncSpec{100'000, 0});
  CHECK(cdev(rc.value, rt.value) <= 1e-6);

  // beta = 1 on the diagonal pair hits Li_2(-1)/zeta(2) = -1/2 on the nose
  const auto rm = gibbs_closed(r2, kArith, quart, 1.0, 3e-8);
  CHECK(cdev(rm.value, {-0.5, 0.0}) <= rm.tail_bound + 1e-14);
  const auto rm_tr = gibbs_trace_elem(r2, kArith, quart, 1.0, TruncSpec{1'000'000, 0});
  CHECK(cdev(rm_tr.value, {-0.5, 0.0}) <= 1e-6);

  // grid kinds with fast-converging exponents
  const Datum wh = make_datum(Kind::WeilHat, 9);
  const GroupElem whel = WeilHatElem{Rat(1, 6), Rat(1, 2), 9};
  const auto hc = gibbs_closed(wh, kArith, whel, 2.0, 1e-10);
  const auto ht = gibbs_trace_elem(wh, kArith, whel, 2.0, TruncSpec{30'000, 0});
  CHECK(cdev(hc.value, ht.value) <= 1e-6);

  const Datum ps = make_datum(Kind::PairSwitch);
  const GroupElem pel = PairElem{Rat(1, 3), Rat(1, 5)};
  const auto pc = gibbs_closed(ps, kArith, pel, 2.0, 1e-10);
  const auto pt = gibbs_trace_elem(ps, kArith, pel, 2.0, TruncSpec{30'000, 0});
  CHECK(cdev(pc.value, pt.value) <= 1e-6);
}

TEST_CASE("identity states and annihilated elements are exact") {
  const Datum bc_d = make_datum(Kind::QmodZ);
  const auto id_cl = gibbs_closed(bc_d, kArith, QmodZElem{Rat(0)}, 2.0, 1e-7);
  CHECK(id_cl.value.real() == 1.0);
  CHECK(id_cl.value.imag() == 0.0);
  const auto id_tr = gibbs_trace_elem(bc_d, kArith, QmodZElem{Rat(0)}, 2.0, TruncSpec{2000, 0});
  CHECK(id_tr.value.real() == 1.0);
  CHECK(id_tr.value.imag() == 0.0);

  const Datum w4 = make_datum(Kind::Weil, 4);
  const auto wid = gibbs_closed(w4, kArith, weil_pack(Rat(0), 0, 4), 2.0, 1e-7);
  CHECK(wid.value.real() == 1.0);
  CHECK(wid.value.imag() == 0.0);

  const Datum an = make_datum(Kind::AlgNumModel, 0, {Rat(2), Rat(3)});
  const auto aid = gibbs_closed(an, kArith, AlgNumElem{Rat(0), {Rat(0), Rat(0)}}, 4.0, 1e-9);
  CHECK(aid.value.real() == 1.0);
  CHECK(aid.value.imag() == 0.0);

  // nonzero lattice weight annihilates the state exactly, both routes
  const GroupElem heavy = weil_pack(Rat(1, 3), 1, 4);
  const auto hz = gibbs_closed(w4, kArith, heavy, 2.0, 1e-7);
  CHECK(hz.value == std::complex<double>{0.0, 0.0});
  CHECK(hz.tail_bound == 0.0);
  const auto ht = gibbs_trace_elem(w4, kArith, heavy, 2.0, TruncSpec{500, 16});
  CHECK(ht.value == std::complex<double>{0.0, 0.0});

  const GroupElem free_part = AlgNumElem{Rat(1, 3), {Rat(1), Rat(0)}};
  CHECK(gibbs_closed(an, kArith, free_part, 4.0, 1e-9).value ==
        std::complex<double>{0.0, 0.0});
  CHECK(gibbs_trace_elem(an, kArith, free_part, 4.0, TruncSpec{32, 12}).value ==
        std::complex<double>{0.0, 0.0});

  // off-diagonal monomials have no diagonal support at all
  const GenWord off{GenS{QmodZElem{Rat(1, 3)}}, GenMu{2}, GenMuStar{3}};
  const auto od = gibbs_trace(bc_d, kArith, off, 2.0, TruncSpec{10'000, 0}, EmbedSpec{});
  CHECK(od.value == std::complex<double>{0.0, 0.0});

  // diagonal isometry pair: state value sum over multiples of 2
  const GenWord mm{GenMu{2}, GenMuStar{2}};
  const auto pm = gibbs_trace(bc_d, kArith, mm, 2.0, TruncSpec{1'000'000, 0}, EmbedSpec{});
  CHECK(std::abs(pm.value.real() - 0.25) <= 1e-6);
  CHECK(pm.value.imag() == 0.0);

  CHECK_THROWS_AS(gibbs_closed(make_datum(Kind::GermAlphaOne), kArith, GermElem{Rat(1, 2)}, 2.0,
                               1e-8),
                  DivergentParameter);
}

TEST_CASE("zero temperature limit of the gibbs states") {
  const Datum bc_d = make_datum(Kind::QmodZ);
  const GroupElem third = QmodZElem{Rat(1, 3)};
  const std::complex<double> ground = ground_value(bc_d, third);
  CHECK(cdev(ground, {-0.5, 0.8660254037844386}) <= 1e-15);

  double prev = 1.0;
  for (double beta : {10.0, 20.0, 40.0}) {
    const auto st = gibbs_closed(bc_d, kArith, third, beta, 1e-14);
    const double dev = cdev(st.value, ground);
    CHECK(dev < prev);
    prev = dev;
  }
  CHECK(prev <= 1e-8);

  CHECK(ground_value(bc_d, QmodZElem{Rat(0)}) == std::complex<double>{1.0, 0.0});

  const auto fifth = ground_value(bc_d, QmodZElem{Rat(2, 5)});
  CHECK(cdev(fifth, {-0.8090169943749473, 0.5877852522924732}) <= 1e-15);

  // nontrivial lattice weight means no invariant vacuum component
  const Datum w4 = make_datum(Kind::Weil, 4);
  CHECK(ground_value(w4, weil_pack(Rat(1, 3), 1, 4)) == std::complex<double>{0.0, 0.0});
  CHECK(cdev(ground_value(w4, weil_pack(Rat(1, 4), 0, 4)), {0.0, 1.0}) <= 1e-15);

  const Datum wh = make_datum(Kind::WeilHat, 4);
  CHECK(cdev(ground_value(wh, WeilHatElem{Rat(1, 4), Rat(3, 2), 4}), {1.0, 0.0}) <= 1e-15);

  // the scale family character depends on the embedding slope
  const Datum germ = make_datum(Kind::GermAlphaOne);
  const auto gg = ground_value(germ, GermElem{Rat(1, 5)}, EmbedSpec{GaloisElem{1, 1, +1}, Rat(1, 2)});
  CHECK(cdev(gg, {std::cos(std::numbers::pi / 5.0), std::sin(std::numbers::pi / 5.0)}) <= 1e-15);
}

TEST_CASE("galois pullback of the gibbs states") {
  const Datum bc_d = make_datum(Kind::QmodZ);
  CHECK(galois_pullback_check(bc_d, kArith, GaloisElem{27720, 13, +1}, 3.0,
                              TruncSpec{200'000, 0}, 12, 10, 20260819) <= 1e-10);

  const Datum w4 = make_datum(Kind::Weil, 4);
  const GaloisElem flip{24, 13, -1};
  double dev = 0.0;
  for (long long k : {1, 5, 7, 11}) {
    const GroupElem s = weil_pack(Rat(k, 12), 0, 4);
    const auto lhs = gibbs_closed(w4, kArith, galois_apply(w4, flip, s), 4.0, 1e-12);
    const auto rhs = gibbs_trace(w4, kArith, GenWord{GenS{s}}, 4.0, TruncSpec{4000, 20},
                                 EmbedSpec{flip, Rat(1)});
    dev = std::max(dev, cdev(lhs.value, rhs.value));
  }
  CHECK(dev <= 1e-10);

  const Datum wh4 = make_datum(Kind::WeilHat, 4);
  CHECK(galois_pullback_check(wh4, kArith, GaloisElem{55440, 13, +1}, 2.0, TruncSpec{3000, 0}, 12,
                              8, 20260819) <= 1e-10);

  const Datum r2 = make_datum(Kind::RankTwo);
  CHECK(galois_pullback_check(r2, kArith, GaloisElem{27720, 19, +1}, 2.0, TruncSpec{3000, 0}, 12,
                              8, 9) <= 1e-10);

  // free generators are untouched; the twisted trace reproduces itself
  const Datum an = make_datum(Kind::AlgNumModel, 0, {Rat(2), Rat(3)});
  CHECK(galois_pullback_check(an, kArith, GaloisElem{27720, 23, +1}, 2.0, TruncSpec{48, 16}, 12, 8,
                              11) <= 1e-12);

  // zero temperature: vacuum phases agree exactly as rationals
  for (long long u : {13, 17, 23}) {
    const GaloisElem gam{27720, u, +1};
    for (long long k = 1; k <= 11; ++k)
      CHECK(galois_ground_exact(bc_d, gam, QmodZElem{Rat(k, 12)}));
    CHECK(galois_ground_exact(w4, GaloisElem{24, u, -1}, weil_pack(Rat(5, 12), 0, 4)));
  }

  // units with a sign twist need a rational square root of q
  const Datum wh8 = make_datum(Kind::WeilHat, 8);
  CHECK_THROWS_AS(
      galois_pullback_check(wh8, kArith, GaloisElem{24, 5, -1}, 2.0, TruncSpec{100, 0}, 4, 2, 3),
      NotAdmissible);
}
