#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fuchs/continuation.hpp"
#include "fuchs/diffop.hpp"
#include "fuchs/frobenius.hpp"
#include "fuchs/registry.hpp"

using namespace fuchs;

namespace {

Poly<Rat> P(std::initializer_list<long> cs) {
  std::vector<Rat> v;
  for (long c : cs) v.emplace_back(c);
  return Poly<Rat>(std::move(v));
}

BigFloat tol(long bits) { return ldexp2(BigFloat(1L, 192), -bits); }

BigComplex pt(const Rat& re, const Rat& im, mpfr_prec_t prec = 224) {
  return BigComplex(re, im, prec);
}

BigFloat id_deviation(const CMat& m) {
  mpfr_prec_t prec = m[0][0].precision();
  BigFloat dev(0L, prec);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      BigComplex want = i == j ? BigComplex(1L, prec) : BigComplex(prec);
      dev = max(dev, abs(m[i][j] - want));
    }
  return dev;
}

std::pair<BigComplex, BigComplex> eig2(const CMat& m) {
  BigComplex tr = m[0][0] + m[1][1];
  BigComplex dt = cdet(m);
  BigComplex disc = sqrt(tr * tr - BigComplex(4L, tr.precision()) * dt);
  return {(tr + disc) / 2L, (tr - disc) / 2L};
}

// relative match against a printed 4-digit reference
bool close_rel(const BigComplex& got, const BigComplex& ref, double rel) {
  BigFloat lim = abs(ref) * BigFloat(rel, ref.precision());
  return abs(got - ref) < lim;
}

AlgebraicPoint find_alg_point(const DiffOp& L, bool large) {
  for (const auto& s : singular_points(L))
    if (s.kind == AlgebraicPoint::Kind::algebraic &&
        ((s.to_complex(64).re > BigFloat(1L, 64)) == large))
      return s;
  throw error("algebraic point not found");
}

}  // namespace

TEST_CASE("path algebra and trivial transports") {
  DiffOp eq5 = registry_operator("eq5");

  // one-point path
  TransitionMatrix t0 =
      transition(eq5, Path({pt(Rat(1, 100), Rat(0))}), 192);
  CHECK(id_deviation(t0.m).is_zero());

  // out and back
  Path out({pt(Rat(1, 100), Rat(0)), pt(Rat(0), Rat(1, 10)),
            pt(Rat(1, 2), Rat(1, 2))});
  Path loop = out.then(out.reversed());
  CHECK(loop.is_closed());
  TransitionMatrix t1 = transition(eq5, loop, 192);
  CHECK(id_deviation(t1.m) < tol(96));

  // composition across a waypoint
  Path p1({pt(Rat(1, 100), Rat(0)), pt(Rat(0), Rat(1, 10))});
  Path p2({pt(Rat(0), Rat(1, 10)), pt(Rat(1, 2), Rat(1, 2))});
  TransitionMatrix whole = transition(eq5, p1.then(p2), 192);
  TransitionMatrix a = transition(eq5, p1, 192);
  TransitionMatrix b = transition(eq5, p2, 192);
  CMat prod = b.m * a.m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      CHECK(abs(whole.m[i][j] - prod[i][j]) < tol(140));

  // conjugation symmetry for a real-rational operator
  TransitionMatrix ac = transition(eq5, p1.conjugated(), 192);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      CHECK(abs(conj(a.m[i][j]) - ac.m[i][j]) < tol(140));

  // homotopic deformation, same side of every singularity
  Path pB({pt(Rat(1, 100), Rat(0)), pt(Rat(1, 50), Rat(1, 20)),
           pt(Rat(0), Rat(1, 10))});
  TransitionMatrix aB = transition(eq5, pB, 192);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      CHECK(abs(a.m[i][j] - aB.m[i][j]) < tol(140));
}

TEST_CASE("transport of explicit exponential solutions") {
  // y' = y over one long singularity-free step
  DiffOp L1({P({-1}), P({1})});
  TransitionMatrix e1 =
      transition(L1, Path({pt(Rat(0), Rat(0)), pt(Rat(1), Rat(0))}), 192);
  BigFloat e = exp(BigFloat(1L, 224));
  CHECK(abs(e1.m[0][0] - BigComplex(e, BigFloat(0L, 224))) < tol(160));

  // y'' = y: frame map is [[cosh, sinh], [sinh, cosh]] and Abel gives det 1
  DiffOp L2({P({-1}), P({}), P({1})});
  TransitionMatrix h =
      transition(L2, Path({pt(Rat(0), Rat(0)), pt(Rat(1), Rat(0))}), 192);
  BigFloat ch = (e + BigFloat(1L, 224) / e) / 2L;
  BigFloat sh = (e - BigFloat(1L, 224) / e) / 2L;
  CHECK(abs(h.m[0][0] - BigComplex(ch, BigFloat(0L, 224))) < tol(160));
  CHECK(abs(h.m[0][1] - BigComplex(sh, BigFloat(0L, 224))) < tol(160));
  CHECK(abs(h.m[1][0] - BigComplex(sh, BigFloat(0L, 224))) < tol(160));
  CHECK(abs(h.m[1][1] - BigComplex(ch, BigFloat(0L, 224))) < tol(160));
  CHECK(abs(cdet(h.m) - BigComplex(1L, 224)) < tol(96));
}

TEST_CASE("seeding frames from local expansions") {
  DiffOp eq5 = registry_operator("eq5");
  LocalBasis b0 = local_basis(eq5, AlgebraicPoint::from_rat(Rat(0)), 120);
  const LocalSolution& nu = b0.solutions[0];

  // independent oracle: beta series times quartic carrier, evaluated at 1/100
  std::vector<Rat> beta =
      [&] {
        Recurrence R = coefficient_recurrence(registry_operator("dwork2"));
        std::vector<Rat> c{Rat(1)};
        for (long n = 0; c.size() < 120; ++n) {
          Rat acc(0);
          for (size_t j = 1; j < R.taps.size(); ++j) {
            long idx = n + 1 - static_cast<long>(j);
            if (idx >= 0) acc += R.taps[j].eval(Rat(n)) * c[static_cast<size_t>(idx)];
          }
          c.push_back(-acc / R.taps[0].eval(Rat(n)));
        }
        return c;
      }();
  // (1 - 34x + x^2)^(1/4) by generalized binomials
  std::vector<Rat> carrier(120, Rat(0));
  carrier[0] = 1;
  {
    Poly<Rat> u = P({0, -34, 1});
    Poly<Rat> uk = Poly<Rat>::constant(Rat(1));
    Rat ck(1);
    for (int k = 1; k < 120; ++k) {
      ck *= (Rat(1, 4) - Rat(k - 1)) / Rat(k);
      uk *= u;
      for (int m = k; m <= uk.degree() && m < 120; ++m)
        carrier[static_cast<size_t>(m)] += ck * uk.coeff(m);
    }
  }
  Rat x(1, 100);
  Rat S(0), dS(0), xp(1);
  for (int n = 0; n < 120; ++n) {
    Rat pn(0);
    for (int k = 0; k <= n; ++k)
      pn += beta[static_cast<size_t>(k)] * carrier[static_cast<size_t>(n - k)];
    S += pn * xp;
    if (n) dS += pn * Rat(n) * xp / x;
    xp *= x;
  }
  BigFloat rx = sqrt(BigFloat(x, 224));
  BigFloat y = rx * BigFloat(S, 224);
  BigFloat dy = BigFloat(S, 224) / (rx * 2L) + rx * BigFloat(dS, 224);

  auto v = seed_from_local(eq5, nu, pt(Rat(1, 100), Rat(0)), 192);
  REQUIRE(v.size() == 2);
  CHECK(abs(v[0] - BigComplex(y, BigFloat(0L, 224))) < tol(150));
  CHECK(abs(v[1] - BigComplex(dy, BigFloat(0L, 224))) < tol(140));

  // winding one flips the square-root branch
  auto vw = seed_from_local(eq5, nu, pt(Rat(1, 100), Rat(0)), 192, 1);
  CHECK(abs(vw[0] + v[0]) < tol(150));

  // constant solution of y'' = 0
  DiffOp Ly2({P({}), P({}), P({1})});
  LocalBasis by = local_basis(Ly2, AlgebraicPoint::from_rat(Rat(0)), 4);
  auto vc = seed_from_local(Ly2, by.solutions[0], pt(Rat(3, 10), Rat(0)), 192);
  CHECK(abs(vc[0] - BigComplex(1L, 224)) < tol(180));
  CHECK(abs(vc[1]) < tol(180));

  // derivative entry agrees with a central finite difference
  AlgebraicPoint xplus = find_alg_point(eq5, true);
  LocalBasis bp = local_basis(eq5, xplus, 40);
  BigComplex xp0 = xplus.to_complex(288);
  BigComplex x1 = xp0 + BigComplex(Rat(1, 100), 288);
  BigComplex hh(Rat(1, 100000000), 288);
  auto f0 = seed_from_local(eq5, bp.solutions[0], x1, 256);
  auto fp = seed_from_local(eq5, bp.solutions[0], x1 + hh, 256);
  auto fm = seed_from_local(eq5, bp.solutions[0], x1 - hh, 256);
  BigComplex fd = (fp[0] - fm[0]) / (hh * BigComplex(2L, 288));
  CHECK(abs(fd - f0[1]) < abs(f0[1]) * BigFloat(1e-12, 288));
}

TEST_CASE("local monodromy around an algebraic point") {
  DiffOp eq5 = registry_operator("eq5");
  AlgebraicPoint xminus = find_alg_point(eq5, false);
  BigComplex c = xminus.to_complex(224);

  Path loop = circle_loop(c, BigFloat(Rat(1, 100), 224), 8);
  TransitionMatrix M = monodromy(eq5, loop, 192);
  auto [l1, l2] = eig2(M.m);
  BigComplex iu(Rat(0), Rat(1), 224);
  BigFloat d1 = min(abs(l1 - iu), abs(l1 + iu));
  BigFloat d2 = min(abs(l2 - iu), abs(l2 + iu));
  CHECK(d1 < tol(120));
  CHECK(d2 < tol(120));
  CHECK(abs(l1 * l2 - BigComplex(1L, 224)) < tol(120));

  // contractible loop
  Path triv = circle_loop(pt(Rat(1, 2), Rat(1, 2)), BigFloat(Rat(1, 20), 224), 6);
  TransitionMatrix T = monodromy(eq5, triv, 192);
  CHECK(id_deviation(T.m) < tol(140));

  // a path that is not closed is refused
  CHECK_THROWS(monodromy(
      eq5, Path({pt(Rat(1), Rat(0)), pt(Rat(1), Rat(1))}), 128));
  // a segment through a singular point is refused
  CHECK_THROWS(transition(
      eq5, Path({pt(Rat(-1), Rat(0)), pt(Rat(1), Rat(0))}), 128));
}

TEST_CASE("connection constants onto the quarter-exponent bases") {
  DiffOp eq5 = registry_operator("eq5");
  LocalBasis b0 = local_basis(eq5, AlgebraicPoint::from_rat(Rat(0)), 120);
  const LocalSolution& nu = b0.solutions[0];
  AlgebraicPoint xminus = find_alg_point(eq5, false);
  AlgebraicPoint xplus = find_alg_point(eq5, true);
  LocalBasis bm = local_basis(eq5, xminus, 80);
  LocalBasis bp = local_basis(eq5, xplus, 40);
  BigComplex xm = xminus.to_complex(224);
  BigComplex xp = xplus.to_complex(224);

  // identity connection along the empty path
  {
    BigComplex b = xp - BigComplex(Rat(1, 100), 224);
    ConnectionCoefficients self =
        connect_to_local(eq5, bp.solutions[0], Path({b, b}), bp, 192);
    CHECK(abs(self.c[0] - BigComplex(1L, 224)) < tol(120));
    CHECK(abs(self.c[1]) < tol(120));
  }

  // Reference constants, printed to four decimals.  In this code's
  // normalization they are the g2-row of the full (nu, omega) connection
  // matrix read as (C22, C21): the source of the reference values indexes
  // its matrices with both bases ordered by descending exponent, so what it
  // labels the nu-column lands in our second row, reversed.  The repro
  // module re-runs the recorded convention search and reports the match.
  BigComplex r1m = pt(Rat(14068, 10000), Rat(14068, 10000));
  BigComplex r2m = pt(Rat(5484, 10000), Rat(5484, 10000));
  BigComplex r1p = pt(Rat(-4827, 10000), Rat(5912, 10000));
  BigComplex r2p = pt(Rat(1882, 10000), Rat(2304, 10000));

  const LocalSolution& om = b0.solutions[1];
  BigComplex one(1L, 224);
  BigFloat s6 = sqrt(BigFloat(6L, 224)) * 2L;  // 2*sqrt(6)

  // over the top of x- to just past it
  Path toXm({pt(Rat(1, 100), Rat(0)), xm + pt(Rat(0), Rat(1, 100)),
             xm + pt(Rat(1, 100), Rat(0))});
  ConnectionCoefficients cnm = connect_to_local(eq5, nu, toXm, bm, 192);
  ConnectionCoefficients com = connect_to_local(eq5, om, toXm, bm, 192);

  // nu is real on (0, x-), so against principal quarter-power branches its
  // coefficients sit on the diagonals arg = -pi/4 and +pi/4; omega follows
  // the same pattern.
  CHECK(abs(cnm.c[0].re + cnm.c[0].im) < tol(120));
  CHECK(abs(cnm.c[1].re - cnm.c[1].im) < tol(120));
  CHECK(abs(com.c[0].re + com.c[0].im) < tol(120));
  CHECK(abs(com.c[1].re - com.c[1].im) < tol(120));

  // Cross-identities pinning both columns against the local monodromy at x-:
  // det C = W(nu,omega)/W(g1,g2) = 2, and the zero diagonal of the x- loop
  // matrix forces c1*e2 = 1, c2*e1 = -1.
  CHECK(abs(cnm.c[0] * com.c[1] - one) < tol(110));
  CHECK(abs(cnm.c[1] * com.c[0] + one) < tol(110));

  // recorded convention: reported pair = (e2, c2)
  CHECK(close_rel(com.c[1], r1m, 2e-3));
  CHECK(close_rel(cnm.c[1], r2m, 2e-3));

  // long way out to x+
  Path toXp({pt(Rat(1, 100), Rat(0)), pt(Rat(0), Rat(1, 10)),
             pt(Rat(0), Rat(17)), pt(Rat(34), Rat(2)),
             xp - pt(Rat(1, 100), Rat(0))});
  ConnectionCoefficients cnp = connect_to_local(eq5, nu, toXp, bp, 192);
  ConnectionCoefficients cop = connect_to_local(eq5, om, toXp, bp, 192);

  // same det-2 structure; the x+ loop matrix has diagonal -+2*sqrt(6), so
  // c1*e2 = 1 + 2*sqrt(6) i and c2*e1 = -1 + 2*sqrt(6) i.
  BigComplex i6(BigFloat(0L, 224), s6);
  CHECK(abs(cnp.c[0] * cop.c[1] - (one + i6)) < tol(105));
  CHECK(abs(cnp.c[1] * cop.c[0] - (i6 - one)) < tol(105));

  // recorded convention matches at x+ as well
  CHECK(close_rel(cop.c[1], r1p, 2e-3));
  CHECK(close_rel(cnp.c[1], r2p, 2e-3));
}

TEST_CASE("global monodromy in the basis at the origin") {
  DiffOp eq5 = registry_operator("eq5");
  LocalBasis b0 = local_basis(eq5, AlgebraicPoint::from_rat(Rat(0)), 80);
  AlgebraicPoint xminus = find_alg_point(eq5, false);
  AlgebraicPoint xplus = find_alg_point(eq5, true);

  BigFloat pi = BigFloat::pi(224);
  BigFloat s23 = sqrt(BigFloat(Rat(2, 3), 224));
  BigFloat s32 = sqrt(BigFloat(Rat(3, 2), 224));
  BigFloat s6x2 = sqrt(BigFloat(6L, 224)) * 2L;
  BigComplex one(1L, 224);
  auto imag = [](const BigFloat& v) {
    return BigComplex(BigFloat(0L, 224), v);
  };
  auto entry_close = [&](const BigComplex& got, const BigComplex& want,
                         long bits) { return abs(got - want) < tol(bits); };

  // diamond enclosing every finite singularity, reached from 1/100
  Path connector({pt(Rat(1, 100), Rat(0)), pt(Rat(0), Rat(1, 10)),
                  pt(Rat(0), Rat(64))});
  Path diamond({pt(Rat(0), Rat(64)), pt(Rat(-64), Rat(0)),
                pt(Rat(0), Rat(-64)), pt(Rat(64), Rat(0)),
                pt(Rat(0), Rat(64))});
  Path loop = connector.then(diamond).then(connector.reversed());
  REQUIRE(loop.is_closed());

  TransitionMatrix D = monodromy_in_basis(eq5, loop, b0, 192);

  // The matrix is exact: [[5, 6 pi i], [(6/pi) i, -7]].  Diagonal entries
  // are forced real and off-diagonal entries purely imaginary because the
  // operator and both basis germs are real on (0, x-).
  CHECK(entry_close(D.m[0][0], BigComplex(5L, 224), 110));
  CHECK(entry_close(D.m[0][1], imag(pi * 6L), 105));
  CHECK(entry_close(D.m[1][0], imag(BigFloat(6L, 224) / pi), 112));
  CHECK(entry_close(D.m[1][1], BigComplex(-7L, 224), 110));

  // invariants: det 1 (contract tolerance 2^-64, met with huge margin),
  // trace -2, and (D+I)^2 = 0, the log ladder of the rank-one deck
  // transformation left over at infinity
  CHECK(abs(cdet(D.m) - one) < tol(64));
  CHECK(abs(D.m[0][0] + D.m[1][1] + BigComplex(2L, 224)) < tol(105));
  CMat S = D.m;
  S[0][0] += one;
  S[1][1] += one;
  CMat S2 = S * S;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(abs(S2[i][j]) < tol(95));

  // factorization through the based loops around the single points
  BigComplex xm = xminus.to_complex(224);
  BigComplex xp = xplus.to_complex(224);
  Path c0 = circle_loop(pt(Rat(0), Rat(0)), BigFloat(Rat(1, 100), 224), 8);
  TransitionMatrix M0 = monodromy_in_basis(eq5, c0, b0, 192);
  Path cm = circle_loop(xm, BigFloat(Rat(1, 100), 224), 8, 2);
  Path am({pt(Rat(1, 100), Rat(0)), cm.points.front()});
  TransitionMatrix Mm =
      monodromy_in_basis(eq5, am.then(cm).then(am.reversed()), b0, 192);
  Path cp = circle_loop(xp, BigFloat(1L, 224), 8, 2);
  Path ap({pt(Rat(1, 100), Rat(0)), pt(Rat(0), Rat(1, 10)),
           pt(Rat(0), Rat(17)), pt(Rat(34), Rat(2)), cp.points.front()});
  TransitionMatrix Mp =
      monodromy_in_basis(eq5, ap.then(cp).then(ap.reversed()), b0, 192);

  // all three are exact as well
  CHECK(entry_close(M0.m[0][0], BigComplex(-1L, 224), 115));
  CHECK(entry_close(M0.m[0][1], imag(pi * -2L), 110));
  CHECK(entry_close(M0.m[1][0], BigComplex(224), 115));
  CHECK(entry_close(M0.m[1][1], BigComplex(-1L, 224), 115));

  CHECK(entry_close(Mm.m[0][0], BigComplex(224), 112));
  CHECK(entry_close(Mm.m[0][1], imag(-(pi * s23)), 110));
  CHECK(entry_close(Mm.m[1][0], imag(-(s32 / pi)), 112));
  CHECK(entry_close(Mm.m[1][1], BigComplex(224), 112));

  CHECK(entry_close(Mp.m[0][0], BigComplex(-s6x2, BigFloat(0L, 224)), 108));
  CHECK(entry_close(Mp.m[0][1], imag(-(pi * s23 * 5L)), 105));
  CHECK(entry_close(Mp.m[1][0], imag(-(s32 / pi * 5L)), 110));
  CHECK(entry_close(Mp.m[1][1], BigComplex(s6x2, BigFloat(0L, 224)), 108));

  // quarter-exponent loops square to -identity; the composite reproduces
  // the diamond, m+ m- m0 = D
  CMat mm2 = Mm.m * Mm.m;
  CMat mp2 = Mp.m * Mp.m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      BigComplex want = i == j ? BigComplex(-1L, 224) : BigComplex(224);
      CHECK(abs(mm2[i][j] - want) < tol(105));
      CHECK(abs(mp2[i][j] - want) < tol(100));
    }
  CMat word = Mp.m * (Mm.m * M0.m);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      CHECK(abs(word[i][j] - D.m[i][j]) < tol(95));

  // Externally reported first-column pair for this loop.  It is not
  // expressible in this normalization: every based loop here has a real
  // diagonal and imaginary off-diagonal (see above), while the reported
  // first entry has both parts nonzero.  The documented search over
  // orientation, gauge sign, and index reads is therefore recorded as a
  // non-match; the repro module prints the analysis alongside the exact
  // computed matrix.
  BigComplex d1ref = pt(Rat(8034), Rat(2229));
  BigComplex d2ref = pt(Rat(0), Rat(-102));
  CMat Dinv = cinverse(D.m);
  BigFloat best(1e9, 224);
  for (const CMat* M : {&D.m, &Dinv}) {
    const CMat& A = *M;
    BigComplex reads[8][2] = {
        {A[0][0], A[1][0]}, {A[0][1], A[1][1]}, {A[0][0], A[0][1]},
        {A[1][0], A[1][1]}, {A[0][1], A[0][0]}, {A[1][1], A[1][0]},
        {A[1][0], A[0][0]}, {A[1][1], A[0][1]}};
    for (auto& rd : reads)
      for (int sign = -1; sign <= 1; sign += 2) {
        BigComplex s(long(sign), 224);
        BigFloat dev = max(abs(rd[0] * s - d1ref) / abs(d1ref),
                           abs(rd[1] * s - d2ref) / abs(d2ref));
        best = min(best, dev);
      }
  }
  CHECK(best > BigFloat(Rat(1, 2), 224));
}

TEST_CASE("monodromies around different points do not commute") {
  DiffOp eq5 = registry_operator("eq5");
  AlgebraicPoint xminus = find_alg_point(eq5, false);
  AlgebraicPoint xplus = find_alg_point(eq5, true);
  BigComplex xm = xminus.to_complex(160);
  BigComplex xp = xplus.to_complex(160);
  BigComplex base = pt(Rat(1), Rat(0));

  Path cm = circle_loop(xm, BigFloat(Rat(1, 100), 160), 8);
  Path lm = Path({base, cm.points.front()})
                .then(cm)
                .then(Path({cm.points.front(), base}));
  Path cp = circle_loop(xp, BigFloat(1L, 160), 8, 2);
  Path lp = Path({base, cp.points.front()})
                .then(cp)
                .then(Path({cp.points.front(), base}));

  TransitionMatrix M1 = monodromy(eq5, lm, 128);
  TransitionMatrix M2 = monodromy(eq5, lp, 128);
  CMat comm = M1.m * M2.m - M2.m * M1.m;
  CHECK(norm_inf(comm) > BigFloat(Rat(1, 10), 160));
}
