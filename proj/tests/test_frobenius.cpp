#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

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

// drive the coefficient recurrence forward from c_0 = 1
std::vector<Rat> run_recurrence(const Recurrence& R, int N) {
  std::vector<Rat> c{Rat(1)};
  for (long n = 0; static_cast<int>(c.size()) < N; ++n) {
    Rat acc(0);
    for (size_t j = 1; j < R.taps.size(); ++j) {
      long idx = n + 1 - static_cast<long>(j);
      if (idx < 0) continue;
      acc += R.taps[j].eval(Rat(n)) * c[idx];
    }
    Rat lead = R.taps[0].eval(Rat(n));
    REQUIRE(lead != 0);
    c.push_back(-acc / lead);
  }
  return c;
}

// truncated (1 + u)^alpha for a polynomial u with u(0) = 0
std::vector<Rat> pow_series(const Poly<Rat>& u, const Rat& alpha, int N) {
  std::vector<Rat> out(static_cast<size_t>(N), Rat(0));
  out[0] = 1;
  Rat ck(1);
  Poly<Rat> uk = Poly<Rat>::constant(Rat(1));
  for (int k = 1; k < N; ++k) {
    ck *= (alpha - Rat(k - 1)) / Rat(k);
    uk *= u;
    for (int m = k; m <= uk.degree() && m < N; ++m) out[m] += ck * uk.coeff(m);
  }
  return out;
}

std::vector<Rat> series_product(const std::vector<Rat>& a,
                                const std::vector<Rat>& b, int N) {
  std::vector<Rat> out(static_cast<size_t>(N), Rat(0));
  for (int i = 0; i < N; ++i)
    for (int j = 0; i + j < N && j < static_cast<int>(b.size()); ++j)
      if (i < static_cast<int>(a.size())) out[i + j] += a[i] * b[j];
  return out;
}

}  // namespace

TEST_CASE("double exponent 1/2 at the origin: log-free germ and its partner") {
  DiffOp eq5 = registry_operator("eq5");
  LocalBasis basis = local_basis(eq5, AlgebraicPoint::from_rat(Rat(0)), 12);
  REQUIRE(basis.solutions.size() == 2);

  const LocalSolution& nu = basis.solutions[0];
  const LocalSolution& om = basis.solutions[1];
  CHECK(nu.exact);
  CHECK(nu.exponent == Rat(1, 2));
  CHECK(nu.log_degree == 0);
  CHECK(om.exponent == Rat(1, 2));
  CHECK(om.log_degree == 1);

  // germ x^(1/2) (1 - 6x - 96x^2 - ...)
  CHECK(nu.blocks[0][0].rat_value() == Rat(1));
  CHECK(nu.blocks[0][1].rat_value() == Rat(-6));
  CHECK(nu.blocks[0][2].rat_value() == Rat(-96));

  // oracle: the second-order companion's power series solution times the
  // quartic-root carrier, beta(x) * (1 - 34x + x^2)^(1/4)
  std::vector<Rat> beta =
      run_recurrence(coefficient_recurrence(registry_operator("dwork2")), 10);
  CHECK(beta[1] == Rat(5, 2));
  std::vector<Rat> carrier = pow_series(P({0, -34, 1}), Rat(1, 4), 10);
  std::vector<Rat> prod = series_product(beta, carrier, 10);
  for (int n = 0; n < 10; ++n)
    CHECK(nu.blocks[0][static_cast<size_t>(n)].rat_value() == prod[n]);

  // partner solution: log part repeats the germ, log-free part starts at
  // 12 x^(3/2)
  REQUIRE(om.blocks.size() == 2);
  for (int n = 0; n < 12; ++n)
    CHECK(om.blocks[1][static_cast<size_t>(n)] ==
          nu.blocks[0][static_cast<size_t>(n)]);
  CHECK(om.blocks[0][0].is_zero());
  CHECK(om.blocks[0][1].rat_value() == Rat(12));

  CHECK(local_residual(eq5, nu).is_zero());
  CHECK(local_residual(eq5, om).is_zero());

  // radius of trust = distance to the nearest finite singularity, 17-12*sqrt(2)
  BigFloat xm = BigFloat(17L, 192) - BigFloat(12L, 192) * sqrt(BigFloat(2L, 192));
  CHECK(abs(basis.trust - xm) < tol(150));

  // truncation order changes nothing below the cut
  LocalBasis b20 = local_basis(eq5, AlgebraicPoint::from_rat(Rat(0)), 20);
  for (int n = 0; n < 12; ++n)
    CHECK(b20.solutions[0].blocks[0][static_cast<size_t>(n)] ==
          nu.blocks[0][static_cast<size_t>(n)]);
}

TEST_CASE("quarter exponents at the algebraic singularities, Galois-stable data") {
  DiffOp eq5 = registry_operator("eq5");
  AlgebraicPoint xplus, xminus;
  for (const auto& s : singular_points(eq5)) {
    if (s.kind != AlgebraicPoint::Kind::algebraic) continue;
    if (s.to_complex(64).re > BigFloat(1L, 64))
      xplus = s;
    else
      xminus = s;
  }
  REQUIRE(xplus.kind == AlgebraicPoint::Kind::algebraic);
  REQUIRE(xminus.kind == AlgebraicPoint::Kind::algebraic);

  LocalBasis bp = local_basis(eq5, xplus, 6);
  LocalBasis bm = local_basis(eq5, xminus, 6);
  REQUIRE(bp.solutions.size() == 2);
  REQUIRE(bm.solutions.size() == 2);
  for (const auto& b : {&bp, &bm}) {
    CHECK(b->solutions[0].exact);
    CHECK(b->solutions[0].exponent == Rat(1, 4));
    CHECK(b->solutions[1].exponent == Rat(3, 4));
    CHECK(b->solutions[0].log_degree == 0);
    CHECK(b->solutions[1].log_degree == 0);
    CHECK(b->solutions[0].blocks[0][0].rat_value() == Rat(1));
  }

  // second coefficient of the w^(1/4) branch at x+: 6 - 271 sqrt(2) / 64,
  // stored over Q[t]/(t^2 - 34 t + 1)
  const NFElem& c1p = bp.solutions[0].blocks[0][1];
  Poly<Rat> want{Rat(9215, 768), Rat(-271, 768)};
  CHECK(c1p.rep() == want);
  BigFloat s2 = sqrt(BigFloat(2L, 192));
  BigFloat v1 = BigFloat(6L, 192) - BigFloat(271L, 192) * s2 / BigFloat(64L, 192);
  CHECK(abs(c1p.to_complex(192) - BigComplex(v1, BigFloat(0L, 192))) < tol(140));

  // identical abstract data at the conjugate point; the embedding flips it
  const NFElem& c1m = bm.solutions[0].blocks[0][1];
  CHECK(c1m.rep() == want);
  BigFloat v2 = BigFloat(6L, 192) + BigFloat(271L, 192) * s2 / BigFloat(64L, 192);
  CHECK(abs(c1m.to_complex(192) - BigComplex(v2, BigFloat(0L, 192))) < tol(140));

  // generator swap t -> 34 - t realizes the conjugation inside one field
  NFElem t = NFElem::gen(c1p.field());
  NFElem other = c1p.map_generator(NFElem(Rat(34)) - t);
  CHECK(abs(other.to_complex(192) - c1m.to_complex(192)) < tol(140));

  // w^(3/4) branch at x-: second coefficient 2 + 271 sqrt(2) / 192
  const NFElem& d1m = bm.solutions[1].blocks[0][1];
  CHECK(d1m.rep() == Poly<Rat>{Rat(9215, 2304), Rat(-271, 2304)});
  BigFloat v3 =
      BigFloat(2L, 192) + BigFloat(271L, 192) * s2 / BigFloat(192L, 192);
  CHECK(abs(d1m.to_complex(192) - BigComplex(v3, BigFloat(0L, 192))) < tol(140));

  CHECK(local_residual(eq5, bp.solutions[0]).is_zero());
  CHECK(local_residual(eq5, bm.solutions[1]).is_zero());

  // trust at x- is the distance to the origin
  BigFloat xm = BigFloat(17L, 192) - BigFloat(12L, 192) * sqrt(BigFloat(2L, 192));
  CHECK(abs(bm.trust - xm) < tol(150));
}

TEST_CASE("double zero exponent: power series plus log partner") {
  DiffOp dwork2 = registry_operator("dwork2");
  LocalBasis basis = local_basis(dwork2, AlgebraicPoint::from_rat(Rat(0)), 8);
  REQUIRE(basis.solutions.size() == 2);
  const LocalSolution& s0 = basis.solutions[0];
  const LocalSolution& s1 = basis.solutions[1];
  CHECK(s0.log_degree == 0);
  CHECK(s0.exponent == Rat(0));
  CHECK(s0.blocks[0][1].rat_value() == Rat(5, 2));
  CHECK(s0.blocks[0][2].rat_value() == Rat(267, 8));
  CHECK(s1.log_degree == 1);
  for (int n = 0; n < 8; ++n)
    CHECK(s1.blocks[1][static_cast<size_t>(n)] ==
          s0.blocks[0][static_cast<size_t>(n)]);
  CHECK(s1.blocks[0][0].is_zero());

  Constraints want;
  want.log_free = true;
  want.exponent = Rat(0);
  want.leading = Rat(1);
  LocalSolution beta = distinguished_solution(basis, want);
  CHECK(beta.blocks[0][0].rat_value() == Rat(1));
  CHECK(beta.blocks[0][1].rat_value() == Rat(5, 2));

  // value at the center is the constant term
  LocalValue at0 = evaluate_local(beta, BigComplex(192));
  CHECK(abs(at0.value - BigComplex(1L, 192)) < tol(180));
}

TEST_CASE("ordinary points: integer exponent ladder without logs") {
  // y'' = 0: basis {1, x}
  DiffOp L2({P({}), P({}), P({1})});
  LocalBasis b = local_basis(L2, AlgebraicPoint::from_rat(Rat(0)), 5);
  REQUIRE(b.solutions.size() == 2);
  CHECK(b.solutions[0].exponent == Rat(0));
  CHECK(b.solutions[1].exponent == Rat(1));
  for (const auto& s : b.solutions) {
    CHECK(s.log_degree == 0);
    CHECK(s.blocks[0][0].rat_value() == Rat(1));
    for (int n = 1; n < 5; ++n)
      CHECK(s.blocks[0][static_cast<size_t>(n)].is_zero());
  }

  // generic ordinary point: the exponent-1 member matches the unit-seeded
  // series column
  DiffOp dwork2 = registry_operator("dwork2");
  LocalBasis bd = local_basis(dwork2, AlgebraicPoint::from_rat(Rat(2)), 8);
  REQUIRE(bd.solutions.size() == 2);
  CHECK(bd.solutions[0].exponent == Rat(0));
  CHECK(bd.solutions[1].exponent == Rat(1));
  CHECK(bd.solutions[0].log_degree == 0);
  CHECK(bd.solutions[1].log_degree == 0);
  auto cols = series_solutions_at_ordinary(dwork2, Rat(2), 9);
  for (int n = 0; n < 8; ++n)
    CHECK(bd.solutions[1].blocks[0][static_cast<size_t>(n)].rat_value() ==
          cols[1][static_cast<size_t>(n) + 1]);
  CHECK(local_residual(dwork2, bd.solutions[0]).is_zero());
  CHECK(local_residual(dwork2, bd.solutions[1]).is_zero());
}

TEST_CASE("first order: scaled exponential via the leading constraint") {
  DiffOp L({P({-1}), P({1})});  // y' = y
  LocalBasis b = local_basis(L, AlgebraicPoint::from_rat(Rat(0)), 30);
  Constraints want;
  want.exponent = Rat(0);
  want.leading = Rat(2);
  LocalSolution s = distinguished_solution(b, want);
  CHECK(s.blocks[0][3].rat_value() == Rat(1, 3));  // 2/3!

  BigComplex w(Rat(1, 2), 192);
  LocalValue v = evaluate_local(s, w);
  BigComplex expect =
      BigComplex(exp(BigFloat(Rat(1, 2), 192)), BigFloat(0L, 192)) *
      BigComplex(2L, 192);
  CHECK(abs(v.value - expect) < tol(130));

  // derivative of the exponential is itself; the jet agrees with the
  // dedicated derivative entry point
  LocalValue dv = derivative_local(s, w);
  CHECK(abs(dv.value - v.value) < tol(120));
  auto jet = evaluate_jet(s, w, 0, 2);
  CHECK(abs(jet[0] - v.value) < tol(180));
  CHECK(abs(jet[1] - dv.value) < tol(180));
}

TEST_CASE("irrational exponent pair goes through the numeric path") {
  // x^2 y'' + x y' + y: exponents are the two square roots of -1
  DiffOp L({P({1}), P({0, 1}), P({0, 0, 1})});
  LocalBasis b = local_basis(L, AlgebraicPoint::from_rat(Rat(0)), 8, 192);
  REQUIRE(b.solutions.size() == 2);
  CHECK(!b.solutions[0].exact);
  CHECK(!b.solutions[1].exact);
  CHECK(b.solutions[0].log_degree == 0);
  CHECK(b.solutions[1].log_degree == 0);
  BigComplex i_unit(Rat(0), Rat(1), 192);
  CHECK(abs(b.solutions[0].exponent_cx + i_unit) < tol(170));
  CHECK(abs(b.solutions[1].exponent_cx - i_unit) < tol(170));

  // the expansion is the bare power w^(+-i)
  CHECK(abs(b.solutions[1].nblocks[0][0] - BigComplex(1L, 192)) < tol(170));
  for (int n = 1; n < 8; ++n)
    CHECK(abs(b.solutions[1].nblocks[0][static_cast<size_t>(n)]) < tol(170));

  // w^i = cos(log w) + i sin(log w) on the positive axis
  BigComplex w(Rat(1, 10), 192);
  BigFloat lw = log(BigFloat(Rat(1, 10), 192));
  LocalValue v = evaluate_local(b.solutions[1], w);
  CHECK(abs(v.value - BigComplex(cos(lw), sin(lw))) < tol(150));

  CHECK(local_residual(L, b.solutions[1], 192) < tol(150));
  CHECK_THROWS(evaluate_local(b.solutions[1], BigComplex(192)));
}

TEST_CASE("integer-spaced exponents: genuine log versus removable resonance") {
  // x^2 y'' - 4x y' + (6+x) y: exponents 2, 3; the overlap does not cancel
  DiffOp Llog({P({6, 1}), P({0, -4}), P({0, 0, 1})});
  LocalBasis bl = local_basis(Llog, AlgebraicPoint::from_rat(Rat(0)), 6);
  REQUIRE(bl.solutions.size() == 2);
  const LocalSolution& low = bl.solutions[0];
  CHECK(low.exponent == Rat(2));
  CHECK(low.log_degree == 1);
  CHECK(low.blocks[0][0].rat_value() == Rat(1));
  CHECK(low.blocks[1][0].is_zero());
  CHECK(low.blocks[1][1].rat_value() == Rat(-1));
  CHECK(bl.solutions[1].exponent == Rat(3));
  CHECK(bl.solutions[1].log_degree == 0);
  CHECK(local_residual(Llog, low).is_zero());
  CHECK(local_residual(Llog, bl.solutions[1]).is_zero());

  // x^2 y'' + (x^2 - x) y' - x y: exponents 0, 2, but the obstruction
  // vanishes and the small solution is exp(-x)
  DiffOp Lnl({P({0, -1}), P({0, -1, 1}), P({0, 0, 1})});
  LocalBasis bn = local_basis(Lnl, AlgebraicPoint::from_rat(Rat(0)), 7);
  REQUIRE(bn.solutions.size() == 2);
  const LocalSolution& e0 = bn.solutions[0];
  CHECK(e0.exponent == Rat(0));
  CHECK(e0.log_degree == 0);
  Rat fact(1);
  for (int n = 0; n < 7; ++n) {
    if (n) fact *= Rat(n);
    Rat sign = n % 2 ? Rat(-1) : Rat(1);
    CHECK(e0.blocks[0][static_cast<size_t>(n)].rat_value() == sign / fact);
  }
  CHECK(bn.solutions[1].exponent == Rat(2));
  CHECK(bn.solutions[1].log_degree == 0);
  CHECK(local_residual(Lnl, e0).is_zero());
}

TEST_CASE("winding moves the branch consistently") {
  DiffOp eq5 = registry_operator("eq5");
  LocalBasis basis = local_basis(eq5, AlgebraicPoint::from_rat(Rat(0)), 60);
  const LocalSolution& nu = basis.solutions[0];
  const LocalSolution& om = basis.solutions[1];
  BigComplex w(Rat(1, 100), 192);

  // a full positive turn flips the square root
  BigComplex n0 = evaluate_local(nu, w, 0).value;
  BigComplex n1 = evaluate_local(nu, w, 1).value;
  CHECK(abs(n0 + n1) < tol(150));

  // and shifts the log partner by 2 pi i times the germ (the log-free block
  // also flips with the carried w^(1/2))
  BigComplex o0 = evaluate_local(om, w, 0).value;
  BigComplex o1 = evaluate_local(om, w, 1).value;
  BigFloat twopi = BigFloat::pi(192) * 2L;
  BigComplex shift = BigComplex(BigFloat(0L, 192), twopi) * n1;
  CHECK(abs(o1 - (-o0 + shift)) < tol(140));

  // center value of a positive-exponent branch
  CHECK(abs(evaluate_local(nu, BigComplex(192)).value) < tol(180));

  // doubling the order only sharpens the tail
  LocalBasis b2 = local_basis(eq5, AlgebraicPoint::from_rat(Rat(0)), 120);
  LocalValue a = evaluate_local(nu, w);
  LocalValue bb = evaluate_local(b2.solutions[0], w);
  CHECK(abs(a.value - bb.value) < max(a.tail * 4L, tol(150)));
  CHECK(a.tail < ldexp2(BigFloat(1L, 192), -40));
}

TEST_CASE("structural data at infinity; irregular points are refused") {
  DiffOp ap = registry_operator("apery3");
  LocalBasis b = local_basis(ap, AlgebraicPoint::infinity(), 6);
  CHECK(b.at_inf);
  REQUIRE(b.solutions.size() == 3);
  for (int k = 0; k < 3; ++k) {
    CHECK(b.solutions[static_cast<size_t>(k)].exponent == Rat(1));
    CHECK(b.solutions[static_cast<size_t>(k)].log_degree == k);
  }
  const LocalSolution& top = b.solutions[2];
  CHECK(top.blocks[2][0].rat_value() == Rat(1));
  CHECK(top.blocks[1][0].is_zero());
  CHECK(top.blocks[0][0].is_zero());
  CHECK(local_residual(ap, top).is_zero());
  CHECK_THROWS(evaluate_local(top, BigComplex(Rat(1, 10), 192)));

  // x^3 y'' = y is irregular at 0, Airy is irregular at infinity
  DiffOp Lirr({P({-1}), P({}), P({0, 0, 0, 1})});
  CHECK_THROWS(local_basis(Lirr, AlgebraicPoint::from_rat(Rat(0)), 4));
  DiffOp airy({P({0, -1}), P({}), P({1})});
  CHECK_THROWS(local_basis(airy, AlgebraicPoint::infinity(), 4));
}
