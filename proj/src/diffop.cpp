#include "fuchs/diffop.hpp"

#include <algorithm>

#include "fuchs/evalcx.hpp"
#include "fuchs/roots.hpp"

namespace fuchs {

void normalize_coeffs(std::vector<Poly<Rat>>& p) {
  Poly<Rat> g = poly_gcd_all(p);
  if (g.degree() > 0)
    for (auto& q : p) q = q / g;
  // clear denominators and integer content jointly
  Int den(1), num(0);
  for (const auto& q : p)
    for (const auto& c : q.c) den = rat_lcm(den, c.get_den());
  for (const auto& q : p)
    for (const auto& c : q.c) num = rat_gcd(num, c.get_num() * (den / c.get_den()));
  if (num == 0) num = 1;
  Rat scale = Rat(den) / Rat(num);
  if (p.back().lc() * scale < 0) scale = -scale;
  for (auto& q : p) q *= scale;
}

void normalize_coeffs(std::vector<Poly<NFElem>>& p) {
  Poly<NFElem> g = poly_gcd_all(p);
  if (g.degree() > 0)
    for (auto& q : p) q = q / g;
  NFElem lead = p.back().lc();
  for (auto& q : p) q /= lead;
}

// ---------------------------------------------------------------------------
// singular points
// ---------------------------------------------------------------------------

namespace {

Rat dyadic_of(const BigFloat& x, long bits) {
  // round x * 2^bits to an integer
  BigFloat scaled = ldexp2(x, bits);
  mpz_class n;
  mpfr_get_z(n.get_mpz_t(), scaled.raw(), MPFR_RNDN);
  Rat r(n);
  r /= Rat(Int(1) << static_cast<unsigned>(bits));
  return r;
}

}  // namespace

std::vector<AlgebraicPoint> singular_points(const DiffOp& L) {
  std::vector<AlgebraicPoint> out;
  auto fac = factor_squarefree(L.leading());
  for (const auto& [f, mult] : fac.factors) {
    (void)mult;
    if (f.degree() == 1) {
      out.push_back(AlgebraicPoint::from_rat(-f.coeff(0) / f.coeff(1)));
      continue;
    }
    auto rs = complex_roots(f, 192);
    // isolation radius: a third of the closest pair distance
    BigFloat sep(1e30, 192);
    for (size_t i = 0; i < rs.size(); ++i)
      for (size_t j = i + 1; j < rs.size(); ++j) sep = min(sep, abs(rs[i] - rs[j]));
    for (const auto& z : rs) {
      Rat cre = dyadic_of(z.re, 64);
      Rat cim = dyadic_of(z.im, 64);
      BigFloat rad_f = sep / 3L;
      Rat rad = dyadic_of(rad_f, 64);
      if (rad == 0) rad = Rat(Int(1), Int(1) << 62);
      auto F = NumberField::make(f, ComplexBox{cre, cim, rad});
      out.push_back(AlgebraicPoint::from_nf(NFElem::gen(F)));
    }
  }
  if (!is_ordinary_point(L, AlgebraicPoint::infinity()))
    out.push_back(AlgebraicPoint::infinity());
  return out;
}

DiffOp op_at_infinity(const DiffOp& L) {
  RatFunc<Rat> inv_x(Poly<Rat>::constant(Rat(1)), Poly<Rat>::x());
  return pullback(L, inv_x);
}

bool is_ordinary_point(const DiffOp& L, const AlgebraicPoint& a) {
  switch (a.kind) {
    case AlgebraicPoint::Kind::rational:
      return L.leading().eval(a.rat) != 0;
    case AlgebraicPoint::Kind::algebraic: {
      Poly<NFElem> lead = lift_poly(L.leading(), a.alg.field());
      return !(lead.eval(a.alg) == NFElem(0));
    }
    default: {
      DiffOp M = op_at_infinity(L);
      return M.leading().eval(Rat(0)) != 0;
    }
  }
}

// ---------------------------------------------------------------------------
// indicial polynomials
// ---------------------------------------------------------------------------

Poly<Rat> indicial_polynomial(const DiffOp& L, const Rat& a) {
  DiffOp shifted = shift_to(L, a);
  auto Q = delta_x_view(shifted);
  if (Q[0].degree() != L.order())
    throw error("indicial_polynomial: irregular singular point at x = " + to_string(a));
  return make_monic(Q[0]);
}

Poly<Rat> indicial_polynomial_at_infinity(const DiffOp& L) {
  DiffOp M = op_at_infinity(L);
  auto Q = delta_x_view(M);
  if (Q[0].degree() != L.order())
    throw error("indicial_polynomial: irregular singular point at infinity");
  return make_monic(Q[0]);
}

Poly<NFElem> indicial_polynomial(const DiffOp& L, const NFElem& a) {
  DiffOpT<NFElem> lifted = lift_op(L, a.field());
  DiffOpT<NFElem> shifted = shift_to(lifted, a);
  auto Q = delta_x_view(shifted);
  if (Q[0].degree() != L.order())
    throw error("indicial_polynomial: irregular singular point at algebraic point");
  return make_monic(Q[0]);
}

namespace {

// all roots of the monic rational polynomial are rational integers
bool integer_spectrum(const Poly<Rat>& q) {
  auto roots = rational_roots(q);
  int counted = 0;
  for (const auto& [r, m] : roots) {
    if (!is_integer(r)) return false;
    counted += m;
  }
  return counted == q.degree();
}

}  // namespace

bool has_nonintegral_exponent(const DiffOp& L, const AlgebraicPoint& a) {
  switch (a.kind) {
    case AlgebraicPoint::Kind::rational:
      return !integer_spectrum(indicial_polynomial(L, a.rat));
    case AlgebraicPoint::Kind::algebraic: {
      Poly<NFElem> q = indicial_polynomial(L, a.alg);
      // integer exponents force rational (indeed integer) coefficients on the
      // monic indicial polynomial, so an irrational coefficient certifies
      std::vector<Rat> cs;
      cs.reserve(q.c.size());
      for (const auto& e : q.c) {
        if (!e.is_rational()) return true;
        cs.push_back(e.is_zero() ? Rat(0) : e.rep().coeff(0));
      }
      return !integer_spectrum(Poly<Rat>(std::move(cs)));
    }
    default:
      return !integer_spectrum(indicial_polynomial_at_infinity(L));
  }
}

// ---------------------------------------------------------------------------
// gauge factors
// ---------------------------------------------------------------------------

void GaugeFactor::normalize() {
  std::vector<std::pair<Poly<Rat>, Rat>> merged;
  for (auto& [base, e] : powers) {
    if (e == 0 || base.degree() == 0) continue;
    Poly<Rat> b = primitive_part(base);
    // integer exponents of the stripped rational content fold into constant
    Rat content = base.lc() / b.lc();
    if (content != 1) {
      if (!is_integer(e)) {
        // keep the original non-primitive base; no rational way to split
        b = base;
      } else {
        long ei = to_long(e);
        Rat mult(1);
        for (long k = 0; k < std::abs(ei); ++k) mult *= content;
        constant *= ei >= 0 ? mult : Rat(1) / mult;
      }
    }
    bool found = false;
    for (auto& [mb, me] : merged)
      if (mb == b) {
        me += e;
        found = true;
        break;
      }
    if (!found) merged.emplace_back(b, e);
  }
  merged.erase(std::remove_if(merged.begin(), merged.end(),
                              [](const auto& pr) { return pr.second == 0; }),
               merged.end());
  std::sort(merged.begin(), merged.end(), [](const auto& x, const auto& y) {
    if (x.first.degree() != y.first.degree()) return x.first.degree() < y.first.degree();
    return poly_to_string(x.first) < poly_to_string(y.first);
  });
  powers = std::move(merged);
}

GaugeFactor GaugeFactor::inverse() const {
  GaugeFactor g;
  g.constant = Rat(1) / constant;
  for (const auto& [b, e] : powers) g.powers.emplace_back(b, -e);
  g.normalize();
  return g;
}

GaugeFactor operator*(const GaugeFactor& a, const GaugeFactor& b) {
  GaugeFactor g;
  g.constant = a.constant * b.constant;
  g.powers = a.powers;
  g.powers.insert(g.powers.end(), b.powers.begin(), b.powers.end());
  g.normalize();
  return g;
}

bool GaugeFactor::operator==(const GaugeFactor& o) const {
  GaugeFactor a = *this, b = o;
  a.normalize();
  b.normalize();
  return a.constant == b.constant && a.powers == b.powers;
}

RatFunc<Rat> GaugeFactor::logderiv() const {
  RatFunc<Rat> s;
  for (const auto& [b, e] : powers)
    s += RatFunc<Rat>(Poly<Rat>::constant(e)) * RatFunc<Rat>(b.derivative(), b);
  return s;
}

BigComplex GaugeFactor::evaluate(const BigComplex& x, mpfr_prec_t prec) const {
  BigComplex acc(constant, prec);
  for (const auto& [b, e] : powers) acc *= pow_rat(eval_cx(b, x), e);
  return acc;
}

std::string GaugeFactor::to_string(const std::string& var) const {
  std::string s;
  if (constant != 1 || powers.empty()) s = fuchs::to_string(constant);
  for (const auto& [b, e] : powers) {
    if (!s.empty()) s += " * ";
    s += "(" + poly_to_string(b, var) + ")^(" + fuchs::to_string(e) + ")";
  }
  return s;
}

GaugeFactor integrate_logderiv(const RatFunc<Rat>& h) {
  GaugeFactor g;
  if (h.is_zero()) return g;
  if (h.num.degree() >= h.den.degree())
    throw error("integrate_logderiv: nonzero polynomial part (gauge is not a finite product)");
  auto fac = factor_squarefree(h.den);
  for (const auto& [f, mult] : fac.factors) {
    if (mult > 1)
      throw error("integrate_logderiv: pole of order " + std::to_string(mult) +
                  " (gauge is not a finite product)");
  }
  RatFunc<Rat> recon;
  for (const auto& [f, mult] : fac.factors) {
    (void)mult;
    // residue as element of Q[x]/(f): rho = num * (den/f)^{-1} * f'^{-1} mod f
    // demand it be a rational constant
    Poly<Rat> cof = h.den / f;
    // invert cof * f' modulo f
    Poly<Rat> prod = (cof * f.derivative()) % f;
    // extended Euclid for inverse of prod mod f
    Poly<Rat> r0 = f, r1 = prod;
    Poly<Rat> s0, s1 = Poly<Rat>::constant(Rat(1));
    while (r1.degree() > 0) {
      auto [q, r2] = divrem(r0, r1);
      Poly<Rat> s2 = s0 - q * s1;
      r0 = r1;
      r1 = r2;
      s0 = s1;
      s1 = s2;
    }
    if (r1.is_zero()) throw error("integrate_logderiv: internal gcd failure");
    Poly<Rat> inv = s1 / r1.coeff(0);
    Poly<Rat> rho = (h.num % f) * inv % f;
    if (rho.degree() > 0)
      throw error("integrate_logderiv: non-rational residue (gauge exponent not in Q)");
    Rat e = rho.is_zero() ? Rat(0) : rho.coeff(0);
    if (e != 0) g.powers.emplace_back(f, e);
    recon += RatFunc<Rat>(Poly<Rat>::constant(e)) * RatFunc<Rat>(f.derivative(), f);
  }
  if (!(recon == h))
    throw error("integrate_logderiv: residue reconstruction mismatch");
  g.normalize();
  return g;
}

// ---------------------------------------------------------------------------
// order-2 normal form and symmetric squares
// ---------------------------------------------------------------------------

NormalForm2 remove_subleading_derivative(const DiffOp& L) {
  if (L.order() != 2) throw error("remove_subleading_derivative: order-2 operator required");
  RatFunc<Rat> h(-L.p[1], L.p[2] * Rat(2));
  DiffOp W = gauge_conjugate(L, h);
  if (!W.p[1].is_zero())
    throw error("remove_subleading_derivative: conjugation failed to kill y'");
  NormalForm2 nf;
  nf.r = RatFunc<Rat>(-W.p[0], W.p[2]);
  nf.gauge = integrate_logderiv(h);
  return nf;
}

DiffOp sym_square(const DiffOp& L2) {
  if (L2.order() != 2) throw error("sym_square: order-2 operator required");
  RatFunc<Rat> a(L2.p[0], L2.p[2]);  // p0/p2
  RatFunc<Rat> b(L2.p[1], L2.p[2]);  // p1/p2
  Mat<RatFunc<Rat>> A(3, 3);
  // frame (y1 y2, (y1 y2)', y1' y2')
  A[0][1] = RatFunc<Rat>(Rat(1));
  A[1][0] = -a * Rat(2);
  A[1][1] = -b;
  A[1][2] = RatFunc<Rat>(Rat(2));
  A[2][1] = -a;
  A[2][2] = -b * Rat(2);
  std::vector<RatFunc<Rat>> e1(3);
  e1[0] = RatFunc<Rat>(Rat(1));
  DiffOp R = system_to_scalar(A, e1);
  if (R.order() != 3)
    throw error("sym_square: symmetric square is not cyclic in the product coordinate");
  return R;
}

SymSquareRoot sym_square_root(const DiffOp& L3) {
  if (L3.order() != 3) throw error("sym_square_root: order-3 operator required");
  RatFunc<Rat> h(-L3.p[2], L3.p[3] * Rat(3));
  DiffOp W = gauge_conjugate(L3, h);
  if (!W.p[2].is_zero())
    throw error("sym_square_root: conjugation failed to kill y''");
  RatFunc<Rat> c1(W.p[1], W.p[3]);
  RatFunc<Rat> c0(W.p[0], W.p[3]);
  if (!(c0 == c1.derivative() / Rat(2)))
    throw error("sym_square_root: operator is not projectively a symmetric square");
  SymSquareRoot out;
  out.r = -c1 / Rat(4);
  out.gauge = integrate_logderiv(h);
  return out;
}

// ---------------------------------------------------------------------------
// recurrences and ordinary series
// ---------------------------------------------------------------------------

Recurrence coefficient_recurrence(const DiffOp& L) {
  auto Q = delta_x_view(L);
  Recurrence rec;
  rec.taps.reserve(Q.size());
  for (size_t j = 0; j < Q.size(); ++j)
    rec.taps.push_back(Q[j].taylor_shift(Rat(1) - Rat(static_cast<long>(j))));
  // scalar content normalization only (dividing by a common polynomial factor
  // in n would change where the recurrence is valid)
  Int den(1), num(0);
  for (const auto& t : rec.taps)
    for (const auto& c : t.c) den = rat_lcm(den, c.get_den());
  for (const auto& t : rec.taps)
    for (const auto& c : t.c) num = rat_gcd(num, c.get_num() * (den / c.get_den()));
  if (num == 0) num = 1;
  Rat scale = Rat(den) / Rat(num);
  if (rec.taps[0].lc() * scale < 0) scale = -scale;
  for (auto& t : rec.taps) t *= scale;
  return rec;
}

std::vector<std::vector<Rat>> series_solutions_at_ordinary(const DiffOp& L, const Rat& a,
                                                           int N) {
  if (!is_ordinary_point(L, AlgebraicPoint::from_rat(a)))
    throw error("series_solutions_at_ordinary: point is singular");
  DiffOp S = shift_to(L, a);
  auto Q = delta_x_view(S);
  int p = L.order();
  std::vector<std::vector<Rat>> sols;
  for (int k = 0; k < p; ++k) {
    std::vector<Rat> c(N, Rat(0));
    if (k < N) c[k] = Rat(1);
    for (int n = p; n < N; ++n) {
      Rat acc(0);
      for (size_t j = 1; j < Q.size(); ++j) {
        if (n - static_cast<int>(j) < 0) break;
        acc += Q[j].eval(Rat(n - static_cast<int>(j))) * c[n - j];
      }
      Rat q0 = Q[0].eval(Rat(n));
      if (q0 == 0) throw error("series_solutions_at_ordinary: unexpected resonance");
      c[n] = -acc / q0;
    }
    sols.push_back(std::move(c));
  }
  return sols;
}

}  // namespace fuchs
