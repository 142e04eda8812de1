#pragma once

// Linear differential operators with polynomial coefficients, their delta
// (Euler) form, companion systems, and the structural operations built on
// them: shifts, pullbacks, symmetric squares, gauge conjugation, indicial
// data, and coefficient recurrences.
//
// Conventions: an operator is sum p[i](x) y^(i), stored lowest derivative
// first, content-normalized (no common polynomial factor; over Q also integer
// primitive with positive leading coefficient of the top polynomial).

#include <optional>
#include <string>
#include <vector>

#include "fuchs/factor.hpp"
#include "fuchs/linalg.hpp"
#include "fuchs/numberfield.hpp"
#include "fuchs/poly.hpp"
#include "fuchs/ratfunc.hpp"

namespace fuchs {

// ---------------------------------------------------------------------------
// points
// ---------------------------------------------------------------------------

struct AlgebraicPoint {
  enum class Kind { rational, algebraic, infinity };
  Kind kind = Kind::rational;
  Rat rat;      // Kind::rational
  NFElem alg;   // Kind::algebraic (genuinely irrational)

  static AlgebraicPoint from_rat(const Rat& r) {
    AlgebraicPoint p;
    p.kind = Kind::rational;
    p.rat = r;
    return p;
  }
  static AlgebraicPoint from_nf(const NFElem& e) {
    if (e.is_rational()) return from_rat(e.is_zero() ? Rat(0) : e.rep().coeff(0));
    AlgebraicPoint p;
    p.kind = Kind::algebraic;
    p.alg = e;
    return p;
  }
  static AlgebraicPoint infinity() {
    AlgebraicPoint p;
    p.kind = Kind::infinity;
    return p;
  }

  bool is_infinity() const { return kind == Kind::infinity; }
  bool is_rational() const { return kind == Kind::rational; }

  BigComplex to_complex(mpfr_prec_t prec) const {
    switch (kind) {
      case Kind::rational:
        return BigComplex(rat, prec);
      case Kind::algebraic:
        return alg.to_complex(prec);
      default:
        throw error("AlgebraicPoint: infinity has no complex value");
    }
  }

  bool operator==(const AlgebraicPoint& o) const {
    if (kind != o.kind) return false;
    if (kind == Kind::rational) return rat == o.rat;
    if (kind == Kind::algebraic) return alg == o.alg;
    return true;
  }

  std::string to_string() const {
    switch (kind) {
      case Kind::rational:
        return fuchs::to_string(rat);
      case Kind::algebraic:
        return "root(" + poly_to_string(alg.field()->minpoly(), "t") + "; " +
               alg.to_string() + " ~ " + alg.to_complex(64).to_string(8) + ")";
      default:
        return "inf";
    }
  }
};

// ---------------------------------------------------------------------------
// operators
// ---------------------------------------------------------------------------

template <class T>
struct DiffOpT;

// canonical content normalization; specialized for Rat in the source file
void normalize_coeffs(std::vector<Poly<Rat>>& p);
void normalize_coeffs(std::vector<Poly<NFElem>>& p);

template <class T>
struct DiffOpT {
  std::vector<Poly<T>> p;  // p[i] multiplies y^(i)

  DiffOpT() = default;
  explicit DiffOpT(std::vector<Poly<T>> coeffs, bool normalize = true)
      : p(std::move(coeffs)) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
    if (p.empty()) throw error("DiffOp: zero operator");
    if (normalize) normalize_coeffs(p);
  }

  int order() const { return static_cast<int>(p.size()) - 1; }
  const Poly<T>& leading() const { return p.back(); }

  // equality of the monic normal forms (same solution space presentation)
  bool same_operator(const DiffOpT& o) const {
    if (order() != o.order()) return false;
    for (int i = 0; i < order(); ++i)
      if (!(p[i] * o.p.back() == o.p[i] * p.back())) return false;
    return true;
  }

  // apply to a truncated power series (lowest-first), result truncated to the
  // same length; used for residual checks
  std::vector<T> apply_series(const std::vector<T>& s) const {
    size_t n = s.size();
    std::vector<T> out(n, T(0));
    std::vector<T> deriv = s;
    for (int i = 0; i <= order(); ++i) {
      for (size_t j = 0; j < n; ++j) {
        if (deriv.size() <= j) break;
        if (deriv[j] == T(0)) continue;
        for (size_t k = 0; k + j < n && k < p[i].c.size(); ++k)
          out[j + k] += p[i].c[k] * deriv[j];
      }
      // differentiate the series
      std::vector<T> d(deriv.size() > 1 ? deriv.size() - 1 : 0, T(0));
      for (size_t j = 1; j < deriv.size(); ++j) d[j - 1] = deriv[j] * T(static_cast<long>(j));
      deriv = std::move(d);
    }
    return out;
  }

  std::string to_string(const std::string& var = "x") const {
    std::string out;
    for (int i = order(); i >= 0; --i) {
      if (p[i].is_zero()) continue;
      if (!out.empty()) out += " + ";
      out += "(" + poly_to_string(p[i], var) + ")";
      if (i > 0) out += "*D" + (i > 1 ? "^" + std::to_string(i) : "");
    }
    return out;
  }
};

using DiffOp = DiffOpT<Rat>;

// Euler form: sum a[k](x) delta^k with delta = x d/dx, x-polynomials kept on
// the left of delta powers.
template <class T>
struct DeltaOpT {
  std::vector<Poly<T>> a;
  int order() const { return static_cast<int>(a.size()) - 1; }
};
using DeltaOp = DeltaOpT<Rat>;

template <class T>
struct CompanionT {
  Mat<RatFunc<T>> A;  // Y' = A Y in the derivative frame (y, y', ..., y^(p-1))
};
using Companion = CompanionT<Rat>;

// ---------------------------------------------------------------------------
// delta form and indicial data
// ---------------------------------------------------------------------------

// x-power view of x^p L = sum_j x^j Q_j(delta) after stripping the common
// x^m; Q[0] is the indicial polynomial at 0.
template <class T>
std::vector<Poly<T>> delta_x_view(const DiffOpT<T>& L) {
  int p = L.order();
  // falling factorials fall_i(lambda) = lambda (lambda-1) ... (lambda-i+1)
  std::vector<Poly<T>> fall(p + 1);
  fall[0] = Poly<T>::constant(T(1));
  for (int i = 1; i <= p; ++i)
    fall[i] = fall[i - 1] * Poly<T>{T(-(i - 1)), T(1)};
  std::vector<Poly<T>> Q;  // index = x-power
  for (int i = 0; i <= p; ++i) {
    Poly<T> shifted = L.p[i].shifted_up(p - i);  // p_i(x) x^(p-i)
    for (int m = 0; m <= shifted.degree(); ++m) {
      if (shifted.coeff(m) == T(0)) continue;
      if (static_cast<int>(Q.size()) <= m) Q.resize(m + 1);
      Q[m] += fall[i] * shifted.coeff(m);
    }
  }
  // strip leading zero x-powers
  size_t m = 0;
  while (m < Q.size() && Q[m].is_zero()) ++m;
  Q.erase(Q.begin(), Q.begin() + m);
  if (Q.empty()) throw error("delta_x_view: zero operator");
  return Q;
}

template <class T>
DeltaOpT<T> to_delta_form(const DiffOpT<T>& L) {
  auto Q = delta_x_view(L);
  DeltaOpT<T> d;
  int maxdeg = 0;
  for (const auto& q : Q) maxdeg = std::max(maxdeg, q.degree());
  d.a.resize(maxdeg + 1);
  for (size_t j = 0; j < Q.size(); ++j)
    for (int k = 0; k <= Q[j].degree(); ++k) {
      if (Q[j].coeff(k) == T(0)) continue;
      d.a[k] += Poly<T>::monomial(Q[j].coeff(k), static_cast<int>(j));
    }
  while (!d.a.empty() && d.a.back().is_zero()) d.a.pop_back();
  return d;
}

// delta^k = sum_i S2(k,i) x^i D^i with Stirling numbers of the second kind
template <class T>
DiffOpT<T> from_delta_form(const DeltaOpT<T>& d) {
  int n = d.order();
  // S2 table
  std::vector<std::vector<long>> S(n + 1, std::vector<long>(n + 1, 0));
  S[0][0] = 1;
  for (int k = 1; k <= n; ++k)
    for (int i = 1; i <= k; ++i) S[k][i] = S[k - 1][i - 1] + i * S[k - 1][i];
  std::vector<Poly<T>> p(n + 1);
  for (int k = 0; k <= n; ++k) {
    if (d.a[k].is_zero()) continue;
    for (int i = 0; i <= k; ++i) {
      if (S[k][i] == 0) continue;
      p[i] += d.a[k].shifted_up(i) * T(S[k][i]);
    }
  }
  return DiffOpT<T>(std::move(p));
}

// delta-form companion: delta Y = A(x) Y with Y = (y, delta y, ...); entries
// have no pole at 0 exactly when 0 is ordinary or regular singular
template <class T>
CompanionT<T> delta_companion(const DeltaOpT<T>& d) {
  int n = d.order();
  CompanionT<T> c;
  c.A = Mat<RatFunc<T>>(n, n);
  for (int i = 0; i + 1 < n; ++i) c.A[i][i + 1] = RatFunc<T>(T(1));
  for (int j = 0; j < n; ++j)
    c.A[n - 1][j] = RatFunc<T>(-d.a[j], d.a[n]);
  return c;
}

// ---------------------------------------------------------------------------
// structural operations (templated over the coefficient field)
// ---------------------------------------------------------------------------

template <class T>
CompanionT<T> to_companion(const DiffOpT<T>& L) {
  int n = L.order();
  CompanionT<T> c;
  c.A = Mat<RatFunc<T>>(n, n);
  for (int i = 0; i + 1 < n; ++i) c.A[i][i + 1] = RatFunc<T>(T(1));
  for (int j = 0; j < n; ++j) c.A[n - 1][j] = RatFunc<T>(-L.p[j], L.p[n]);
  return c;
}

// minimal scalar operator annihilating u = v . (y, y', ..., y^(p-1)) for all
// solutions y of the system Y' = A Y
template <class T>
DiffOpT<T> system_to_scalar(const Mat<RatFunc<T>>& A, std::vector<RatFunc<T>> v) {
  int n = A.rows();
  std::vector<std::vector<RatFunc<T>>> rows;  // r_k = coefficients of u^(k)
  rows.push_back(std::move(v));
  for (int k = 1; k <= n; ++k) {
    const auto& r = rows.back();
    std::vector<RatFunc<T>> nxt(n, RatFunc<T>());
    for (int j = 0; j < n; ++j) {
      nxt[j] = r[j].derivative();
      for (int i = 0; i < n; ++i) nxt[j] += r[i] * A[i][j];
    }
    rows.push_back(std::move(nxt));
  }
  // find the smallest k with r_k dependent on r_0..r_{k-1}
  for (int k = 1; k <= n; ++k) {
    Mat<RatFunc<T>> M(k, n);
    for (int i = 0; i < k; ++i) M[i] = rows[i];
    Mat<RatFunc<T>> Mk = M;
    Mk.a.push_back(rows[k]);
    std::vector<int> piv;
    Mat<RatFunc<T>> Mred = M;
    int rank_small = row_reduce(Mred);
    Mat<RatFunc<T>> Mkred = Mk;
    int rank_big = row_reduce(Mkred);
    if (rank_small < k) continue;  // earlier dependence: should not happen, keep scanning
    if (rank_big == rank_small) {
      // solve sum c_i r_i = r_k
      Mat<RatFunc<T>> Mt(n, k);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < n; ++j) Mt[j][i] = rows[i][j];
      // least-squares-free exact solve: pick k independent rows of Mt
      Mat<RatFunc<T>> sq(k, k);
      std::vector<RatFunc<T>> rhs(k);
      int filled = 0;
      for (int j = 0; j < n && filled < k; ++j) {
        Mat<RatFunc<T>> trial(filled + 1, k);
        for (int i = 0; i < filled; ++i) trial[i] = sq[i];
        for (int i = 0; i < k; ++i) trial[filled][i] = Mt[j][i];
        Mat<RatFunc<T>> tr = trial;
        if (row_reduce(tr) == filled + 1) {
          sq[filled] = trial[filled];
          rhs[filled] = rows[k][j];
          ++filled;
        }
      }
      if (filled < k) throw error("system_to_scalar: rank bookkeeping failed");
      auto c = solve(sq, rhs);
      // operator u^(k) - sum c_i u^(i): clear denominators
      std::vector<RatFunc<T>> coeffs(k + 1);
      for (int i = 0; i < k; ++i) coeffs[i] = -c[i];
      coeffs[k] = RatFunc<T>(T(1));
      Poly<T> den = Poly<T>::constant(T(1));
      for (auto& f : coeffs) den = den * f.den / poly_gcd(den, f.den);
      std::vector<Poly<T>> pc(k + 1);
      for (int i = 0; i <= k; ++i) pc[i] = coeffs[i].num * (den / coeffs[i].den);
      return DiffOpT<T>(std::move(pc));
    }
  }
  throw error("system_to_scalar: no dependence up to system order");
}

// y(phi(x)) for nonconstant rational phi; exact via the companion system
template <class T>
DiffOpT<T> pullback(const DiffOpT<T>& L, const RatFunc<T>& phi) {
  RatFunc<T> dphi = phi.derivative();
  if (dphi.is_zero()) throw error("pullback: constant substitution");
  auto C = to_companion(L);
  int n = L.order();
  Mat<RatFunc<T>> B(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (C.A[i][j].is_zero()) continue;
      B[i][j] = C.A[i][j].compose(phi) * dphi;
    }
  std::vector<RatFunc<T>> e1(n, RatFunc<T>());
  e1[0] = RatFunc<T>(T(1));
  DiffOpT<T> R = system_to_scalar(B, e1);
  if (R.order() != n)
    throw error("pullback: first coordinate not cyclic (order dropped)");
  return R;
}

// conjugation by a gauge with logarithmic derivative h: if z = gamma w with
// gamma'/gamma = h and L z = 0, the returned operator annihilates w.
template <class T>
DiffOpT<T> gauge_conjugate(const DiffOpT<T>& L, const RatFunc<T>& h) {
  int n = L.order();
  // (D + h)^k as sum_j c_{k,j} D^j
  std::vector<std::vector<RatFunc<T>>> c(n + 1);
  c[0] = {RatFunc<T>(T(1))};
  for (int k = 1; k <= n; ++k) {
    c[k].assign(k + 1, RatFunc<T>());
    for (int j = 0; j <= k - 1; ++j) {
      c[k][j] += c[k - 1][j].derivative() + h * c[k - 1][j];
      c[k][j + 1] += c[k - 1][j];
    }
  }
  std::vector<RatFunc<T>> b(n + 1);
  for (int k = 0; k <= n; ++k) {
    if (L.p[k].is_zero()) continue;
    RatFunc<T> pk{L.p[k]};
    for (int j = 0; j <= k; ++j) b[j] += pk * c[k][j];
  }
  Poly<T> den = Poly<T>::constant(T(1));
  for (auto& f : b) den = den * f.den / poly_gcd(den, f.den);
  std::vector<Poly<T>> pc(n + 1);
  for (int i = 0; i <= n; ++i) pc[i] = b[i].num * (den / b[i].den);
  return DiffOpT<T>(std::move(pc));
}

// operator for the translated variable u = x - a: coefficients shifted so
// local analysis happens at 0
template <class T, class S>
DiffOpT<S> shift_to(const DiffOpT<T>& L, const S& a) {
  std::vector<Poly<S>> q;
  q.reserve(L.p.size());
  for (const auto& pi : L.p) {
    std::vector<S> cs;
    cs.reserve(pi.c.size());
    for (const auto& v : pi.c) cs.push_back(S(v));
    q.push_back(Poly<S>(std::move(cs)).taylor_shift(a));
  }
  return DiffOpT<S>(std::move(q));
}

inline DiffOpT<NFElem> lift_op(const DiffOp& L, const FieldPtr& F) {
  std::vector<Poly<NFElem>> q;
  q.reserve(L.p.size());
  for (const auto& pi : L.p) q.push_back(lift_poly(pi, F));
  return DiffOpT<NFElem>(std::move(q), false);
}

// ---------------------------------------------------------------------------
// Rat-specific operations (definitions in diffop.cpp)
// ---------------------------------------------------------------------------

// all singular points: roots of the leading coefficient (grouped by
// irreducible factor, one AlgebraicPoint per embedding) plus infinity when
// the point at infinity is not ordinary
std::vector<AlgebraicPoint> singular_points(const DiffOp& L);

// operator seen from infinity: annihilator of y(1/x)
DiffOp op_at_infinity(const DiffOp& L);

bool is_ordinary_point(const DiffOp& L, const AlgebraicPoint& a);

// indicial polynomial in lambda at the given point; throws at an irregular
// singular point (the Frobenius exponent count would be deficient)
Poly<Rat> indicial_polynomial(const DiffOp& L, const Rat& a);
Poly<Rat> indicial_polynomial_at_infinity(const DiffOp& L);
Poly<NFElem> indicial_polynomial(const DiffOp& L, const NFElem& a);

// certificate that local solutions cannot all be meromorphic: some indicial
// exponent is not a rational integer.  false means every exponent is an
// integer (polar or apparent type as far as exponents can tell).
bool has_nonintegral_exponent(const DiffOp& L, const AlgebraicPoint& a);

// multiplicative gauge factor c * prod base_i(x)^{e_i}
struct GaugeFactor {
  Rat constant = Rat(1);
  std::vector<std::pair<Poly<Rat>, Rat>> powers;  // monic bases, rational exponents

  void normalize();
  GaugeFactor inverse() const;
  friend GaugeFactor operator*(const GaugeFactor& a, const GaugeFactor& b);
  bool operator==(const GaugeFactor& o) const;
  RatFunc<Rat> logderiv() const;
  BigComplex evaluate(const BigComplex& x, mpfr_prec_t prec) const;
  std::string to_string(const std::string& var = "x") const;
};

// gamma with gamma'/gamma = h, as a finite product of rational powers of
// polynomials; requires zero polynomial part, simple poles, and rational
// residues, otherwise throws (no such finite product exists / not supported)
GaugeFactor integrate_logderiv(const RatFunc<Rat>& h);

// order-2 normal form: returns r with w'' = r w for z = gamma w
struct NormalForm2 {
  RatFunc<Rat> r;
  GaugeFactor gauge;
};
NormalForm2 remove_subleading_derivative(const DiffOp& L);

// symmetric square of an order-2 operator (order 3, normalized)
DiffOp sym_square(const DiffOp& L2);

// inverse direction: if L3 is projectively a symmetric square, return the
// r of the order-2 operator w'' = r w and the gauge with
// solutions(L3) = gauge * solutions(sym_square); throws otherwise
struct SymSquareRoot {
  RatFunc<Rat> r;
  GaugeFactor gauge;
};
SymSquareRoot sym_square_root(const DiffOp& L3);

// recurrence sum_j taps[j](n) c_{n+1-j} = 0 for series coefficients at 0
struct Recurrence {
  std::vector<Poly<Rat>> taps;
};
Recurrence coefficient_recurrence(const DiffOp& L);

// power series basis at an ordinary rational point: solution k has
// c_j = delta_{jk} for j < order, truncated at length N
std::vector<std::vector<Rat>> series_solutions_at_ordinary(const DiffOp& L, const Rat& a,
                                                           int N);

}  // namespace fuchs
