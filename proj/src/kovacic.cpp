#include "fuchs/kovacic.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <utility>

#include "fuchs/evalcx.hpp"
#include "fuchs/factor.hpp"
#include "fuchs/roots.hpp"

namespace fuchs {
namespace {

using RF = RatFunc<Rat>;
using NP = Poly<NFElem>;
using NRF = RatFunc<NFElem>;

constexpr long kDegreeCap = 10000;        // degree bound d beyond which we refuse
constexpr long kCandidateCap = 200000;    // product of per-site option counts
constexpr mpfr_prec_t kScreenPrec = 320;  // screening precision
constexpr long kScreenMargin = -100;      // log2 of the accept/prune margin

Rat dyadic_of(const BigFloat& x, long bits) {
  // round x * 2^bits to an integer
  BigFloat scaled = ldexp2(x, bits);
  mpz_class n;
  mpfr_get_z(n.get_mpz_t(), scaled.raw(), MPFR_RNDN);
  Rat r(n);
  r /= Rat(Int(1) << static_cast<unsigned>(bits));
  return r;
}

// --- exact surd bookkeeping -------------------------------------------------
//
// Values of the form q + f*sqrt(R).  Radicands are grouped by the pairwise
// perfect-square-ratio test, so two surds cancel exactly when they are
// rational multiples of each other; distinct classes are linearly independent
// over Q.  sqrt of a negative rational means +i*sqrt(|.|) throughout.

struct QuadVal {
  Rat q;      // rational part
  Rat f = 0;  // surd coefficient
  Rat R = 0;  // radicand, nonzero iff f nonzero

  QuadVal() : q(0) {}
  explicit QuadVal(Rat q0) : q(std::move(q0)) {}
  QuadVal(Rat q0, Rat f0, Rat R0) : q(std::move(q0)), f(std::move(f0)), R(std::move(R0)) {
    if (f == 0 || R == 0) {
      f = 0;
      R = 0;
    } else if (auto s = rat_sqrt(R)) {
      q += f * *s;
      f = 0;
      R = 0;
    }
  }
};

BigComplex sqrt_approx(const Rat& R, mpfr_prec_t prec) { return sqrt(BigComplex(R, prec)); }

BigComplex quadval_approx(const QuadVal& v, mpfr_prec_t prec) {
  BigComplex out(v.q, prec);
  if (v.f != 0) out = out + BigComplex(v.f, prec) * sqrt_approx(v.R, prec);
  return out;
}

struct SurdSum {
  Rat q = 0;
  std::map<Rat, Rat> surds;  // class representative radicand -> coefficient

  void add_surd(Rat f, const Rat& R) {
    if (f == 0 || R == 0) return;
    if (auto s = rat_sqrt(R)) {
      q += f * *s;
      return;
    }
    for (auto& [rep, c] : surds) {
      if (auto t = rat_sqrt(R / rep)) {
        c += f * *t;
        return;
      }
    }
    surds.emplace(R, std::move(f));
  }
  void add(const QuadVal& v) {
    q += v.q;
    add_surd(v.f, v.R);
  }
  void sub(const QuadVal& v) {
    q -= v.q;
    add_surd(-v.f, v.R);
  }
  bool is_rational() {
    for (auto it = surds.begin(); it != surds.end();)
      it = (it->second == 0) ? surds.erase(it) : std::next(it);
    return surds.empty();
  }
};

// --- truncated power series over a number field ------------------------------

using Series = std::vector<NFElem>;

Series series_of(const NP& p, int k) {
  Series s(static_cast<size_t>(k), NFElem(0L));
  for (int i = 0; i < k && i <= p.degree(); ++i) s[static_cast<size_t>(i)] = p.coeff(i);
  return s;
}

Series series_mul(const Series& a, const Series& b, int k) {
  Series r(static_cast<size_t>(k), NFElem(0L));
  for (int i = 0; i < k && i < static_cast<int>(a.size()); ++i) {
    if (a[static_cast<size_t>(i)].is_zero()) continue;
    for (int j = 0; i + j < k && j < static_cast<int>(b.size()); ++j)
      r[static_cast<size_t>(i + j)] += a[static_cast<size_t>(i)] * b[static_cast<size_t>(j)];
  }
  return r;
}

Series series_inv(const Series& u, int k) {
  if (u.empty() || u[0].is_zero()) throw error("kovacic: series not invertible");
  Series v(static_cast<size_t>(k), NFElem(0L));
  NFElem u0i = u[0].inverse();
  v[0] = u0i;
  for (int i = 1; i < k; ++i) {
    NFElem acc(0L);
    for (int j = 1; j <= i; ++j)
      if (j < static_cast<int>(u.size())) acc += u[static_cast<size_t>(j)] * v[static_cast<size_t>(i - j)];
    v[static_cast<size_t>(i)] = -(acc * u0i);
  }
  return v;
}

// p(w + c) as a polynomial in w over the field of c
NP shift_lift(const Poly<Rat>& p, const NFElem& c) {
  NP acc;
  NP w_plus_c{c, NFElem(1L)};
  for (int i = p.degree(); i >= 0; --i) acc = acc * w_plus_c + NP::constant(NFElem(p.coeff(i)));
  return acc;
}

// formal square-root ratio series: h[0] = 1 and sum_{a+b=k} h_a h_b = lau[k]/lau[0]
std::vector<NFElem> sqrt_ratio_series(const std::vector<NFElem>& lau, int upto) {
  std::vector<NFElem> h(static_cast<size_t>(upto) + 1, NFElem(0L));
  h[0] = NFElem(1L);
  NFElem inv0 = lau[0].inverse();
  NFElem half(Rat(1, 2));
  for (int k = 1; k <= upto; ++k) {
    NFElem rk = (k < static_cast<int>(lau.size())) ? lau[static_cast<size_t>(k)] * inv0 : NFElem(0L);
    NFElem acc(0L);
    for (int i = 1; i <= k - 1; ++i) acc += h[static_cast<size_t>(i)] * h[static_cast<size_t>(k - i)];
    h[static_cast<size_t>(k)] = (rk - acc) * half;
  }
  return h;
}

// --- pole sites ---------------------------------------------------------------

FieldPtr family_field(const Poly<Rat>& m) {
  auto rs = complex_roots(m, 192);
  BigFloat sep(1e30, 192);
  for (size_t i = 0; i < rs.size(); ++i)
    for (size_t j = i + 1; j < rs.size(); ++j) sep = min(sep, abs(rs[i] - rs[j]));
  // distinguished embedding: first root in the (re, im) order
  const BigComplex& z = rs.front();
  Rat cre = dyadic_of(z.re, 64);
  Rat cim = dyadic_of(z.im, 64);
  Rat rad = dyadic_of(sep / 3L, 64);
  if (rad == 0) rad = Rat(Int(1), Int(1) << 62);
  return NumberField::make(m, ComplexBox{cre, cim, rad});
}

std::vector<NFElem> laurent_at(const RatFunc<Rat>& r, const Poly<Rat>& m, int nu, const NFElem& pt,
                               int k) {
  Poly<Rat> rest = r.den;
  for (int i = 0; i < nu; ++i) rest = rest / m;
  NP A = shift_lift(r.num, pt);
  NP mm = shift_lift(m, pt);
  if (!mm.coeff(0).is_zero()) throw error("kovacic: internal Laurent shift error");
  std::vector<NFElem> mtc(mm.c.begin() + 1, mm.c.end());
  NP mt(std::move(mtc));
  NP U = mt.pow(nu) * shift_lift(rest, pt);
  return series_mul(series_of(A, k), series_inv(series_of(U, k), k), k);
}

void fill_sqrt_data(PoleData& s) {
  if (s.order < 4 || s.order % 2 != 0) return;
  int v = s.order / 2;
  const NFElem& l0 = s.laurent[0];
  NFElem shat;
  if (l0.is_rational()) {
    auto rt = rat_sqrt(l0.rat_value());
    if (!rt) return;
    shat = NFElem(*rt);
  } else {
    auto sq = sqrt_in_field(l0);
    if (sq.status != SqrtStatus::found) return;
    shat = sq.value;
  }
  auto h = sqrt_ratio_series(s.laurent, v - 1);
  s.sqrt_part.clear();
  for (int j = 0; j <= v - 2; ++j) s.sqrt_part.push_back(shat * h[static_cast<size_t>(j)]);
  s.sqrt_b = NFElem(2L) * l0 * h[static_cast<size_t>(v - 1)];
  s.sqrt_ok = true;
}

// --- behaviour at infinity ----------------------------------------------------

struct InfData {
  int o = 0;             // deg den - deg num
  std::vector<Rat> ser;  // r(1/z) = z^o (ser[0] + ser[1] z + ...), ser[0] != 0
};

InfData inf_data(const RatFunc<Rat>& r) {
  InfData d;
  d.o = r.den.degree() - r.num.degree();
  int k = std::max(1, d.o <= 0 ? (-d.o) / 2 + 2 : 1);
  NP rn = lift_poly(r.num.reversed(), nullptr);
  NP rd = lift_poly(r.den.reversed(), nullptr);
  Series s = series_mul(series_of(rn, k), series_inv(series_of(rd, k), k), k);
  for (auto& e : s) d.ser.push_back(e.is_zero() ? Rat(0) : e.rat_value());
  return d;
}

// --- Galois-stable family sums -------------------------------------------------

// m(x)/(x - t) over F = Q[t]/(m), by synthetic division at the generator
NP m_over_gen(const Poly<Rat>& m, const FieldPtr& F) {
  NFElem t = NFElem::gen(F);
  int k = m.degree();
  std::vector<NFElem> q(static_cast<size_t>(k));
  NFElem carry(1L);
  q[static_cast<size_t>(k - 1)] = carry;
  for (int j = k - 1; j >= 1; --j) {
    carry = NFElem(m.coeff(j)) + t * carry;
    q[static_cast<size_t>(j - 1)] = carry;
  }
  return NP(std::move(q));
}

// sum over the conjugate roots a of m of phi(a) / (x - a)^p, a rational function
RF trace_partial_pow(const Poly<Rat>& m, const FieldPtr& F, const NFElem& phi, int p) {
  NP qp = m_over_gen(m, F).pow(p);
  NFElem phiF = NFElem(F, phi.rep());
  std::vector<Rat> ncoef(static_cast<size_t>(qp.degree()) + 1);
  for (int j = 0; j <= qp.degree(); ++j) ncoef[static_cast<size_t>(j)] = (phiF * qp.coeff(j)).trace();
  return RF(Poly<Rat>(std::move(ncoef)), m.pow(p));
}

RF trace_partial(const Poly<Rat>& m, const FieldPtr& F, const NFElem& phi) {
  return trace_partial_pow(m, F, phi, 1);
}

// conjugation of a degree-2 field element: t -> -m1 - t
NFElem conj2(const NFElem& e, const FieldPtr& F) {
  const Poly<Rat>& m = F->minpoly();
  NFElem image = NFElem(F, Poly<Rat>{-m.coeff(1), Rat(-1)});
  return NFElem(F, e.rep()).map_generator(image);
}

// exact q + f sqrt(disc m) form of a degree-2 field element, with the surd sign
// fixed by the field's distinguished embedding
QuadVal nf2_to_quadval(const NFElem& e, const FieldPtr& F) {
  Poly<Rat> rep = NFElem(F, e.rep()).rep();
  Rat a = rep.coeff(0), b = rep.coeff(1);
  if (b == 0) return QuadVal(a);
  const Poly<Rat>& m = F->minpoly();
  Rat m1 = m.coeff(1);
  Rat disc = m1 * m1 - Rat(4) * m.coeff(0);
  // t = (-m1 + sign*sqrt(disc))/2; pick the sign matching the embedding box
  BigComplex t_num = NFElem::gen(F).to_complex(192);
  BigComplex plus = (BigComplex(BigFloat(-m1, 192), BigFloat(0L, 192)) + sqrt_approx(disc, 192)) / 2L;
  BigComplex minus = (BigComplex(BigFloat(-m1, 192), BigFloat(0L, 192)) - sqrt_approx(disc, 192)) / 2L;
  Rat sign = abs(t_num - plus) < abs(t_num - minus) ? Rat(1) : Rat(-1);
  return QuadVal(a - b * m1 / 2, sign * b / 2, disc);
}

BigComplex flip(const BigComplex& z, long sgn) { return sgn < 0 ? -z : z;
}

// --- omega accumulation (case 1) ------------------------------------------------

struct OmegaAcc {
  RF rat;
  std::map<Rat, RF> surd;  // radicand class -> coefficient
  FieldPtr F;              // at most one family field part
  NRF fpart;

  void add_rat(const RF& a) { rat += a; }
  void add_surd(const Rat& R, const RF& a) {
    if (R == 0 || a.is_zero()) return;
    if (auto s = rat_sqrt(R)) {
      rat += a * *s;
      return;
    }
    for (auto& [rep, c] : surd) {
      if (auto t = rat_sqrt(R / rep)) {
        c += a * *t;
        return;
      }
    }
    surd.emplace(R, a);
  }
  void add_field(const FieldPtr& G, const NRF& a) {
    if (a.is_zero()) return;
    if (F && F != G)
      throw error("kovacic: candidate needs a compositum of number fields; refusing to classify");
    F = G;
    fpart += a;
  }
};

NRF lift_rf(const RF& a, const FieldPtr& F) { return NRF(lift_poly(a.num, F), lift_poly(a.den, F)); }

// resolve the accumulated parts into one coefficient field
std::pair<NRF, FieldPtr> finalize_omega(OmegaAcc acc) {
  for (auto it = acc.surd.begin(); it != acc.surd.end();)
    it = it->second.is_zero() ? acc.surd.erase(it) : std::next(it);
  if (acc.F) {
    NRF out = lift_rf(acc.rat, acc.F) + acc.fpart;
    for (auto& [R, c] : acc.surd) {
      auto sq = sqrt_in_field(NFElem(acc.F, Poly<Rat>::constant(R)));
      if (sq.status != SqrtStatus::found)
        throw error("kovacic: candidate needs a compositum of number fields; refusing to classify");
      out += lift_rf(c, acc.F) * sq.value;
    }
    return {out, acc.F};
  }
  if (acc.surd.empty()) return {lift_rf(acc.rat, nullptr), nullptr};
  if (acc.surd.size() > 1)
    throw error("kovacic: candidate needs a compositum of quadratic surds; refusing to classify");
  const auto& [R, c] = *acc.surd.begin();
  // adjoin sqrt(R): positive radicand on the real axis, negative on the imaginary
  BigFloat root = abs(sqrt_approx(R, 192));
  Rat mag = dyadic_of(root, 96);
  if (mag == 0) throw error("kovacic: surd too small to box");
  ComplexBox box = R > 0 ? ComplexBox{mag, Rat(0), mag / 2} : ComplexBox{Rat(0), mag, mag / 2};
  FieldPtr W = NumberField::make(Poly<Rat>{-R, Rat(0), Rat(1)}, box);
  NRF out = lift_rf(acc.rat, W) + lift_rf(c, W) * NFElem::gen(W);
  return {out, W};
}

// --- linear algebra over a number field -----------------------------------------

// one solution of sum_j c_j cols[j] = rhs (free variables zero), or nullopt
std::optional<std::vector<NFElem>> solve_linear(const std::vector<std::vector<NFElem>>& cols,
                                                const std::vector<NFElem>& rhs) {
  size_t nrows = rhs.size(), ncols = cols.size();
  std::vector<std::vector<NFElem>> M(nrows, std::vector<NFElem>(ncols + 1, NFElem(0L)));
  for (size_t j = 0; j < ncols; ++j)
    for (size_t i = 0; i < cols[j].size() && i < nrows; ++i) M[i][j] = cols[j][i];
  for (size_t i = 0; i < nrows; ++i) M[i][ncols] = rhs[i];

  std::vector<long> pivot_of_col(ncols, -1);
  size_t prow = 0;
  for (size_t j = 0; j < ncols && prow < nrows; ++j) {
    size_t sel = prow;
    while (sel < nrows && M[sel][j].is_zero()) ++sel;
    if (sel == nrows) continue;
    std::swap(M[sel], M[prow]);
    NFElem inv = M[prow][j].inverse();
    for (size_t jj = j; jj <= ncols; ++jj) M[prow][jj] = M[prow][jj] * inv;
    for (size_t i = 0; i < nrows; ++i) {
      if (i == prow || M[i][j].is_zero()) continue;
      NFElem f = M[i][j];
      for (size_t jj = j; jj <= ncols; ++jj) M[i][jj] = M[i][jj] - f * M[prow][jj];
    }
    pivot_of_col[j] = static_cast<long>(prow);
    ++prow;
  }
  for (size_t i = prow; i < nrows; ++i)
    if (!M[i][ncols].is_zero()) return std::nullopt;
  std::vector<NFElem> sol(ncols, NFElem(0L));
  for (size_t j = 0; j < ncols; ++j)
    if (pivot_of_col[j] >= 0) sol[j] = M[static_cast<size_t>(pivot_of_col[j])][ncols];
  return sol;
}

// monic P of degree d with sum_t A[t] P^(t) identically zero
std::optional<NP> solve_p(const std::vector<NRF>& A, long d) {
  NP den = NP::constant(NFElem(1L));
  for (const auto& a : A) den = den * (a.den / poly_gcd(den, a.den));
  std::vector<NP> B(A.size());
  int maxb = 0;
  for (size_t t = 0; t < A.size(); ++t) {
    B[t] = A[t].num * (den / A[t].den);
    maxb = std::max(maxb, B[t].degree());
  }
  size_t nrows = static_cast<size_t>(maxb + d + 1);
  auto column = [&](long j) {
    std::vector<NFElem> col(nrows, NFElem(0L));
    for (size_t t = 0; t < B.size(); ++t) {
      if (static_cast<long>(t) > j) continue;
      Rat ff(1);
      for (long k = 0; k < static_cast<long>(t); ++k) ff *= Rat(j - k);
      if (ff == 0) continue;
      NP term = B[t] * NFElem(ff);
      for (int i = 0; i <= term.degree(); ++i) {
        size_t row = static_cast<size_t>(i + j - static_cast<long>(t));
        if (row < nrows) col[row] += term.coeff(i);
      }
    }
    return col;
  };
  std::vector<NFElem> rhs = column(d);
  for (auto& e : rhs) e = -e;
  std::vector<std::vector<NFElem>> cols;
  for (long j = 0; j < d; ++j) cols.push_back(column(j));
  auto sol = solve_linear(cols, rhs);
  if (!sol) return std::nullopt;
  std::vector<NFElem> pc = *sol;
  pc.push_back(NFElem(1L));
  return NP(std::move(pc));
}

// --- candidate enumeration -------------------------------------------------------

struct Odometer {
  std::vector<size_t> sizes, idx;
  explicit Odometer(std::vector<size_t> s) : sizes(std::move(s)), idx(sizes.size(), 0) {}
  bool empty() const {
    return std::any_of(sizes.begin(), sizes.end(), [](size_t v) { return v == 0; });
  }
  bool next() {
    for (size_t i = 0; i < idx.size(); ++i) {
      if (++idx[i] < sizes[i]) return true;
      idx[i] = 0;
    }
    return false;
  }
};

long option_product(const std::vector<size_t>& sizes) {
  long p = 1;
  for (size_t v : sizes) {
    p *= static_cast<long>(v);
    if (p > kCandidateCap) throw error("kovacic: candidate space exceeds the search cap");
  }
  return p;
}

// ---- case 1 ----------------------------------------------------------------------

struct C1Opt {
  bool screened = false;
  QuadVal alpha;     // family sum of the chosen exponents (exact options)
  RF om_rat;         // rational omega contribution
  Rat Rcls = 0;      // surd class of om_irr (0 = none)
  RF om_irr;         // coefficient of sqrt(Rcls)
  FieldPtr F;        // number-field omega contribution (degree-2 mixed signs)
  NRF om_f;
  BigComplex anum{kScreenPrec};  // screened options: numeric family sum
};

// principal part of sqrt(r) at a rational point c, from the ratio series h
RF sqrt_principal_rat(const Rat& c, const Rat& shat, const std::vector<NFElem>& h, int v) {
  Poly<Rat> xc{-c, Rat(1)};
  Poly<Rat> numr;
  for (int j = 0; j <= v - 2; ++j) {
    Rat hj = h[static_cast<size_t>(j)].is_zero() ? Rat(0) : h[static_cast<size_t>(j)].rat_value();
    numr += Poly<Rat>::constant(shat * hj) * xc.pow(j);
  }
  return RF(numr, xc.pow(v));
}

// same over the site field, at the pole a (either the generator or its conjugate)
NRF sqrt_principal_field(const NFElem& a, const NFElem& shat, const std::vector<NFElem>& h, int v,
                         bool conj, const FieldPtr& F) {
  NP xa{-a, NFElem(1L)};
  NP numr;
  for (int j = 0; j <= v - 2; ++j) {
    NFElem hj = conj ? conj2(shat * h[static_cast<size_t>(j)], F) : shat * h[static_cast<size_t>(j)];
    numr += NP::constant(hj) * xa.pow(j);
  }
  return NRF(numr, xa.pow(v));
}

// option list for one pole site; nullopt when the site rules case 1 out
std::optional<std::vector<C1Opt>> case1_site_options(const PoleData& s) {
  std::vector<C1Opt> opts;
  int k = s.family_size();
  RF logm(s.m.derivative(), s.m);

  if (s.order == 1) {
    C1Opt o;
    o.alpha = QuadVal(Rat(k));
    o.om_rat = logm;
    opts.push_back(std::move(o));
    return opts;
  }
  if (s.order % 2 != 0) return std::nullopt;

  if (s.order == 2) {
    const NFElem& b = s.laurent[0];
    if (b.is_rational()) {
      Rat D = 1 + 4 * b.rat_value();
      if (auto delta = rat_sqrt(D)) {
        for (Rat sgn : {Rat(1), Rat(-1)}) {
          Rat al = (1 + sgn * *delta) / 2;
          C1Opt o;
          o.alpha = QuadVal(Rat(k) * al);
          o.om_rat = logm * al;
          opts.push_back(std::move(o));
          if (*delta == 0) break;
        }
        if (k == 2 && *delta != 0) {
          // opposite signs at the two conjugate poles: the cross term collects
          // into a single surd sqrt(D * disc m)
          Rat m1 = s.m.coeff(1);
          Rat disc = m1 * m1 - Rat(4) * s.m.coeff(0);
          for (Rat sgn : {Rat(1), Rat(-1)}) {
            C1Opt o;
            o.alpha = QuadVal(Rat(1));
            o.om_rat = logm * Rat(1, 2);
            o.Rcls = D * disc;
            o.om_irr = RF(Poly<Rat>::constant(sgn / 2), s.m);
            opts.push_back(std::move(o));
          }
        }
      } else {
        for (Rat sgn : {Rat(1), Rat(-1)}) {
          C1Opt o;
          o.alpha = QuadVal(Rat(k) / 2, sgn * Rat(k) / 2, D);
          o.om_rat = logm * Rat(1, 2);
          o.Rcls = D;
          o.om_irr = logm * (sgn / 2);
          opts.push_back(std::move(o));
        }
        if (k == 2) {
          Rat m1 = s.m.coeff(1);
          Rat disc = m1 * m1 - Rat(4) * s.m.coeff(0);
          for (Rat sgn : {Rat(1), Rat(-1)}) {
            C1Opt o;
            o.alpha = QuadVal(Rat(1));
            o.om_rat = logm * Rat(1, 2);
            o.Rcls = D * disc;
            o.om_irr = RF(Poly<Rat>::constant(sgn / 2), s.m);
            opts.push_back(std::move(o));
          }
        }
      }
      return opts;
    }
    // b irrational over the family field
    NFElem D = NFElem(1L) + NFElem(4L) * b;
    auto sq = sqrt_in_field(D);
    if (sq.status == SqrtStatus::found) {
      NFElem half(Rat(1, 2));
      for (long sgn : {1L, -1L}) {
        NFElem al = (NFElem(1L) + NFElem(sgn) * sq.value) * half;
        C1Opt o;
        o.alpha = QuadVal(al.trace());
        o.om_rat = trace_partial(s.m, s.F, al);
        opts.push_back(std::move(o));
      }
      if (k == 2) {
        NFElem t = NFElem::gen(s.F);
        NFElem other = conj2(t, s.F);
        for (long sgn : {1L, -1L}) {
          NFElem alp = (NFElem(1L) + NFElem(sgn) * sq.value) * half;
          NFElem alm = conj2((NFElem(1L) - NFElem(sgn) * sq.value) * half, s.F);
          C1Opt o;
          o.alpha = nf2_to_quadval(alp + alm, s.F);
          o.F = s.F;
          o.om_f = NRF(NP::constant(alp), NP{-t, NFElem(1L)}) +
                   NRF(NP::constant(alm), NP{-other, NFElem(1L)});
          opts.push_back(std::move(o));
        }
      }
      return opts;
    }
    // no exact square root: numeric screening over all per-conjugate signs
    auto roots = complex_roots(s.m, kScreenPrec);
    std::vector<BigComplex> beta;
    for (const auto& th : roots) {
      BigComplex bv = eval_cx(b.rep(), th);
      beta.push_back(sqrt(BigComplex(1L, kScreenPrec) + bv * BigFloat(4L, kScreenPrec)));
    }
    size_t nvec = (k == 2) ? 4 : 2;  // degree >= 3 families: uniform signs only
    for (size_t mask = 0; mask < nvec; ++mask) {
      C1Opt o;
      o.screened = true;
      BigComplex acc(kScreenPrec);
      for (int i = 0; i < k; ++i) {
        long sgn = (k == 2 ? ((mask >> i) & 1) : (mask & 1)) ? -1 : 1;
        acc = acc + (BigComplex(1L, kScreenPrec) + flip(beta[static_cast<size_t>(i)], sgn)) / 2L;
      }
      o.anum = acc;
      opts.push_back(std::move(o));
    }
    return opts;
  }

  // even order 2v >= 4
  int v = s.order / 2;
  auto h = sqrt_ratio_series(s.laurent, v - 1);
  const NFElem& l0 = s.laurent[0];

  if (l0.is_rational() && k == 1) {
    Rat c = s.point.rat_value();
    Rat hv = h[static_cast<size_t>(v - 1)].rat_value();  // rational site: h stays rational
    Rat l0v = l0.rat_value();
    if (auto shat = rat_sqrt(l0v)) {
      RF part = sqrt_principal_rat(c, *shat, h, v);
      for (Rat sgn : {Rat(1), Rat(-1)}) {
        C1Opt o;
        o.alpha = QuadVal(make_rat(v, 2) + sgn * *shat * hv);
        o.om_rat = part * sgn + RF(Poly<Rat>::constant(o.alpha.q), Poly<Rat>{-c, Rat(1)});
        opts.push_back(std::move(o));
      }
    } else {
      RF part = sqrt_principal_rat(c, Rat(1), h, v);  // sqrt(l0) factored out
      for (Rat sgn : {Rat(1), Rat(-1)}) {
        C1Opt o;
        o.alpha = QuadVal(make_rat(v, 2), sgn * hv, l0v);
        o.om_rat = RF(Poly<Rat>::constant(make_rat(v, 2)), Poly<Rat>{-c, Rat(1)});
        o.Rcls = l0v;
        o.om_irr = (part + RF(Poly<Rat>::constant(hv), Poly<Rat>{-c, Rat(1)})) * sgn;
        opts.push_back(std::move(o));
      }
    }
    return opts;
  }

  // family site of even order >= 4
  NFElem shat;
  bool have_shat = false;
  if (l0.is_rational()) {
    if (auto rt = rat_sqrt(l0.rat_value())) {
      shat = NFElem(*rt);
      have_shat = true;
    }
  } else {
    auto sq = sqrt_in_field(l0);
    if (sq.status == SqrtStatus::found) {
      shat = sq.value;
      have_shat = true;
    }
  }
  if (have_shat) {
    NFElem hv = h[static_cast<size_t>(v - 1)];
    for (long sgn : {1L, -1L}) {
      C1Opt o;
      o.alpha = QuadVal(Rat(k) * make_rat(v, 2) + NFElem(NFElem(sgn) * shat * hv).trace());
      RF tail = trace_partial(s.m, s.F, NFElem(make_rat(v, 2)) + NFElem(sgn) * shat * hv);
      RF head;
      for (int j = 0; j <= v - 2; ++j)
        head += trace_partial_pow(s.m, s.F, NFElem(sgn) * shat * h[static_cast<size_t>(j)], v - j);
      o.om_rat = head + tail;
      opts.push_back(std::move(o));
    }
    if (k == 2) {
      NFElem t = NFElem::gen(s.F);
      NFElem other = conj2(t, s.F);
      for (long sgn : {1L, -1L}) {
        // sgn at the generator root, -sgn at its conjugate
        NFElem alp = NFElem(make_rat(v, 2)) + NFElem(sgn) * shat * hv;
        NFElem alm = conj2(NFElem(make_rat(v, 2)) - NFElem(sgn) * shat * hv, s.F);
        C1Opt o;
        o.alpha = nf2_to_quadval(alp + alm, s.F);
        o.F = s.F;
        o.om_f = sqrt_principal_field(t, NFElem(sgn) * shat, h, v, false, s.F) +
                 sqrt_principal_field(other, NFElem(-sgn) * shat, h, v, true, s.F) +
                 NRF(NP::constant(alp), NP{-t, NFElem(1L)}) +
                 NRF(NP::constant(alm), NP{-other, NFElem(1L)});
        opts.push_back(std::move(o));
      }
    }
    return opts;
  }
  // screened: numeric sums over the conjugates
  auto roots = complex_roots(s.m, kScreenPrec);
  std::vector<BigComplex> term;
  for (const auto& th : roots) {
    BigComplex l0v = eval_cx(l0.rep(), th);
    BigComplex hv = eval_cx(h[static_cast<size_t>(v - 1)].rep(), th);
    term.push_back(sqrt(l0v) * hv);
  }
  size_t nvec = (k == 2) ? 4 : 2;
  for (size_t mask = 0; mask < nvec; ++mask) {
    C1Opt o;
    o.screened = true;
    BigComplex acc(kScreenPrec);
    for (int i = 0; i < k; ++i) {
      long sgn = (k == 2 ? ((mask >> i) & 1) : (mask & 1)) ? -1 : 1;
      acc = acc + BigComplex(make_rat(v, 2), kScreenPrec) + flip(term[static_cast<size_t>(i)], sgn);
    }
    o.anum = acc;
    opts.push_back(std::move(o));
  }
  return opts;
}

struct C1Inf {
  QuadVal alpha;
  RF om_rat;
  Rat Rcls = 0;
  RF om_irr;
};

std::optional<std::vector<C1Inf>> case1_inf_options(const InfData& inf) {
  std::vector<C1Inf> opts;
  if (inf.o > 2) {  // any parity is fine above 2
    C1Inf o0;
    o0.alpha = QuadVal(Rat(0));
    C1Inf o1;
    o1.alpha = QuadVal(Rat(1));
    opts.push_back(std::move(o0));
    opts.push_back(std::move(o1));
    return opts;
  }
  if (inf.o == 2) {
    Rat D = 1 + 4 * inf.ser[0];
    if (auto delta = rat_sqrt(D)) {
      for (Rat sgn : {Rat(1), Rat(-1)}) {
        C1Inf o;
        o.alpha = QuadVal((1 + sgn * *delta) / 2);
        opts.push_back(std::move(o));
        if (*delta == 0) break;
      }
    } else {
      for (Rat sgn : {Rat(1), Rat(-1)}) {
        C1Inf o;
        o.alpha = QuadVal(Rat(1, 2), sgn / 2, D);
        opts.push_back(std::move(o));
      }
    }
    return opts;
  }
  if (inf.o % 2 != 0) return std::nullopt;  // odd order <= 1: case 1 impossible
  int v = -inf.o / 2;
  std::vector<NFElem> lau;
  for (const auto& q : inf.ser) lau.push_back(NFElem(q));
  auto h = sqrt_ratio_series(lau, v + 1);
  Rat S0 = inf.ser[0];
  Rat hv1 = h[static_cast<size_t>(v + 1)].is_zero() ? Rat(0) : h[static_cast<size_t>(v + 1)].rat_value();
  Poly<Rat> T;
  for (int i = 0; i <= v; ++i) {
    Rat hc = h[static_cast<size_t>(v - i)].is_zero() ? Rat(0) : h[static_cast<size_t>(v - i)].rat_value();
    T += Poly<Rat>::monomial(hc, i);
  }
  if (auto shat = rat_sqrt(S0)) {
    for (Rat sgn : {Rat(1), Rat(-1)}) {
      C1Inf o;
      o.alpha = QuadVal(make_rat(-v, 2) + sgn * *shat * hv1);
      o.om_rat = RF(T * (sgn * *shat));
      opts.push_back(std::move(o));
    }
  } else {
    for (Rat sgn : {Rat(1), Rat(-1)}) {
      C1Inf o;
      o.alpha = QuadVal(make_rat(-v, 2), sgn * hv1, S0);
      o.Rcls = S0;
      o.om_irr = RF(T * sgn);
      opts.push_back(std::move(o));
    }
  }
  return opts;
}

bool screen_prune(const BigComplex& dnum) {
  // true: provably not a non-negative integer at this precision margin
  BigFloat eps = ldexp2(BigFloat(1L, kScreenPrec), kScreenMargin);
  if (abs(dnum.im) > eps) return true;
  Rat nearest = dyadic_of(dnum.re, 0);
  if (nearest < 0) return true;
  return abs(dnum.re - BigFloat(nearest, kScreenPrec)) > eps;
}

std::optional<KovacicResult> case1_search(const RatFunc<Rat>& r, const std::vector<PoleData>& sites,
                                          const InfData& inf) {
  auto infopts = case1_inf_options(inf);
  if (!infopts) return std::nullopt;
  std::vector<std::vector<C1Opt>> siteopts;
  for (const auto& s : sites) {
    auto so = case1_site_options(s);
    if (!so) return std::nullopt;
    siteopts.push_back(std::move(*so));
  }
  std::vector<size_t> sizes;
  for (const auto& so : siteopts) sizes.push_back(so.size());
  option_product(sizes);

  bool unresolved = false;
  for (const auto& io : *infopts) {
    Odometer od(sizes);
    if (od.empty()) continue;
    do {
      std::vector<const C1Opt*> pick;
      bool screened = false;
      for (size_t i = 0; i < siteopts.size(); ++i) {
        pick.push_back(&siteopts[i][od.idx[i]]);
        screened = screened || pick.back()->screened;
      }
      if (screened) {
        BigComplex dnum = quadval_approx(io.alpha, kScreenPrec);
        for (const C1Opt* o : pick)
          dnum = dnum - (o->screened ? o->anum : quadval_approx(o->alpha, kScreenPrec));
        if (!screen_prune(dnum)) unresolved = true;
        continue;
      }
      SurdSum dsum;
      dsum.add(io.alpha);
      for (const C1Opt* o : pick) dsum.sub(o->alpha);
      if (!dsum.is_rational()) continue;
      Rat d = dsum.q;
      if (!is_integer(d) || d < 0) continue;
      if (d > kDegreeCap) throw error("kovacic: degree bound exceeds the search cap");

      OmegaAcc acc;
      acc.add_rat(io.om_rat);
      acc.add_surd(io.Rcls, io.om_irr);
      for (const C1Opt* o : pick) {
        acc.add_rat(o->om_rat);
        acc.add_surd(o->Rcls, o->om_irr);
        if (o->F) acc.add_field(o->F, o->om_f);
      }
      auto [omega, W] = finalize_omega(std::move(acc));
      NRF rl = lift_rf(r, W);
      std::vector<NRF> A = {omega.derivative() + omega * omega - rl, omega * NFElem(2L),
                            NRF(NFElem(1L))};
      auto P = solve_p(A, to_long(d));
      if (!P) continue;
      NRF u = omega + NRF(P->derivative(), *P);
      KovacicResult res;
      res.tag = KovacicCase::Case1;
      res.min_poly = {-u, NRF(NFElem(1L))};
      res.field = W;
      if (!verify_witness(r, res)) continue;
      return res;
    } while (od.next());
  }
  if (unresolved)
    throw error(
        "kovacic: a case-1 candidate survived numeric screening without exact surd data; "
        "refusing to classify");
  return std::nullopt;
}

// ---- cases 2 and 3 ----------------------------------------------------------------

struct EOpt {
  long esum = 0;  // sum of the integers e over the family's conjugate poles
  RF th_rat;      // sum e_i/(x - a_i) (rational part)
  FieldPtr F;     // degree-2 mixed choice, exact over the family field
  NRF th_f;
};

// integer exponent-set members at an order-2 pole with parameter b:
// base + step*k*sqrt(1+4b) for the k-range of the case
std::set<long> e_members(const Rat& b, long base, const Rat& step, long krange) {
  std::set<long> out{base};
  Rat D = 1 + 4 * b;
  auto delta = rat_sqrt(D);
  if (!delta) return out;
  for (long k = -krange; k <= krange; ++k) {
    Rat v = Rat(base) + step * Rat(k) * *delta;
    if (is_integer(v)) out.insert(to_long(v));
  }
  return out;
}

// options for one site given its integer e-set; degree-2 families also get the
// exact mixed choices
std::vector<EOpt> family_e_options(const PoleData& s, const std::set<long>& eset) {
  std::vector<EOpt> opts;
  int k = s.family_size();
  RF logm(s.m.derivative(), s.m);
  for (long e : eset) {
    EOpt o;
    o.esum = e * k;
    o.th_rat = logm * Rat(e);
    opts.push_back(std::move(o));
  }
  if (k == 2 && eset.size() > 1) {
    NFElem t = NFElem::gen(s.F);
    NFElem other = conj2(t, s.F);
    for (auto i1 = eset.begin(); i1 != eset.end(); ++i1)
      for (auto i2 = std::next(i1); i2 != eset.end(); ++i2) {
        // swapped pair is the Galois conjugate candidate; one of the two suffices
        EOpt o;
        o.esum = *i1 + *i2;
        o.F = s.F;
        o.th_f = NRF(NP::constant(NFElem(*i1)), NP{-t, NFElem(1L)}) +
                 NRF(NP::constant(NFElem(*i2)), NP{-other, NFElem(1L)});
        opts.push_back(std::move(o));
      }
  }
  return opts;
}

Rat order2_b(const PoleData& s, bool* rational) {
  const NFElem& b = s.laurent[0];
  if (b.is_rational()) {
    *rational = true;
    return b.rat_value();
  }
  *rational = false;
  return Rat(0);
}

// assemble theta = scale * sum e_c/(x - c) over the option picks
std::pair<NRF, FieldPtr> assemble_theta(const std::vector<const EOpt*>& pick, const Rat& scale) {
  RF rat;
  FieldPtr F;
  NRF fpart;
  for (const EOpt* o : pick) {
    rat += o->th_rat;
    if (o->F) {
      if (F && F != o->F)
        throw error("kovacic: candidate needs a compositum of number fields; refusing to classify");
      F = o->F;
      fpart += o->th_f;
    }
  }
  NRF th = lift_rf(rat, F) + fpart;
  return {th * NFElem(scale), F};
}

std::optional<KovacicResult> case2_search(const RatFunc<Rat>& r, const std::vector<PoleData>& sites,
                                          const InfData& inf) {
  bool necessary = false;
  for (const auto& s : sites)
    if (s.order == 2 || (s.order > 2 && s.order % 2 == 1)) necessary = true;
  if (!necessary) return std::nullopt;

  std::vector<std::vector<EOpt>> siteopts;
  for (const auto& s : sites) {
    std::set<long> eset;
    if (s.order == 1) {
      eset = {4};
    } else if (s.order == 2) {
      bool brat = false;
      Rat b = order2_b(s, &brat);
      eset = brat ? e_members(b, 2, Rat(2), 1) : std::set<long>{2};
    } else {
      eset = {s.order};
    }
    siteopts.push_back(family_e_options(s, eset));
  }
  std::set<long> einf;
  if (inf.o > 2)
    einf = {0, 2, 4};
  else if (inf.o == 2)
    einf = e_members(inf.ser[0], 2, Rat(2), 1);
  else
    einf = {inf.o};

  std::vector<size_t> sizes;
  for (const auto& so : siteopts) sizes.push_back(so.size());
  option_product(sizes);

  for (long ei : einf) {
    Odometer od(sizes);
    if (od.empty() && !sites.empty()) continue;
    do {
      std::vector<const EOpt*> pick;
      long esum = 0;
      for (size_t i = 0; i < siteopts.size(); ++i) {
        pick.push_back(&siteopts[i][od.idx[i]]);
        esum += pick.back()->esum;
      }
      long d2 = ei - esum;
      if (d2 < 0 || d2 % 2 != 0) continue;
      long d = d2 / 2;
      if (d > kDegreeCap) throw error("kovacic: degree bound exceeds the search cap");

      auto [theta, W] = assemble_theta(pick, Rat(1, 2));
      NRF rl = lift_rf(r, W);
      NRF th1 = theta.derivative();
      std::vector<NRF> A = {th1.derivative() + theta * th1 * NFElem(3L) + theta * theta * theta -
                                rl * theta * NFElem(4L) - rl.derivative() * NFElem(2L),
                            theta * theta * NFElem(3L) + th1 * NFElem(3L) - rl * NFElem(4L),
                            theta * NFElem(3L), NRF(NFElem(1L))};
      auto P = solve_p(A, d);
      if (!P) continue;
      NRF phi = theta + NRF(P->derivative(), *P);
      NRF psi = phi.derivative() * NFElem(Rat(1, 2)) + phi * phi * NFElem(Rat(1, 2)) - rl;
      KovacicResult res;
      res.tag = KovacicCase::Case2;
      res.min_poly = {psi, -phi, NRF(NFElem(1L))};
      res.field = W;
      if (!verify_witness(r, res)) continue;
      return res;
    } while (od.next());
  }
  return std::nullopt;
}

std::optional<KovacicResult> case3_search(const RatFunc<Rat>& r, const std::vector<PoleData>& sites,
                                          const InfData& inf) {
  for (const auto& s : sites)
    if (s.order > 2) return std::nullopt;
  if (inf.o < 2) return std::nullopt;

  Poly<Rat> S = Poly<Rat>::constant(Rat(1));
  for (const auto& s : sites) S = S * s.m;

  for (long n : {4L, 6L, 12L}) {
    std::vector<std::vector<EOpt>> siteopts;
    for (const auto& s : sites) {
      std::set<long> eset;
      if (s.order == 1) {
        eset = {12};
      } else {
        bool brat = false;
        Rat b = order2_b(s, &brat);
        eset = brat ? e_members(b, 6, make_rat(12, n), n / 2) : std::set<long>{6};
      }
      siteopts.push_back(family_e_options(s, eset));
    }
    Rat binf = inf.o == 2 ? inf.ser[0] : Rat(0);
    std::set<long> einf = e_members(binf, 6, make_rat(12, n), n / 2);

    std::vector<size_t> sizes;
    for (const auto& so : siteopts) sizes.push_back(so.size());
    option_product(sizes);

    for (long ei : einf) {
      Odometer od(sizes);
      if (od.empty() && !sites.empty()) continue;
      do {
        std::vector<const EOpt*> pick;
        long esum = 0;
        for (size_t i = 0; i < siteopts.size(); ++i) {
          pick.push_back(&siteopts[i][od.idx[i]]);
          esum += pick.back()->esum;
        }
        long dn = n * (ei - esum);
        if (dn < 0 || dn % 12 != 0) continue;
        long d = dn / 12;
        if (d > kDegreeCap)
          throw error("kovacic: inconclusive-case3 (degree bound exceeds the search cap)");

        auto [theta, W] = assemble_theta(pick, make_rat(n, 12));
        NP Sl = lift_poly(S, W);
        NRF Sth = NRF(Sl) * theta;
        if (Sth.den.degree() != 0) throw error("kovacic: internal theta denominator");
        NP Sth_p = Sth.num / Sth.den.coeff(0);
        NRF SSr = NRF(Sl * Sl) * lift_rf(r, W);
        if (SSr.den.degree() != 0) throw error("kovacic: internal radical denominator");
        NP SSr_p = SSr.num / SSr.den.coeff(0);
        NP Sd = Sl.derivative();

        // P_{-1} from the downward recursion, linear in the coefficients of P
        auto chain_for = [&](const NP& Pcand) {
          std::vector<NP> chain(static_cast<size_t>(n) + 1);
          chain[static_cast<size_t>(n)] = -Pcand;
          NP pminus1;
          for (long i = n; i >= 0; --i) {
            const NP& Pi = chain[static_cast<size_t>(i)];
            NP next = (i == n) ? NP() : chain[static_cast<size_t>(i + 1)];
            NP out = -(Sl * Pi.derivative()) + (Sd * NFElem(n - i) - Sth_p) * Pi -
                     SSr_p * next * NFElem((n - i) * (i + 1));
            if (i == 0)
              pminus1 = out;
            else
              chain[static_cast<size_t>(i - 1)] = out;
          }
          return std::make_pair(chain, pminus1);
        };

        // one column of the linear system per basis monomial of P
        size_t nrows = 0;
        std::vector<std::vector<NFElem>> colv;
        for (long j = 0; j <= d; ++j) {
          auto [chain, pm1] = chain_for(NP::monomial(NFElem(1L), static_cast<int>(j)));
          (void)chain;
          std::vector<NFElem> col(static_cast<size_t>(pm1.degree()) + 1);
          for (int i = 0; i <= pm1.degree(); ++i) col[static_cast<size_t>(i)] = pm1.coeff(i);
          nrows = std::max(nrows, col.size());
          colv.push_back(std::move(col));
        }
        for (auto& c : colv) c.resize(nrows, NFElem(0L));
        std::vector<NFElem> rhs = colv.back();
        for (auto& e : rhs) e = -e;
        colv.pop_back();
        auto sol = solve_linear(colv, rhs);
        if (!sol) continue;
        std::vector<NFElem> pc = *sol;
        pc.push_back(NFElem(1L));
        NP P(std::move(pc));

        auto [chain, pm1] = chain_for(P);
        if (!pm1.is_zero()) continue;
        // witness: sum_i S^i P_i / (n-i)! u^i = 0, monic in u after dividing by
        // the top coefficient -S^n P
        NP top = Sl.pow(static_cast<int>(n)) * P;
        std::vector<NRF> mp;
        Rat fact(1);
        std::vector<Rat> facts(static_cast<size_t>(n) + 1);
        for (long i = 0; i <= n; ++i) {
          facts[static_cast<size_t>(i)] = fact;  // i!
          fact *= Rat(i + 1);
        }
        for (long i = 0; i <= n; ++i) {
          NP numi = Sl.pow(static_cast<int>(i)) * chain[static_cast<size_t>(i)];
          mp.push_back(NRF(numi, -top * NFElem(facts[static_cast<size_t>(n - i)])));
        }
        KovacicResult res;
        res.tag = KovacicCase::Case3;
        res.min_poly = std::move(mp);
        res.field = W;
        if (!verify_witness(r, res)) continue;
        return res;
      } while (od.next());
    }
  }
  return std::nullopt;
}

bool case1_possible(const std::vector<PoleData>& sites, const InfData& inf) {
  for (const auto& s : sites)
    if (s.order != 1 && s.order % 2 != 0) return false;
  return inf.o > 2 || inf.o % 2 == 0;
}

}  // namespace

// --- public interface ---------------------------------------------------------------

std::vector<PoleData> pole_data(const RatFunc<Rat>& r, int extra) {
  std::vector<PoleData> sites;
  if (r.is_zero()) return sites;
  auto fac = factor_squarefree(r.den);
  std::vector<std::pair<Poly<Rat>, int>> parts;
  for (const auto& [f, mult] : fac.factors) parts.emplace_back(f, mult);
  std::sort(parts.begin(), parts.end(), [](const auto& a, const auto& b) {
    if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
    for (int i = a.first.degree(); i >= 0; --i)
      if (a.first.coeff(i) != b.first.coeff(i)) return a.first.coeff(i) < b.first.coeff(i);
    return false;
  });
  for (auto& [m, mult] : parts) {
    PoleData s;
    s.m = m;
    s.order = mult;
    if (m.degree() >= 2) {
      s.F = family_field(m);
      s.point = NFElem::gen(s.F);
    } else {
      s.point = NFElem(-m.coeff(0));
    }
    s.laurent = laurent_at(r, m, mult, s.point, mult + std::max(extra, 0));
    fill_sqrt_data(s);
    sites.push_back(std::move(s));
  }
  return sites;
}

KovacicResult classify(const RatFunc<Rat>& r) {
  if (r.den.is_zero()) throw error("kovacic: invalid rational function");
  KovacicResult res;
  if (r.is_zero()) {
    res.tag = KovacicCase::Case1;
    res.min_poly = {NRF(NFElem(0L)), NRF(NFElem(1L))};
    return res;
  }
  auto sites = pole_data(r);
  InfData inf = inf_data(r);
  if (case1_possible(sites, inf))
    if (auto w = case1_search(r, sites, inf)) return *w;
  if (auto w = case2_search(r, sites, inf)) return *w;
  if (auto w = case3_search(r, sites, inf)) return *w;
  return res;  // Case 4
}

GaloisLabel galois_label(const KovacicResult& res) {
  switch (res.tag) {
    case KovacicCase::Case1:
      return GaloisLabel::Triangular;
    case KovacicCase::Case2:
      return GaloisLabel::Dihedral;
    case KovacicCase::Case3:
      return GaloisLabel::Finite;
    default:
      return GaloisLabel::SL2;
  }
}

GaloisLabel classify_sym_square(const RatFunc<Rat>& r) {
  KovacicResult res = classify(r);
  if (res.tag == KovacicCase::Case4) return GaloisLabel::PSL2;
  return galois_label(res);
}

bool verify_witness(const RatFunc<Rat>& r, const KovacicResult& w) {
  if (w.min_poly.size() < 2) return false;
  int n = w.witness_degree();
  if (!(w.min_poly.back() == NRF(NFElem(1L)))) return false;
  const FieldPtr& F = w.field;
  NRF rl = NRF(lift_poly(r.num, F), lift_poly(r.den, F));
  std::vector<NRF> V(static_cast<size_t>(n) + 2);
  for (int i = 0; i <= n; ++i) V[static_cast<size_t>(i)] += w.min_poly[static_cast<size_t>(i)].derivative();
  for (int i = 1; i <= n; ++i) {
    NRF ci = w.min_poly[static_cast<size_t>(i)] * NFElem(static_cast<long>(i));
    V[static_cast<size_t>(i - 1)] += ci * rl;
    V[static_cast<size_t>(i + 1)] -= ci;
  }
  for (int dpos = n + 1; dpos >= n; --dpos) {
    NRF lead = V[static_cast<size_t>(dpos)];
    if (lead.is_zero()) continue;
    for (int i = 0; i <= n; ++i) V[static_cast<size_t>(dpos - n + i)] -= lead * w.min_poly[static_cast<size_t>(i)];
  }
  for (const auto& c : V)
    if (!c.is_zero()) return false;
  return true;
}

RatFunc<NFElem> KovacicResult::riccati() const {
  if (tag != KovacicCase::Case1 || min_poly.size() != 2)
    throw error("KovacicResult: no rational Riccati witness");
  return -min_poly[0];
}

std::string to_string(KovacicCase c) {
  switch (c) {
    case KovacicCase::Case1:
      return "case 1";
    case KovacicCase::Case2:
      return "case 2";
    case KovacicCase::Case3:
      return "case 3";
    default:
      return "case 4";
  }
}

std::string to_string(GaloisLabel g) {
  switch (g) {
    case GaloisLabel::Triangular:
      return "triangular";
    case GaloisLabel::Dihedral:
      return "dihedral";
    case GaloisLabel::Finite:
      return "finite";
    case GaloisLabel::SL2:
      return "SL2";
    default:
      return "PSL2";
  }
}

std::string KovacicResult::to_string() const {
  std::ostringstream os;
  os << fuchs::to_string(tag);
  if (has_witness()) os << ", witness degree " << witness_degree();
  return os.str();
}

}  // namespace fuchs
