#include "fuchs/frobenius.hpp"

#include <algorithm>
#include <map>
#include "fuchs/factor.hpp"
#include <optional>
#include <utility>

#include "fuchs/evalcx.hpp"
#include "fuchs/roots.hpp"

namespace fuchs {
namespace {

// ---------------------------------------------------------------------------
// scalar adapters shared by the exact (number field) and numeric recurrences
// ---------------------------------------------------------------------------

template <class T>
struct Ops;

template <>
struct Ops<NFElem> {
  static NFElem from_rat(const Rat& q, mpfr_prec_t) { return NFElem(q); }
  static bool is_zero(const NFElem& v) { return v.is_zero(); }
  static NFElem inv(const NFElem& v) { return v.inverse(); }
  static BigFloat mag(const NFElem& v, mpfr_prec_t prec) {
    return abs(v.to_complex(prec));
  }
};

template <>
struct Ops<BigComplex> {
  static BigComplex from_rat(const Rat& q, mpfr_prec_t prec) {
    return BigComplex(q, prec);
  }
  static bool is_zero(const BigComplex& v) { return v.is_zero(); }
  static BigComplex inv(const BigComplex& v) { return inverse(v); }
  static BigFloat mag(const BigComplex& v, mpfr_prec_t) { return abs(v); }
};

// ---------------------------------------------------------------------------
// truncated jets in the exponent parameter: fixed-length coefficient vectors
// ---------------------------------------------------------------------------

// P(t + eps) mod eps^K for P given by ascending coefficients, via repeated
// synthetic division by (lambda - t)
template <class T>
std::vector<T> jet_of_poly(const std::vector<T>& a, const T& t, int K,
                           const T& zero) {
  std::vector<T> out(static_cast<size_t>(K), zero);
  std::vector<T> work = a;
  for (int k = 0; k < K && !work.empty(); ++k) {
    int m = static_cast<int>(work.size()) - 1;
    if (m == 0) {
      out[k] = work[0];
      break;
    }
    std::vector<T> q(static_cast<size_t>(m), zero);
    q[m - 1] = work[m];
    for (int i = m - 1; i >= 1; --i) q[i - 1] = work[i] + t * q[i];
    out[k] = work[0] + t * q[0];
    work = std::move(q);
  }
  return out;
}

// acc -= a * b, truncated to acc's length
template <class T>
void jet_submul(std::vector<T>& acc, const std::vector<T>& a,
                const std::vector<T>& b) {
  int K = static_cast<int>(acc.size());
  for (int i = 0; i < K; ++i) {
    if (Ops<T>::is_zero(a[i])) continue;
    for (int j = 0; i + j < K; ++j) acc[i + j] -= a[i] * b[j];
  }
}

// num / den where den has valuation v in eps (entries below v are dropped;
// they vanish identically in exact arithmetic).  The top v entries of the
// quotient are unknowable at this length and are left zero; callers never
// read them.
template <class T>
std::vector<T> jet_div(const std::vector<T>& num, const std::vector<T>& den,
                       int v, const T& zero) {
  int K = static_cast<int>(num.size());
  std::vector<T> q(static_cast<size_t>(K), zero);
  T u = Ops<T>::inv(den[v]);
  for (int k = 0; k + v < K; ++k) {
    T s = num[k + v];
    for (int j = 0; j < k; ++j) s = s - q[j] * den[k - j + v];
    q[k] = s * u;
  }
  return q;
}

// ---------------------------------------------------------------------------
// indicial roots grouped by integer difference
// ---------------------------------------------------------------------------

struct FrobRoot {
  bool rational = true;
  Rat rho;
  BigComplex rho_cx = BigComplex(64);
  int mult = 1;
  long offset = 0;  // rho - (smallest root of the class), an integer >= 0
};

struct FrobClass {
  bool exact = true;  // every root rational
  std::vector<FrobRoot> roots;  // ascending offset
};

// Exponents differing by integers must be processed together.  Roots of one
// irreducible factor never differ by a nonzero integer (the shift would
// permute the root set of a finite-degree polynomial indefinitely), so
// resonance is a relation between whole factors: g's roots sit m above f's
// exactly when g(lambda) = f(lambda - m), and the only candidate m comes
// from the root sums.  This keeps the grouping exact even for irrational
// exponents; floats enter only as the base root values.
std::vector<FrobClass> analyze_indicial(const Poly<Rat>& ind,
                                        mpfr_prec_t prec) {
  auto fac = factor_squarefree(ind);
  std::vector<FrobClass> classes;

  std::vector<std::pair<Rat, int>> lin;            // rational roots
  std::vector<const FactorPair*> high;             // irreducible, degree >= 2
  for (const auto& fp : fac.factors) {
    if (fp.factor.degree() == 1)
      lin.push_back({-fp.factor.coeff(0), fp.multiplicity});
    else
      high.push_back(&fp);
  }

  std::vector<bool> used(lin.size(), false);
  for (size_t i = 0; i < lin.size(); ++i) {
    if (used[i]) continue;
    std::vector<std::pair<Rat, int>> members{lin[i]};
    used[i] = true;
    for (size_t j = i + 1; j < lin.size(); ++j) {
      if (used[j]) continue;
      if (Rat(lin[j].first - lin[i].first).get_den() == 1) {
        members.push_back(lin[j]);
        used[j] = true;
      }
    }
    std::sort(members.begin(), members.end());
    FrobClass c;
    c.exact = true;
    const Rat& base = members[0].first;
    for (const auto& [rho, mult] : members) {
      FrobRoot r;
      r.rational = true;
      r.rho = rho;
      r.rho_cx = BigComplex(rho, prec);
      r.mult = mult;
      r.offset = mpz_get_si(Rat(rho - base).get_num().get_mpz_t());
      c.roots.push_back(std::move(r));
    }
    classes.push_back(std::move(c));
  }

  auto root_sum = [](const Poly<Rat>& f) {
    return -f.coeff(f.degree() - 1);  // monic
  };
  std::vector<bool> husd(high.size(), false);
  for (size_t i = 0; i < high.size(); ++i) {
    if (husd[i]) continue;
    husd[i] = true;
    std::vector<std::pair<const FactorPair*, long>> members{{high[i], 0}};
    const int deg = high[i]->factor.degree();
    Rat sum_i = root_sum(high[i]->factor);
    for (size_t j = i + 1; j < high.size(); ++j) {
      if (husd[j] || high[j]->factor.degree() != deg) continue;
      Rat m = (root_sum(high[j]->factor) - sum_i) / Rat(deg);
      if (m.get_den() != 1) continue;
      long mm = mpz_get_si(m.get_num().get_mpz_t());
      if (high[j]->factor == high[i]->factor.taylor_shift(Rat(-mm))) {
        members.push_back({high[j], mm});
        husd[j] = true;
      }
    }
    long mn = members[0].second;
    for (const auto& [fp, off] : members) mn = std::min(mn, off);
    const FactorPair* basef = nullptr;
    for (auto& [fp, off] : members) {
      off -= mn;
      if (off == 0) basef = fp;
    }
    std::sort(members.begin(), members.end(),
              [](const auto& a, const auto& b) { return a.second < b.second; });
    auto zs = complex_roots(basef->factor, prec);
    for (const auto& z : zs) {
      FrobClass c;
      c.exact = false;
      for (const auto& [fp, off] : members) {
        FrobRoot r;
        r.rational = false;
        r.rho_cx = z + BigComplex(off, prec);
        r.mult = fp->multiplicity;
        r.offset = off;
        c.roots.push_back(std::move(r));
      }
      classes.push_back(std::move(c));
    }
  }
  return classes;
}

// ---------------------------------------------------------------------------
// the Frobenius recurrence with exponent jets
// ---------------------------------------------------------------------------

template <class T>
struct QView {
  mpfr_prec_t prec = 64;
  T zero;
  std::vector<std::vector<T>> Q;  // Q[j]: ascending coefficients of Q_j
};

template <class T>
struct RootRun {
  T rho;
  int t_above = 0;  // total multiplicity of class roots above this one
  int mult = 1;
  std::map<long, int> vmap;  // n -> multiplicity of rho + n, n >= 1
};

// c[n] = jet of the regularized coefficient c_n(eps), c_0 = eps^t_above;
// Q_0(rho+n+eps) c_n = -sum_{j>=1} Q_j(rho+n-j+eps) c_{n-j}
template <class T>
std::vector<std::vector<T>> frobenius_jets(const QView<T>& E,
                                           const RootRun<T>& R, long nterms) {
  const int K = 2 * R.t_above + R.mult;
  const int s = static_cast<int>(E.Q.size()) - 1;
  std::vector<std::vector<T>> c(
      static_cast<size_t>(nterms),
      std::vector<T>(static_cast<size_t>(K), E.zero));
  c[0][R.t_above] = Ops<T>::from_rat(Rat(1), E.prec);
  for (long n = 1; n < nterms; ++n) {
    std::vector<T> num(static_cast<size_t>(K), E.zero);
    for (int j = 1; j <= s && j <= n; ++j) {
      if (E.Q[j].empty()) continue;
      T center = R.rho + Ops<T>::from_rat(Rat(n - j), E.prec);
      auto qj = jet_of_poly(E.Q[j], center, K, E.zero);
      jet_submul(num, qj, c[n - j]);
    }
    T center0 = R.rho + Ops<T>::from_rat(Rat(n), E.prec);
    auto q0 = jet_of_poly(E.Q[0], center0, K, E.zero);
    auto it = R.vmap.find(n);
    int v = it == R.vmap.end() ? 0 : it->second;
    c[n] = jet_div(num, q0, v, E.zero);
  }
  return c;
}

// extract the i-th derivative solution (i in [t_above, t_above+mult)),
// normalized so block a carries d!/a! * jet_{i-a}(c_n)
template <class T>
void extract_blocks(const std::vector<std::vector<T>>& c, int i, int t_above,
                    mpfr_prec_t prec, bool exact_path,
                    std::vector<std::vector<T>>& blocks_out, int& log_deg) {
  const long N = static_cast<long>(c.size());
  auto block_zero = [&](int a) {
    int idx = i - a;
    if (exact_path) {
      for (long n = 0; n < N; ++n)
        if (!Ops<T>::is_zero(c[n][idx])) return false;
      return true;
    }
    BigFloat scale(0L, prec), top(0L, prec);
    for (long n = 0; n < N; ++n) {
      for (int k = 0; k <= i; ++k)
        scale = max(scale, Ops<T>::mag(c[n][k], prec));
      top = max(top, Ops<T>::mag(c[n][idx], prec));
    }
    if (scale.is_zero()) return true;
    return top < ldexp2(scale, -(3 * static_cast<long>(prec)) / 4);
  };

  int d = i;
  while (d > i - t_above && block_zero(d)) --d;
  log_deg = d;

  long scale = 1;  // d!/a!, filled per block below
  blocks_out.assign(static_cast<size_t>(d + 1), {});
  for (int a = d; a >= 0; --a) {
    if (a < d) scale *= a + 1;  // now scale = d!/a!
    std::vector<T>& row = blocks_out[static_cast<size_t>(a)];
    row.reserve(static_cast<size_t>(N));
    T f = Ops<T>::from_rat(Rat(scale), prec);
    for (long n = 0; n < N; ++n) row.push_back(c[n][i - a] * f);
  }
}

// ---------------------------------------------------------------------------
// local data assembly
// ---------------------------------------------------------------------------

// the operator rewritten in the local coordinate, either over Q or over the
// point's number field
struct ShiftedOp {
  bool nf = false;
  DiffOp rat;            // finite rational point, or w = 1/x at infinity
  DiffOpT<NFElem> alg;   // algebraic point
  std::vector<Poly<Rat>> q_rat;
  std::vector<Poly<NFElem>> q_nf;
  int order = 0;
};

ShiftedOp shifted_view(const DiffOp& L, const AlgebraicPoint& x0) {
  ShiftedOp out;
  out.order = L.order();
  if (x0.is_infinity()) {
    out.rat = op_at_infinity(L);
    out.q_rat = delta_x_view(out.rat);
  } else if (x0.is_rational()) {
    out.rat = shift_to(L, x0.rat);
    out.q_rat = delta_x_view(out.rat);
  } else {
    out.nf = true;
    out.alg = shift_to(L, x0.alg);
    out.q_nf = delta_x_view(out.alg);
  }
  return out;
}

// monic indicial polynomial over Q; throws when the point is irregular or
// carries irrational exponent data
Poly<Rat> rational_indicial(const ShiftedOp& sh) {
  if (sh.nf) {
    const Poly<NFElem>& q0 = sh.q_nf[0];
    if (q0.degree() != sh.order)
      throw error("local_basis: irregular singular point");
    // only the monic ratio has to be rational
    NFElem lead_inv = q0.coeff(q0.degree()).inverse();
    std::vector<Rat> c;
    c.reserve(static_cast<size_t>(q0.degree()) + 1);
    for (int k = 0; k <= q0.degree(); ++k) {
      NFElem r = q0.coeff(k) * lead_inv;
      if (!r.is_rational())
        throw error(
            "local_basis: indicial polynomial has irrational exponent data at "
            "an algebraic point; only rational exponents are supported there");
      c.push_back(r.rat_value());
    }
    return Poly<Rat>(std::move(c));
  }
  if (sh.q_rat[0].degree() != sh.order)
    throw error("local_basis: irregular singular point");
  return make_monic(sh.q_rat[0]);
}

BigFloat infinite_radius(mpfr_prec_t prec) {
  BigFloat r(prec);
  mpfr_set_inf(r.raw(), 1);
  return r;
}

// distance from x0 to the nearest other singular point of L (in the local
// coordinate: for x0 = infinity, distances of 1/x-plane singularities from 0)
BigFloat trust_radius(const DiffOp& L, const ShiftedOp& sh,
                      const AlgebraicPoint& x0, mpfr_prec_t prec) {
  const bool at_inf = x0.is_infinity();
  AlgebraicPoint center = at_inf ? AlgebraicPoint::from_rat(Rat(0)) : x0;
  BigComplex c0 = center.to_complex(prec);
  std::vector<AlgebraicPoint> sing =
      at_inf ? singular_points(sh.rat) : singular_points(L);
  BigFloat best = infinite_radius(prec);
  for (const auto& s : sing) {
    if (s.is_infinity() || s == center) continue;
    best = min(best, abs(s.to_complex(prec) - c0));
  }
  return best;
}

template <class T>
QView<T> make_qview(const ShiftedOp& sh, mpfr_prec_t prec);

template <>
QView<NFElem> make_qview<NFElem>(const ShiftedOp& sh, mpfr_prec_t prec) {
  QView<NFElem> E;
  E.prec = prec;
  E.zero = NFElem();
  if (sh.nf) {
    for (const auto& q : sh.q_nf) E.Q.push_back(q.c);
  } else {
    for (const auto& q : sh.q_rat) {
      std::vector<NFElem> row;
      row.reserve(q.c.size());
      for (const auto& v : q.c) row.emplace_back(v);
      E.Q.push_back(std::move(row));
    }
  }
  return E;
}

template <>
QView<BigComplex> make_qview<BigComplex>(const ShiftedOp& sh,
                                         mpfr_prec_t prec) {
  QView<BigComplex> E;
  E.prec = prec;
  E.zero = BigComplex(prec);
  if (sh.nf) {
    for (const auto& q : sh.q_nf) {
      std::vector<BigComplex> row;
      row.reserve(q.c.size());
      for (const auto& v : q.c) row.push_back(v.to_complex(prec));
      E.Q.push_back(std::move(row));
    }
  } else {
    for (const auto& q : sh.q_rat) {
      std::vector<BigComplex> row;
      row.reserve(q.c.size());
      for (const auto& v : q.c) row.emplace_back(v, prec);
      E.Q.push_back(std::move(row));
    }
  }
  return E;
}

}  // namespace

// ---------------------------------------------------------------------------
// LocalSolution
// ---------------------------------------------------------------------------

BigComplex LocalSolution::coeff_cx(int a, long n, mpfr_prec_t prec) const {
  if (a < 0 || a > log_degree || n < 0 || n >= trunc) return BigComplex(prec);
  if (exact) return blocks[static_cast<size_t>(a)][static_cast<size_t>(n)]
                 .to_complex(prec);
  return nblocks[static_cast<size_t>(a)][static_cast<size_t>(n)];
}

std::string LocalSolution::to_string() const {
  std::string head = at_inf ? "w = 1/x at inf" : "w = x - (" + point.to_string() + ")";
  std::string out = "[" + head + "]  w^(" +
                    (exact ? fuchs::to_string(exponent)
                           : exponent_cx.to_string(8)) +
                    ")";
  long show = std::min<long>(trunc, 4);
  for (int a = 0; a <= log_degree; ++a) {
    out += a == 0 ? "  * ( " : ("  +  log(w)^" + std::to_string(a) + " * ( ");
    for (long n = 0; n < show; ++n) {
      std::string c = exact
          ? coeff_to_string(blocks[static_cast<size_t>(a)][static_cast<size_t>(n)])
          : nblocks[static_cast<size_t>(a)][static_cast<size_t>(n)].to_string(8);
      out += (n ? " + (" : "(") + c + ")w^" + std::to_string(n);
    }
    if (trunc > show) out += " + ...";
    out += " )";
  }
  return out;
}

// ---------------------------------------------------------------------------
// local_basis
// ---------------------------------------------------------------------------

LocalBasis local_basis(const DiffOp& L, const AlgebraicPoint& x0, long nterms,
                       mpfr_prec_t prec) {
  if (nterms < 1) throw error("local_basis: need at least one term");
  const int p = L.order();
  if (p < 1) throw error("local_basis: operator must have positive order");

  ShiftedOp sh = shifted_view(L, x0);
  Poly<Rat> ind = rational_indicial(sh);
  mpfr_prec_t wprec = prec + 64;
  auto classes = analyze_indicial(ind, wprec);

  LocalBasis basis;
  basis.point = x0;
  basis.at_inf = x0.is_infinity();
  basis.order = p;
  basis.trust = trust_radius(L, sh, x0, prec);

  bool need_exact = false, need_numeric = false;
  for (const auto& c : classes) (c.exact ? need_exact : need_numeric) = true;
  QView<NFElem> Enf;
  QView<BigComplex> Ecx;
  if (need_exact) Enf = make_qview<NFElem>(sh, wprec);
  if (need_numeric) Ecx = make_qview<BigComplex>(sh, wprec);

  for (const auto& cls : classes) {
    for (size_t ri = 0; ri < cls.roots.size(); ++ri) {
      const FrobRoot& r = cls.roots[ri];
      int t_above = 0;
      std::map<long, int> vmap;
      for (size_t rj = ri + 1; rj < cls.roots.size(); ++rj) {
        t_above += cls.roots[rj].mult;
        vmap[cls.roots[rj].offset - r.offset] = cls.roots[rj].mult;
      }
      for (int i = t_above; i < t_above + r.mult; ++i) {
        LocalSolution s;
        s.point = x0;
        s.at_inf = basis.at_inf;
        s.trunc = nterms;
        s.trust = basis.trust;
        s.exact = cls.exact;
        if (cls.exact) {
          RootRun<NFElem> run{NFElem(r.rho), t_above, r.mult, vmap};
          auto jets = frobenius_jets(Enf, run, nterms);
          s.exponent = r.rho;
          s.exponent_cx = BigComplex(r.rho, prec);
          extract_blocks(jets, i, t_above, wprec, true, s.blocks,
                         s.log_degree);
        } else {
          RootRun<BigComplex> run{r.rho_cx, t_above, r.mult, vmap};
          auto jets = frobenius_jets(Ecx, run, nterms);
          s.exponent_cx = r.rho_cx;
          extract_blocks(jets, i, t_above, wprec, false, s.nblocks,
                         s.log_degree);
        }
        basis.solutions.push_back(std::move(s));
      }
    }
  }

  if (static_cast<int>(basis.solutions.size()) != p)
    throw error("local_basis: exponent count mismatch");

  std::sort(basis.solutions.begin(), basis.solutions.end(),
            [](const LocalSolution& a, const LocalSolution& b) {
              if (a.exponent_cx.re != b.exponent_cx.re)
                return a.exponent_cx.re < b.exponent_cx.re;
              if (a.exponent_cx.im != b.exponent_cx.im)
                return a.exponent_cx.im < b.exponent_cx.im;
              return a.log_degree < b.log_degree;
            });
  return basis;
}

// ---------------------------------------------------------------------------
// evaluation
// ---------------------------------------------------------------------------

namespace {

// values of s, s', ..., s^{(nder-1)}; optional per-derivative tail estimates
std::vector<BigComplex> eval_core(const LocalSolution& s, const BigComplex& w,
                                  long winding, int nder,
                                  std::vector<BigFloat>* tails) {
  if (s.at_inf)
    throw error("evaluate_local: local data at infinity is structural only");
  if (nder < 1) nder = 1;
  const mpfr_prec_t prec = w.precision();
  const int d = s.log_degree;
  const long N = s.trunc;

  if (w.is_zero()) {
    if (nder > 1)
      throw error("evaluate_local: derivatives at the expansion center");
    bool zero_limit;
    if (s.exact) {
      if (s.exponent > Rat(0))
        zero_limit = true;
      else if (s.exponent == Rat(0) && d == 0)
        zero_limit = false;
      else
        throw error("evaluate_local: divergent at the expansion center");
    } else {
      if (!s.exponent_cx.re.is_zero() && !(s.exponent_cx.re < BigFloat(0L, prec)))
        zero_limit = true;
      else
        throw error("evaluate_local: divergent at the expansion center");
    }
    if (tails) tails->assign(1, BigFloat(0L, prec));
    return {zero_limit ? BigComplex(prec) : s.coeff_cx(0, 0, prec)};
  }

  BigFloat aw = abs(w);
  if (!(aw < (s.trust * 3L) / 4L))
    throw error("evaluate_local: point outside the trusted disc");

  std::vector<std::vector<BigComplex>> B(
      static_cast<size_t>(d + 1),
      std::vector<BigComplex>(static_cast<size_t>(N), BigComplex(prec)));
  for (int a = 0; a <= d; ++a)
    for (long n = 0; n < N; ++n) B[a][n] = s.coeff_cx(a, n, prec);

  BigComplex lg = log_branch(w, winding);
  BigComplex e = s.exact ? BigComplex(s.exponent, prec) : s.exponent_cx;
  BigComplex wcur = s.exact ? pow_rat(w, s.exponent, winding)
                            : pow_cx(w, s.exponent_cx, winding);

  // geometric tail estimate from the last kept coefficient
  BigFloat q = aw / s.trust;
  BigFloat tlast(0L, prec);
  for (int a = 0; a <= d; ++a) tlast = max(tlast, abs(B[a][N - 1]));
  tlast = tlast * pow_si(aw, N - 1);
  BigFloat logf(1L, prec), lmag = abs(lg), lpow(1L, prec);
  for (int a = 1; a <= d; ++a) {
    lpow = lpow * lmag;
    logf = logf + lpow;
  }
  BigFloat tail0 = tlast * q / (BigFloat(1L, prec) - q) * logf * abs(wcur);
  BigFloat dscale =
      (BigFloat(N + d + 1, prec) + abs(e)) / aw;  // per-derivative growth

  std::vector<BigComplex> out;
  for (int der = 0;; ++der) {
    BigComplex acc(prec), lp(1L, prec);
    for (int a = 0; a <= d; ++a) {
      if (a) lp = lp * lg;
      BigComplex h(prec);
      for (long n = N; n-- > 0;) h = h * w + B[a][n];
      acc = acc + h * lp;
    }
    out.push_back(wcur * acc);
    if (tails) tails->push_back(tail0 * pow_si(dscale, der));
    if (der + 1 >= nder) break;
    // d/dw on the block data: exponent drops by one
    std::vector<std::vector<BigComplex>> Bn(
        static_cast<size_t>(d + 1),
        std::vector<BigComplex>(static_cast<size_t>(N), BigComplex(prec)));
    for (int a = 0; a <= d; ++a)
      for (long n = 0; n < N; ++n) {
        BigComplex t = (e + BigComplex(n, prec)) * B[a][n];
        if (a + 1 <= d)
          t = t + BigComplex(static_cast<long>(a + 1), prec) * B[a + 1][n];
        Bn[a][n] = t;
      }
    B = std::move(Bn);
    e = e - BigComplex(1L, prec);
    wcur = wcur / w;
  }
  return out;
}

}  // namespace

LocalValue evaluate_local(const LocalSolution& s, const BigComplex& w,
                          long winding) {
  std::vector<BigFloat> tails;
  auto v = eval_core(s, w, winding, 1, &tails);
  return {v[0], tails[0]};
}

LocalValue derivative_local(const LocalSolution& s, const BigComplex& w,
                            long winding) {
  std::vector<BigFloat> tails;
  auto v = eval_core(s, w, winding, 2, &tails);
  return {v[1], tails[1]};
}

std::vector<BigComplex> evaluate_jet(const LocalSolution& s,
                                     const BigComplex& w, long winding,
                                     int nder) {
  return eval_core(s, w, winding, nder, nullptr);
}

// ---------------------------------------------------------------------------
// distinguished solutions
// ---------------------------------------------------------------------------

LocalSolution distinguished_solution(const LocalBasis& basis,
                                     const Constraints& want) {
  std::vector<const LocalSolution*> hits;
  for (const auto& s : basis.solutions) {
    if (want.log_free && s.log_degree != 0) continue;
    if (want.exponent) {
      if (s.exact) {
        if (s.exponent != *want.exponent) continue;
      } else {
        mpfr_prec_t prec = s.exponent_cx.precision();
        BigComplex diff = s.exponent_cx - BigComplex(*want.exponent, prec);
        if (!(abs(diff) <
              ldexp2(BigFloat(1L, prec), -static_cast<long>(prec) / 3)))
          continue;
      }
    }
    hits.push_back(&s);
  }
  if (hits.empty())
    throw error("distinguished_solution: no solution matches the constraints");
  if (hits.size() > 1)
    throw error("distinguished_solution: constraints are ambiguous");

  LocalSolution out = *hits[0];
  if (want.leading) {
    if (out.exact) {
      NFElem c0 = out.blocks[0][0];
      if (c0.is_zero())
        throw error("distinguished_solution: leading coefficient is zero");
      NFElem f = NFElem(*want.leading) / c0;
      for (auto& row : out.blocks)
        for (auto& v : row) v *= f;
    } else {
      BigComplex c0 = out.nblocks[0][0];
      if (c0.is_zero())
        throw error("distinguished_solution: leading coefficient is zero");
      BigComplex f =
          BigComplex(*want.leading, out.exponent_cx.precision()) / c0;
      for (auto& row : out.nblocks)
        for (auto& v : row) v = v * f;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// residual check
// ---------------------------------------------------------------------------

namespace {

template <class T>
BigFloat residual_impl(const QView<T>& E, const T& rho,
                       const std::vector<std::vector<T>>& S, long N,
                       bool exact_path, mpfr_prec_t prec) {
  const int d = static_cast<int>(S.size()) - 1;
  const int s = static_cast<int>(E.Q.size()) - 1;
  auto zero_table = [&](long len) {
    return std::vector<std::vector<T>>(
        static_cast<size_t>(d + 1),
        std::vector<T>(static_cast<size_t>(len), E.zero));
  };
  // delta(w^(rho+n) log^a) = (rho+n) w^(rho+n) log^a + a w^(rho+n) log^(a-1)
  auto delta_apply = [&](const std::vector<std::vector<T>>& tab) {
    auto r = zero_table(N);
    for (int a = 0; a <= d; ++a)
      for (long n = 0; n < N; ++n) {
        T v = (rho + Ops<T>::from_rat(Rat(n), E.prec)) * tab[a][n];
        if (a + 1 <= d)
          v = v + Ops<T>::from_rat(Rat(a + 1), E.prec) * tab[a + 1][n];
        r[a][n] = v;
      }
    return r;
  };

  auto R = zero_table(N + s);
  for (int j = 0; j <= s; ++j) {
    if (E.Q[j].empty()) continue;
    auto cur = zero_table(N);
    for (size_t k = E.Q[j].size(); k-- > 0;) {
      cur = delta_apply(cur);
      if (Ops<T>::is_zero(E.Q[j][k])) continue;
      for (int a = 0; a <= d; ++a)
        for (long n = 0; n < N; ++n) cur[a][n] += E.Q[j][k] * S[a][n];
    }
    for (int a = 0; a <= d; ++a)
      for (long n = 0; n < N; ++n) R[a][n + j] += cur[a][n];
  }

  bool exact_zero = true;
  BigFloat worst(0L, prec);
  for (int a = 0; a <= d; ++a)
    for (long m = 0; m < N; ++m)
      if (!Ops<T>::is_zero(R[a][m])) {
        exact_zero = false;
        worst = max(worst, Ops<T>::mag(R[a][m], prec));
      }
  if (exact_path && exact_zero) return BigFloat(0L, prec);
  return worst;
}

}  // namespace

BigFloat local_residual(const DiffOp& L, const LocalSolution& s,
                        mpfr_prec_t prec) {
  ShiftedOp sh = shifted_view(L, s.point);
  if (s.exact) {
    QView<NFElem> E = make_qview<NFElem>(sh, prec);
    return residual_impl(E, NFElem(s.exponent), s.blocks, s.trunc, true, prec);
  }
  QView<BigComplex> E = make_qview<BigComplex>(sh, prec);
  return residual_impl(E, s.exponent_cx, s.nblocks, s.trunc, false, prec);
}

}  // namespace fuchs
