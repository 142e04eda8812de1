#include "fuchs/continuation.hpp"

#include <cstddef>
#include <sstream>
#include <utility>

namespace fuchs {

namespace {

BigComplex lift(const BigComplex& z, mpfr_prec_t prec) {
  return z + BigComplex(prec);
}

// p(z + w) as a coefficient array in w (synthetic Taylor shift)
std::vector<BigComplex> shifted_coeffs(const Poly<Rat>& p, const BigComplex& z,
                                       mpfr_prec_t prec) {
  int d = p.degree();
  std::vector<BigComplex> a;
  if (d < 0) return a;
  a.reserve(static_cast<size_t>(d) + 1);
  for (int k = 0; k <= d; ++k) a.emplace_back(p.coeff(k), prec);
  for (int j = 0; j < d; ++j)
    for (int k = d - 1; k >= j; --k) a[static_cast<size_t>(k)] += z * a[static_cast<size_t>(k) + 1];
  return a;
}

// C(s, d) exactly in machine integers (d is the operator order at most)
long binom_l(long s, long d) {
  long b = 1;
  for (long t = 1; t <= d; ++t) b = b * (s - d + t) / t;
  return b;
}

// One truncated Taylor step of size h for every frame column at once.
// P holds the coefficient arrays of the operator recentered at the step
// base; |h| / q is the distance to the nearest singularity.  Fails (false)
// when the tail of the series is still visible at the working precision.
bool taylor_step(const std::vector<std::vector<BigComplex>>& P, int n,
                 const CMat& frame, const BigComplex& h, long N,
                 mpfr_prec_t prec, CMat* out) {
  const BigComplex& lead = P[static_cast<size_t>(n)][0];
  BigFloat ah = abs(h);
  CMat next(n, n, prec);
  for (int col = 0; col < n; ++col) {
    std::vector<BigComplex> c(static_cast<size_t>(N), BigComplex(prec));
    BigFloat scale(0L, prec);
    for (int j = 0; j < n; ++j) {
      c[static_cast<size_t>(j)] = frame[j][col];
      scale = max(scale, abs(frame[j][col]));
    }
    // coefficient of w^m in L(sum c_s w^s) = 0 solved for c_{m+n}:
    // sum_{i,k} P[i][k] * fall(m-k+i, i) * c_{m-k+i} with the (n,0) term
    // isolated on the left
    for (long m = 0; m + n < N; ++m) {
      BigComplex acc(prec);
      for (int i = 0; i <= n; ++i) {
        const auto& Pi = P[static_cast<size_t>(i)];
        for (long k = 0; k < static_cast<long>(Pi.size()); ++k) {
          if (i == n && k == 0) continue;
          long s = m - k + i;
          if (s < 0) continue;
          long f = 1;
          for (int t = 0; t < i; ++t) f *= s - t;
          if (!f) continue;
          acc += Pi[static_cast<size_t>(k)] *
                 (c[static_cast<size_t>(s)] * BigFloat(f, prec));
        }
      }
      long fl = 1;
      for (int t = 0; t < n; ++t) fl *= m + n - t;
      c[static_cast<size_t>(m + n)] = acc / (lead * BigFloat(-fl, prec));
    }
    if (!scale.is_zero()) {
      BigFloat tail(0L, prec);
      BigFloat hp = pow_si(ah, N - 4);
      for (long s = N - 4; s < N; ++s) {
        tail = max(tail, abs(c[static_cast<size_t>(s)]) * hp);
        hp *= ah;
      }
      // geometric continuation margin (|h| at most half the disc radius)
      if (tail * 2L > ldexp2(scale, 8 - static_cast<long>(prec))) return false;
    }
    for (int d = 0; d < n; ++d) {
      BigComplex acc(prec);
      for (long s = N - 1; s >= d; --s)
        acc = acc * h + c[static_cast<size_t>(s)] * BigFloat(binom_l(s, d), prec);
      next[d][col] = acc;
    }
  }
  *out = std::move(next);
  return true;
}

struct WalkResult {
  CMat frame;
  long steps = 0;
};

BigFloat seg_distance(const BigComplex& z0, const BigComplex& z1,
                      const BigComplex& s) {
  BigComplex d = z1 - z0;
  BigFloat dd = d.re * d.re + d.im * d.im;
  if (dd.is_zero()) return abs(s - z0);
  BigComplex r = s - z0;
  BigFloat t = (r.re * d.re + r.im * d.im) / dd;
  if (t < BigFloat(0L, t.precision())) t = BigFloat(0L, t.precision());
  if (t > BigFloat(1L, t.precision())) t = BigFloat(1L, t.precision());
  return abs(s - (z0 + d * t));
}

WalkResult walk(const DiffOp& L, const Path& path, mpfr_prec_t prec,
                long cap) {
  const int n = L.order();
  if (path.points.empty()) throw error("transition: empty path");
  std::vector<BigComplex> sing;
  for (const auto& s : singular_points(L))
    if (!s.is_infinity()) sing.push_back(s.to_complex(prec));

  // step fraction q with q^cap below the per-step tolerance
  BigFloat hfac =
      exp(log(BigFloat(2L, prec)) *
          BigFloat(-(static_cast<double>(prec) + 16.0) / static_cast<double>(cap), prec));
  BigFloat half = BigFloat(Rat(1, 2), prec);
  if (hfac > half) hfac = half;

  WalkResult out;
  out.frame = CMat::identity(n, prec);
  for (size_t seg = 0; seg + 1 < path.points.size(); ++seg) {
    BigComplex z0 = lift(path.points[seg], prec);
    BigComplex z1 = lift(path.points[seg + 1], prec);
    for (const auto& s : sing) {
      BigFloat clear = ldexp2(max(abs(s), BigFloat(1L, prec)),
                              -(static_cast<long>(prec) / 4));
      if (seg_distance(z0, z1, s) < clear)
        throw error("transition: path clearance violation");
    }
    BigComplex z = z0;
    while (true) {
      BigComplex d = z1 - z;
      BigFloat rem = abs(d);
      if (rem.is_zero()) break;
      BigFloat r(prec);
      mpfr_set_inf(r.raw(), 1);
      for (const auto& s : sing) r = min(r, abs(z - s));
      BigFloat hstep = r * hfac;
      bool last = !(hstep < rem);
      BigComplex h = last ? d : d * (hstep / rem);
      auto P0 = [&] {
        std::vector<std::vector<BigComplex>> P;
        P.reserve(L.p.size());
        for (const auto& pi : L.p) P.push_back(shifted_coeffs(pi, z, prec));
        return P;
      }();
      long N = cap;
      CMat next;
      for (int attempt = 0; !taylor_step(P0, n, out.frame, h, N, prec, &next);
           ++attempt) {
        if (attempt < 2) {
          N *= 2;
        } else {
          N = cap;
          h = h / 2L;
          last = false;
        }
        if (attempt > 8) throw error("transition: step refinement stalled");
      }
      out.frame = std::move(next);
      ++out.steps;
      z = last ? z1 : z + h;
    }
  }
  return out;
}

BigFloat entry_deviation(const CMat& a, const CMat& b) {
  mpfr_prec_t prec = a.rows() ? a[0][0].precision() : 64;
  BigFloat dev(0L, prec);
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) dev = max(dev, abs(a[i][j] - b[i][j]));
  return dev;
}

BigFloat entry_max(const CMat& a) {
  mpfr_prec_t prec = a.rows() ? a[0][0].precision() : 64;
  BigFloat m(0L, prec);
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) m = max(m, abs(a[i][j]));
  return m;
}

}  // namespace

Path Path::reversed() const {
  Path out;
  out.points.assign(points.rbegin(), points.rend());
  return out;
}

Path Path::conjugated() const {
  Path out;
  out.points.reserve(points.size());
  for (const auto& p : points) out.points.push_back(conj(p));
  return out;
}

Path Path::then(const Path& next) const {
  if (points.empty()) return next;
  if (next.points.empty()) return *this;
  if (!(end().re == next.start().re) || !(end().im == next.start().im))
    throw error("Path::then: pieces do not meet");
  Path out = *this;
  out.points.insert(out.points.end(), next.points.begin() + 1,
                    next.points.end());
  return out;
}

bool Path::is_closed() const {
  if (points.size() < 2) return false;
  return start().re == end().re && start().im == end().im;
}

std::string Path::to_string() const {
  std::string out;
  for (const auto& p : points) {
    if (!out.empty()) out += " -> ";
    out += p.to_string(8);
  }
  return out;
}

Path circle_loop(const BigComplex& center, const BigFloat& radius,
                 int segments, int start_quarter) {
  if (segments < 3) throw error("circle_loop: need at least 3 segments");
  mpfr_prec_t prec = std::max(center.precision(), radius.precision());
  BigFloat twopi = BigFloat::pi(prec) * 2L;
  Path out;
  out.points.reserve(static_cast<size_t>(segments) + 1);
  for (int k = 0; k < segments; ++k) {
    BigFloat ang = twopi * BigFloat(Rat(k, segments), prec) +
                   BigFloat::pi(prec) * BigFloat(Rat(start_quarter, 2), prec);
    out.points.push_back(
        center + BigComplex(cos(ang), sin(ang)) * radius);
  }
  out.points.push_back(out.points.front());
  return out;
}

Path auto_path(const DiffOp& L, const BigComplex& a, const BigComplex& b,
               mpfr_prec_t prec) {
  BigComplex z0 = lift(a, prec), z1 = lift(b, prec);
  // collect detours by closest-approach position along the segment
  std::vector<std::pair<BigFloat, BigComplex>> det;
  BigComplex d = z1 - z0;
  BigFloat dd = d.re * d.re + d.im * d.im;
  for (const auto& sp : singular_points(L)) {
    if (sp.is_infinity()) continue;
    BigComplex s = sp.to_complex(prec);
    BigFloat clear = max(abs(s), BigFloat(1L, prec)) / 100L;
    if (!(seg_distance(z0, z1, s) < clear)) continue;
    if (dd.is_zero()) throw error("auto_path: endpoint at a singular point");
    BigComplex r = s - z0;
    BigFloat t = (r.re * d.re + r.im * d.im) / dd;
    if (t < BigFloat(0L, prec) || t > BigFloat(1L, prec)) continue;
    BigComplex foot = z0 + d * t;
    det.emplace_back(t, foot + BigComplex(BigFloat(0L, prec), clear * 2L));
  }
  std::sort(det.begin(), det.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  Path out;
  out.points.push_back(z0);
  for (auto& [t, w] : det) out.points.push_back(w);
  out.points.push_back(z1);
  return out;
}

std::string TransitionMatrix::to_string() const {
  std::ostringstream os;
  os << "transition(order " << order << ", " << steps << " steps, err ~ "
     << err.to_string(4) << ")\n";
  for (int i = 0; i < m.rows(); ++i) {
    os << "  [";
    for (int j = 0; j < m.cols(); ++j) {
      if (j) os << ", ";
      os << m[i][j].to_string(12);
    }
    os << "]\n";
  }
  return os.str();
}

TransitionMatrix transition(const DiffOp& L, const Path& path,
                            mpfr_prec_t prec) {
  if (path.points.size() < 2) {
    TransitionMatrix t;
    t.order = L.order();
    t.prec = prec;
    t.m = CMat::identity(L.order(), prec);
    t.err = BigFloat(0L, prec);
    return t;
  }
  // escalation ladder: each rung doubles the truncation cap and adds 32
  // bits; neighbouring rungs must agree before the result is trusted
  WalkResult base = walk(L, path, prec, 64);
  for (int esc = 0;; ++esc) {
    mpfr_prec_t p2 = prec + 32 * static_cast<mpfr_prec_t>(esc + 1);
    WalkResult check = walk(L, path, p2, 64L << (esc + 1));
    BigFloat dev = entry_deviation(base.frame, check.frame);
    BigFloat tol =
        ldexp2(max(entry_max(check.frame), BigFloat(1L, prec)),
               16 - static_cast<long>(prec));
    if (dev < tol) {
      TransitionMatrix t;
      t.order = L.order();
      t.prec = prec;
      t.m = std::move(check.frame);
      t.err = dev;
      t.steps = check.steps;
      return t;
    }
    if (esc >= 3)
      throw error("transition: accuracy estimate failed to converge");
    base = std::move(check);
  }
}

std::vector<BigComplex> seed_from_local(const DiffOp& L,
                                        const LocalSolution& s,
                                        const BigComplex& x1,
                                        mpfr_prec_t prec, long winding) {
  if (s.at_inf)
    throw error("seed_from_local: expansion at infinity has no finite frame");
  const int n = L.order();
  mpfr_prec_t wprec = prec + 32;
  BigComplex w = lift(x1, wprec) - s.point.to_complex(wprec);
  std::vector<BigComplex> jet = evaluate_jet(s, w, winding, n);
  long f = 1;
  for (int k = 0; k < n; ++k) {
    if (k > 1) f *= k;
    jet[static_cast<size_t>(k)] = jet[static_cast<size_t>(k)] / f;
  }
  return jet;
}

std::string ConnectionCoefficients::to_string() const {
  std::string out = "(";
  for (size_t i = 0; i < c.size(); ++i) {
    if (i) out += ", ";
    out += c[i].to_string(12);
  }
  out += ") err ~ " + err.to_string(4);
  return out;
}

ConnectionCoefficients connect_to_local(const DiffOp& L,
                                        const LocalSolution& s,
                                        const Path& path,
                                        const LocalBasis& target,
                                        mpfr_prec_t prec) {
  const int n = L.order();
  mpfr_prec_t wprec = prec + 32;
  std::vector<BigComplex> v = seed_from_local(L, s, path.start(), prec);
  TransitionMatrix T = transition(L, path, prec);
  v = T.m * v;

  CMat V(n, n, wprec);
  if (static_cast<int>(target.solutions.size()) != n)
    throw error("connect_to_local: target basis is not a full basis");
  for (int j = 0; j < n; ++j) {
    auto col = seed_from_local(L, target.solutions[static_cast<size_t>(j)],
                               path.end(), prec);
    for (int i = 0; i < n; ++i) V[i][j] = col[static_cast<size_t>(i)];
  }
  CMat Vinv = cinverse(V);
  BigFloat cond = norm_inf(V) * norm_inf(Vinv);
  if (cond > ldexp2(BigFloat(1L, wprec), static_cast<long>(prec) / 4))
    throw error("connect_to_local: ill-conditioned match");

  ConnectionCoefficients out;
  out.c = Vinv * v;
  out.err = T.err * norm_inf(Vinv);
  return out;
}

TransitionMatrix monodromy(const DiffOp& L, const Path& loop,
                           mpfr_prec_t prec) {
  if (!loop.is_closed()) throw error("monodromy: path is not closed");
  return transition(L, loop, prec);
}

TransitionMatrix monodromy_in_basis(const DiffOp& L, const Path& loop,
                                    const LocalBasis& basis,
                                    mpfr_prec_t prec) {
  TransitionMatrix M = monodromy(L, loop, prec);
  const int n = L.order();
  if (static_cast<int>(basis.solutions.size()) != n)
    throw error("monodromy_in_basis: basis is not full");
  mpfr_prec_t wprec = prec + 32;
  CMat G(n, n, wprec);
  for (int j = 0; j < n; ++j) {
    auto col = seed_from_local(L, basis.solutions[static_cast<size_t>(j)],
                               loop.start(), prec);
    for (int i = 0; i < n; ++i) G[i][j] = col[static_cast<size_t>(i)];
  }
  CMat Ginv = cinverse(G);
  TransitionMatrix out;
  out.order = n;
  out.prec = prec;
  out.m = Ginv * (M.m * G);
  out.err = M.err * norm_inf(Ginv) * norm_inf(G);
  out.steps = M.steps;
  return out;
}

}  // namespace fuchs
