#include "fuchs/roots.hpp"

#include <algorithm>

namespace fuchs {

namespace {

std::vector<BigComplex> to_cx(const Poly<Rat>& p, mpfr_prec_t prec) {
  std::vector<BigComplex> c;
  c.reserve(p.c.size());
  for (const auto& q : p.c) c.emplace_back(q, prec);
  return c;
}

BigComplex eval_cx(const std::vector<BigComplex>& c, const BigComplex& z) {
  BigComplex acc(0L, z.precision());
  for (size_t i = c.size(); i-- > 0;) acc = acc * z + c[i];
  return acc;
}

// returns true on convergence
bool aberth(const std::vector<BigComplex>& c, std::vector<BigComplex>& z,
            mpfr_prec_t prec) {
  const int n = static_cast<int>(c.size()) - 1;
  std::vector<BigComplex> dc(n);
  for (int i = 1; i <= n; ++i) dc[i - 1] = c[i] * BigFloat(static_cast<long>(i), prec);
  BigFloat tol = ldexp2(BigFloat(1L, prec), -(static_cast<long>(prec) - 24));
  for (int iter = 0; iter < 400; ++iter) {
    BigFloat worst(0L, prec);
    for (int k = 0; k < n; ++k) {
      BigComplex pv = eval_cx(c, z[k]);
      BigComplex dv = eval_cx(dc, z[k]);
      if (dv.is_zero()) {
        z[k] += BigComplex(1e-3, 7e-4, prec);
        worst = BigFloat(1L, prec);
        continue;
      }
      BigComplex w = pv / dv;
      BigComplex s(0L, prec);
      for (int j = 0; j < n; ++j) {
        if (j == k) continue;
        BigComplex d = z[k] - z[j];
        if (d.is_zero()) {
          d = BigComplex(1e-20, 0.0, prec);
        }
        s += inverse(d);
      }
      BigComplex denom = BigComplex(1L, prec) - w * s;
      BigComplex corr = denom.is_zero() ? w : w / denom;
      z[k] -= corr;
      BigFloat rel = abs(corr) / max(BigFloat(1L, prec), abs(z[k]));
      worst = max(worst, rel);
    }
    if (worst < tol) return true;
  }
  return false;
}

}  // namespace

std::vector<BigComplex> complex_roots(const Poly<Rat>& p0, mpfr_prec_t prec) {
  if (p0.degree() <= 0) return {};
  Poly<Rat> p = p0;
  std::vector<BigComplex> out;
  // peel off a root at the origin so Aberth starts from a clean ring
  while (!p.is_zero() && p.coeff(0) == Rat(0)) {
    out.emplace_back(0L, prec);
    std::vector<Rat> shifted(p.c.begin() + 1, p.c.end());
    p = Poly<Rat>(std::move(shifted));
  }
  int n = p.degree();
  if (n >= 1) {
    mpfr_prec_t work = prec + 32 + 2 * n;
    for (int attempt = 0; attempt < 4; ++attempt) {
      auto c = to_cx(p, work);
      // Cauchy bound for the initial circle
      BigFloat r(1L, work);
      for (int i = 0; i < n; ++i) r = max(r, abs(c[i]) / abs(c[n]));
      r = r + BigFloat(1L, work);
      std::vector<BigComplex> z;
      z.reserve(n);
      BigFloat two_pi = BigFloat::pi(work) * 2L;
      for (int k = 0; k < n; ++k) {
        BigFloat th = two_pi * BigFloat(static_cast<long>(k), work) /
                          BigFloat(static_cast<long>(n), work) +
                      BigFloat(0.4, work);
        z.emplace_back(r * cos(th), r * sin(th));
      }
      if (aberth(c, z, work)) {
        for (auto& zi : z)
          out.emplace_back(BigFloat(zi.re), BigFloat(zi.im));
        std::sort(out.begin(), out.end(), [](const BigComplex& a, const BigComplex& b) {
          if (a.re != b.re) return a.re < b.re;
          return a.im < b.im;
        });
        return out;
      }
      work *= 2;
    }
    throw error("complex_roots: no convergence after precision escalation");
  }
  std::sort(out.begin(), out.end(), [](const BigComplex& a, const BigComplex& b) {
    if (a.re != b.re) return a.re < b.re;
    return a.im < b.im;
  });
  return out;
}

BigComplex newton_refine(const Poly<Rat>& p, const BigComplex& z0, mpfr_prec_t prec) {
  mpfr_prec_t work = prec + 64;
  auto c = to_cx(p, work);
  auto dp = p.derivative();
  auto dc = to_cx(dp, work);
  BigComplex z(BigFloat(z0.re), BigFloat(z0.im));
  // re-round to working precision
  z = z + BigComplex(0L, work);
  BigFloat tol = ldexp2(BigFloat(1L, work), -(static_cast<long>(prec) + 8));
  for (int iter = 0; iter < 200; ++iter) {
    BigComplex dv = eval_cx(dc, z);
    if (dv.is_zero()) throw error("newton_refine: derivative vanished");
    BigComplex step = eval_cx(c, z) / dv;
    z -= step;
    if (abs(step) < tol * max(BigFloat(1L, work), abs(z))) return z;
  }
  throw error("newton_refine: no convergence");
}

}  // namespace fuchs
