#include "fuchs/factor.hpp"

#include <algorithm>
#include <cstdint>

namespace fuchs {

namespace {

// ---------------------------------------------------------------------------
// arithmetic in F_p[x], p a small odd prime (fits in 32 bits)
// ---------------------------------------------------------------------------

using u64 = std::uint64_t;
using PPoly = std::vector<u64>;  // lowest-first, coefficients in [0, p)

void ptrim(PPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}
int pdeg(const PPoly& f) { return static_cast<int>(f.size()) - 1; }

u64 inv_mod(u64 a, u64 p) {
  // extended Euclid on integers
  long long t = 0, nt = 1, r = static_cast<long long>(p), nr = static_cast<long long>(a % p);
  while (nr != 0) {
    long long q = r / nr;
    std::swap(t -= q * nt, nt);
    std::swap(r -= q * nr, nr);
  }
  if (r != 1) throw error("inv_mod: not invertible");
  return static_cast<u64>(t < 0 ? t + static_cast<long long>(p) : t);
}

PPoly pmul(const PPoly& a, const PPoly& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  PPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  }
  ptrim(r);
  return r;
}

// remainder of a by monic-normalized b
PPoly pdivrem(PPoly a, const PPoly& b, u64 p, PPoly* quo = nullptr) {
  int db = pdeg(b);
  if (db < 0) throw error("pdivrem: zero divisor");
  u64 linv = inv_mod(b.back(), p);
  PPoly q;
  if (pdeg(a) >= db) q.assign(pdeg(a) - db + 1, 0);
  for (int i = pdeg(a); i >= db; --i) {
    u64 c = (a[i] * linv) % p;
    if (c) {
      q[i - db] = c;
      for (int j = 0; j <= db; ++j) {
        u64 sub = (c * b[j]) % p;
        a[i - db + j] = (a[i - db + j] + p - sub) % p;
      }
    }
  }
  ptrim(a);
  if (quo) {
    ptrim(q);
    *quo = q;
  }
  return a;
}

PPoly pgcd(PPoly a, PPoly b, u64 p) {
  while (!b.empty()) {
    a = pdivrem(a, b, p);
    std::swap(a, b);
  }
  if (!a.empty()) {
    u64 linv = inv_mod(a.back(), p);
    for (auto& c : a) c = (c * linv) % p;
  }
  return a;
}

PPoly pmonic(PPoly f, u64 p) {
  if (f.empty()) return f;
  u64 linv = inv_mod(f.back(), p);
  for (auto& c : f) c = (c * linv) % p;
  return f;
}

PPoly pderiv(const PPoly& f, u64 p) {
  PPoly r;
  for (size_t i = 1; i < f.size(); ++i) r.push_back((f[i] * (i % p)) % p);
  ptrim(r);
  return r;
}

PPoly ppow_mod(PPoly base, Int e, const PPoly& f, u64 p) {
  PPoly r{1};
  base = pdivrem(base, f, p);
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = pdivrem(pmul(r, base, p), f, p);
    base = pdivrem(pmul(base, base, p), f, p);
    e /= 2;
  }
  return r;
}

// Berlekamp factorization of a monic squarefree f over F_p.
std::vector<PPoly> berlekamp(const PPoly& f, u64 p) {
  int n = pdeg(f);
  if (n <= 1) return {f};
  // rows of Q: x^(i p) mod f
  PPoly xp = ppow_mod(PPoly{0, 1}, Int(static_cast<long>(p)), f, p);
  std::vector<PPoly> rows(n);
  rows[0] = PPoly{1};
  for (int i = 1; i < n; ++i) rows[i] = pdivrem(pmul(rows[i - 1], xp, p), f, p);
  // B = Q - I as an n x n matrix, column index = coefficient
  std::vector<std::vector<u64>> B(n, std::vector<u64>(n, 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= pdeg(rows[i]); ++j) B[i][j] = rows[i][j];
    B[i][i] = (B[i][i] + p - 1) % p;
  }
  // nullspace of B^T v = 0: eliminate rows of B as vectors (v B = 0 form).
  // Standard trick: row-reduce B over F_p and read the kernel.
  // We reduce B transposed so the kernel vectors multiply on the right.
  std::vector<std::vector<u64>> M(n, std::vector<u64>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M[j][i] = B[i][j];
  std::vector<int> pivot_col(n, -1);
  int rank = 0;
  for (int col = 0; col < n && rank < n; ++col) {
    int piv = -1;
    for (int r = rank; r < n; ++r)
      if (M[r][col]) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(M[rank], M[piv]);
    u64 inv = inv_mod(M[rank][col], p);
    for (int j = 0; j < n; ++j) M[rank][j] = (M[rank][j] * inv) % p;
    for (int r = 0; r < n; ++r) {
      if (r == rank || !M[r][col]) continue;
      u64 c = M[r][col];
      for (int j = 0; j < n; ++j) {
        u64 sub = (c * M[rank][j]) % p;
        M[r][j] = (M[r][j] + p - sub) % p;
      }
    }
    pivot_col[rank] = col;
    ++rank;
  }
  int nullity = n - rank;
  if (nullity == 1) return {f};
  // kernel basis
  std::vector<PPoly> basis;
  std::vector<bool> is_pivot(n, false);
  for (int r = 0; r < rank; ++r) is_pivot[pivot_col[r]] = true;
  for (int col = 0; col < n; ++col) {
    if (is_pivot[col]) continue;
    PPoly v(n, 0);
    v[col] = 1;
    for (int r = 0; r < rank; ++r) v[pivot_col[r]] = (p - M[r][col]) % p;
    ptrim(v);
    basis.push_back(v);
  }
  // split with gcd(f, v - s)
  std::vector<PPoly> factors{f};
  for (const auto& v : basis) {
    if (static_cast<int>(factors.size()) >= nullity) break;
    std::vector<PPoly> next;
    for (auto& g : factors) {
      if (pdeg(g) <= 1) {
        next.push_back(g);
        continue;
      }
      PPoly rem = g;
      bool split = false;
      std::vector<PPoly> pieces;
      for (u64 s = 0; s < p && pdeg(rem) > 0; ++s) {
        PPoly vs = v;
        if (vs.empty()) vs.assign(1, 0);
        vs[0] = (vs[0] + p - s) % p;
        ptrim(vs);
        PPoly h = pgcd(rem, vs, p);
        if (pdeg(h) > 0 && pdeg(h) < pdeg(rem)) {
          pieces.push_back(pmonic(h, p));
          PPoly quo;
          pdivrem(rem, h, p, &quo);
          rem = std::move(quo);
          split = true;
        }
      }
      if (pdeg(rem) > 0) pieces.push_back(pmonic(rem, p));
      if (!split) {
        next.push_back(g);
      } else {
        for (auto& h : pieces) next.push_back(pmonic(h, p));
      }
    }
    factors = std::move(next);
  }
  if (static_cast<int>(factors.size()) != nullity)
    throw error("berlekamp: splitting incomplete");
  return factors;
}

// ---------------------------------------------------------------------------
// integer polynomial helpers (mpz coefficients, lowest-first)
// ---------------------------------------------------------------------------

using ZPoly = std::vector<Int>;

void ztrim(ZPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}
int zdeg(const ZPoly& f) { return static_cast<int>(f.size()) - 1; }

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, Int(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  ztrim(r);
  return r;
}

ZPoly zsub(ZPoly a, const ZPoly& b) {
  if (b.size() > a.size()) a.resize(b.size(), Int(0));
  for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  ztrim(a);
  return a;
}

void zmod(ZPoly& f, const Int& q) {
  for (auto& c : f) {
    mpz_mod(c.get_mpz_t(), c.get_mpz_t(), q.get_mpz_t());
  }
  ztrim(f);
}

void zmod_sym(ZPoly& f, const Int& q) {
  Int half = q / 2;
  for (auto& c : f) {
    mpz_mod(c.get_mpz_t(), c.get_mpz_t(), q.get_mpz_t());
    if (c > half) c -= q;
  }
  ztrim(f);
}

// remainder and quotient by a monic divisor, coefficients mod q
void zdivrem_monic_mod(const ZPoly& a, const ZPoly& b, const Int& q, ZPoly& quo,
                       ZPoly& rem) {
  rem = a;
  zmod(rem, q);
  quo.clear();
  int db = zdeg(b);
  if (zdeg(rem) >= db) quo.assign(zdeg(rem) - db + 1, Int(0));
  for (int i = zdeg(rem); i >= db; --i) {
    Int c = rem[i];
    mpz_mod(c.get_mpz_t(), c.get_mpz_t(), q.get_mpz_t());
    if (c == 0) continue;
    quo[i - db] = c;
    for (int j = 0; j <= db; ++j) {
      rem[i - db + j] -= c * b[j];
      mpz_mod(rem[i - db + j].get_mpz_t(), rem[i - db + j].get_mpz_t(), q.get_mpz_t());
    }
  }
  ztrim(rem);
  ztrim(quo);
}

// exact division test over Z: does b divide a?  If yes fill quo.
bool zdivides(const ZPoly& a, const ZPoly& b, ZPoly& quo) {
  quo.clear();
  if (b.empty()) return false;
  ZPoly rem = a;
  int db = zdeg(b);
  if (zdeg(rem) < db) return rem.empty();
  quo.assign(zdeg(rem) - db + 1, Int(0));
  for (int i = zdeg(rem); i >= db; --i) {
    if (rem.size() <= static_cast<size_t>(i) || rem[i] == 0) continue;
    Int c;
    if (!mpz_divisible_p(rem[i].get_mpz_t(), b[db].get_mpz_t())) return false;
    c = rem[i] / b[db];
    quo[i - db] = c;
    for (int j = 0; j <= db; ++j) rem[i - db + j] -= c * b[j];
  }
  ztrim(rem);
  ztrim(quo);
  return rem.empty();
}

Int zcontent(const ZPoly& f) {
  Int g(0);
  for (const auto& c : f) g = rat_gcd(g, c);
  return g == 0 ? Int(1) : g;
}

ZPoly to_zpoly(const Poly<Rat>& p) {
  // caller guarantees integral coefficients
  ZPoly r;
  r.reserve(p.c.size());
  for (const auto& c : p.c) {
    if (c.get_den() != 1) throw error("to_zpoly: non-integral coefficient");
    r.push_back(c.get_num());
  }
  return r;
}

Poly<Rat> from_zpoly(const ZPoly& f) {
  std::vector<Rat> c;
  c.reserve(f.size());
  for (const auto& v : f) c.emplace_back(v);
  return Poly<Rat>(std::move(c));
}

// ---------------------------------------------------------------------------
// Hensel lifting (monic, binary tree)
// ---------------------------------------------------------------------------

// extended gcd over F_p: s*g + t*h = 1
void pbezout(const PPoly& g, const PPoly& h, u64 p, PPoly& s, PPoly& t) {
  PPoly r0 = g, r1 = h;
  PPoly s0{1}, s1{}, t0{}, t1{1};
  while (!r1.empty()) {
    PPoly q;
    PPoly r2 = pdivrem(r0, r1, p, &q);
    PPoly s2 = s0, t2 = t0;
    // s2 = s0 - q*s1, t2 = t0 - q*t1
    {
      PPoly qs = pmul(q, s1, p);
      s2.resize(std::max(s2.size(), qs.size()), 0);
      for (size_t i = 0; i < qs.size(); ++i) s2[i] = (s2[i] + p - qs[i]) % p;
      ptrim(s2);
      PPoly qt = pmul(q, t1, p);
      t2.resize(std::max(t2.size(), qt.size()), 0);
      for (size_t i = 0; i < qt.size(); ++i) t2[i] = (t2[i] + p - qt[i]) % p;
      ptrim(t2);
    }
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (pdeg(r0) != 0) throw error("pbezout: inputs not coprime");
  u64 inv = inv_mod(r0[0], p);
  for (auto& c : s0) c = (c * inv) % p;
  for (auto& c : t0) c = (c * inv) % p;
  s = s0;
  t = t0;
}

ZPoly zfrom_p(const PPoly& f) {
  ZPoly r;
  r.reserve(f.size());
  for (u64 c : f) r.emplace_back(static_cast<unsigned long>(c));
  return r;
}

// One quadratic Hensel step: f = g h (mod m), s g + t h = 1 (mod m), g,h,f
// monic; returns the same data mod m^2.
void hensel_step(const ZPoly& f, ZPoly& g, ZPoly& h, ZPoly& s, ZPoly& t,
                 const Int& m) {
  Int m2 = m * m;
  ZPoly e = zsub(f, zmul(g, h));
  zmod(e, m2);
  ZPoly q, r;
  zdivrem_monic_mod(zmul(s, e), h, m2, q, r);
  ZPoly gstar = g;
  {
    ZPoly te = zmul(t, e);
    ZPoly qg = zmul(q, g);
    gstar.resize(std::max({gstar.size(), te.size(), qg.size()}), Int(0));
    for (size_t i = 0; i < te.size(); ++i) gstar[i] += te[i];
    for (size_t i = 0; i < qg.size(); ++i) gstar[i] += qg[i];
    zmod(gstar, m2);
  }
  ZPoly hstar = h;
  {
    hstar.resize(std::max(hstar.size(), r.size()), Int(0));
    for (size_t i = 0; i < r.size(); ++i) hstar[i] += r[i];
    zmod(hstar, m2);
  }
  // Bezout update
  ZPoly b = zmul(s, gstar);
  {
    ZPoly th = zmul(t, hstar);
    b.resize(std::max(b.size(), th.size()), Int(0));
    for (size_t i = 0; i < th.size(); ++i) b[i] += th[i];
    if (b.empty()) b.assign(1, Int(0));
    b[0] -= 1;
    zmod(b, m2);
  }
  ZPoly c, d;
  zdivrem_monic_mod(zmul(s, b), hstar, m2, c, d);
  ZPoly sstar = zsub(s, d);
  zmod(sstar, m2);
  ZPoly tstar = zsub(zsub(t, zmul(t, b)), zmul(c, gstar));
  zmod(tstar, m2);
  g = std::move(gstar);
  h = std::move(hstar);
  s = std::move(sstar);
  t = std::move(tstar);
}

// Lift the factorization f = prod(parts) from mod p to mod p^(2^iters) >= bound.
void hensel_tree(const ZPoly& f, std::vector<PPoly>::const_iterator begin,
                 std::vector<PPoly>::const_iterator end, u64 p, const Int& target,
                 std::vector<ZPoly>& out) {
  size_t n = static_cast<size_t>(end - begin);
  if (n == 1) {
    ZPoly g = f;
    out.push_back(std::move(g));
    return;
  }
  size_t half = n / 2;
  PPoly G{1}, H{1};
  for (auto it = begin; it != begin + half; ++it) G = pmul(G, *it, p);
  for (auto it = begin + half; it != end; ++it) H = pmul(H, *it, p);
  PPoly sp, tp;
  pbezout(G, H, p, sp, tp);
  ZPoly g = zfrom_p(G), h = zfrom_p(H), s = zfrom_p(sp), t = zfrom_p(tp);
  Int m(static_cast<unsigned long>(p));
  while (m < target) {
    hensel_step(f, g, h, s, t, m);
    m = m * m;
  }
  // recurse with the lifted halves as the new "f"
  hensel_tree(g, begin, begin + half, p, target, out);
  hensel_tree(h, begin + half, end, p, target, out);
}

// ---------------------------------------------------------------------------
// Zassenhaus on a monic squarefree integer polynomial
// ---------------------------------------------------------------------------

const u64 kPrimes[] = {3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41, 43,
                       47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103,
                       107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163,
                       167, 173, 179, 181, 191, 193, 197, 199, 211, 223, 227,
                       229, 233, 239, 241, 251, 257, 263, 269, 271, 277, 281};

std::vector<ZPoly> factor_monic_squarefree_z(const ZPoly& f) {
  int n = zdeg(f);
  if (n <= 1) return {f};
  // pick a prime where f stays squarefree
  u64 p = 0;
  std::vector<PPoly> modular;
  for (u64 cand : kPrimes) {
    PPoly fp(f.size());
    for (size_t i = 0; i < f.size(); ++i) {
      Int c = f[i];
      mpz_mod_ui(c.get_mpz_t(), c.get_mpz_t(), cand);
      fp[i] = c.get_ui();
    }
    ptrim(fp);
    if (pdeg(fp) != n) continue;  // p divides lc (impossible, monic) - guard
    PPoly g = pgcd(fp, pderiv(fp, cand), cand);
    if (pdeg(g) != 0) continue;
    modular = berlekamp(pmonic(fp, cand), cand);
    p = cand;
    break;
  }
  if (p == 0) throw error("factor: no usable small prime (degree ceiling exceeded?)");
  if (modular.size() == 1) return {f};
  if (modular.size() > 24) throw error("factor: too many modular factors for recombination");

  // Mignotte-style bound: |coeff of any factor| <= 2^n * sqrt(n+1) * max|f_i|
  Int maxc(0);
  for (const auto& c : f) {
    Int a = abs(c);
    if (a > maxc) maxc = a;
  }
  Int bound = maxc;
  mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), n + 2);
  bound = bound * Int(static_cast<long>(n + 1));
  Int target = 2 * bound + 1;

  std::vector<ZPoly> lifted;
  {
    // bring f into the tree as f mod p^K with K chosen by doubling
    Int m(static_cast<unsigned long>(p));
    while (m < target) m = m * m;
    ZPoly fmod = f;
    zmod(fmod, m);
    hensel_tree(fmod, modular.begin(), modular.end(), p, target, lifted);
    for (auto& g : lifted) zmod_sym(g, m);
  }

  Int modulus(static_cast<unsigned long>(p));
  while (modulus < target) modulus = modulus * modulus;

  // recombination
  std::vector<ZPoly> result;
  std::vector<int> live(lifted.size());
  for (size_t i = 0; i < lifted.size(); ++i) live[i] = static_cast<int>(i);
  ZPoly remaining = f;

  auto try_subsets = [&](size_t card) -> bool {
    // iterate over combinations of `live` of size `card`
    std::vector<size_t> comb(card);
    for (size_t i = 0; i < card; ++i) comb[i] = i;
    while (true) {
      ZPoly cand{Int(1)};
      for (size_t i = 0; i < card; ++i) cand = zmul(cand, lifted[live[comb[i]]]);
      zmod_sym(cand, modulus);
      ZPoly quo;
      if (zdivides(remaining, cand, quo)) {
        result.push_back(cand);
        remaining = quo;
        std::vector<int> next_live;
        for (size_t i = 0, j = 0; i < live.size(); ++i) {
          if (j < card && comb[j] == i) {
            ++j;
            continue;
          }
          next_live.push_back(live[i]);
        }
        live = std::move(next_live);
        return true;
      }
      // next combination
      size_t k = card;
      while (k > 0) {
        --k;
        if (comb[k] != k + live.size() - card) {
          ++comb[k];
          for (size_t j = k + 1; j < card; ++j) comb[j] = comb[j - 1] + 1;
          break;
        }
        if (k == 0) return false;
      }
      if (card == 0) return false;
    }
  };

  size_t card = 1;
  while (live.size() > 0 && card <= live.size() / 2) {
    if (try_subsets(card)) {
      card = 1;
      continue;
    }
    ++card;
  }
  if (zdeg(remaining) > 0) result.push_back(remaining);
  return result;
}

}  // namespace

std::vector<std::pair<Poly<Rat>, int>> squarefree_decomposition(const Poly<Rat>& p) {
  std::vector<std::pair<Poly<Rat>, int>> out;
  if (p.degree() <= 0) return out;
  Poly<Rat> f = make_monic(p);
  Poly<Rat> df = f.derivative();
  Poly<Rat> c = poly_gcd(f, df);
  Poly<Rat> w = f / c;
  Poly<Rat> y = df / c;
  Poly<Rat> z = y - w.derivative();
  int i = 1;
  while (w.degree() > 0) {
    Poly<Rat> g = poly_gcd(w, z);
    if (g.degree() > 0) out.emplace_back(make_monic(g), i);
    w = w / g;
    y = z / g;
    z = y - w.derivative();
    ++i;
  }
  return out;
}

Factorization factor_squarefree(const Poly<Rat>& p) {
  Factorization out;
  out.constant = Rat(0);
  if (p.is_zero()) return out;
  out.constant = p.lc();
  if (p.degree() <= 0) return out;
  auto parts = squarefree_decomposition(p);
  for (auto& [part, mult] : parts) {
    if (part.degree() == 1) {
      out.factors.push_back({part, mult});
      continue;
    }
    // monicize over Z: for primitive g with lc l, factor l^(n-1) g(x/l)
    Poly<Rat> prim = primitive_part(part);
    Int l = prim.lc().get_num();  // primitive => integer coefficients
    ZPoly F;
    if (l == 1) {
      F = to_zpoly(prim);
    } else {
      int n = prim.degree();
      F.assign(n + 1, Int(0));
      // l^(n-1) g(x/l) is monic integral: coefficient of x^i is g_i l^(n-1-i)
      F[n] = 1;
      Int pw(1);
      for (int i = n - 1; i >= 0; --i) {
        F[i] = prim.coeff(i).get_num() * pw;
        pw *= l;
      }
    }
    auto zfactors = factor_monic_squarefree_z(F);
    for (const auto& zf : zfactors) {
      Poly<Rat> g;
      if (l == 1) {
        g = from_zpoly(zf);
      } else {
        // map back: h(x) = zf(l x), then primitive part
        std::vector<Rat> cs(zf.size());
        Int pw(1);
        for (size_t i = 0; i < zf.size(); ++i) {
          cs[i] = Rat(zf[i] * pw);
          pw *= l;
        }
        g = primitive_part(Poly<Rat>(std::move(cs)));
      }
      out.factors.push_back({make_monic(g), mult});
    }
  }
  std::sort(out.factors.begin(), out.factors.end(), [](const FactorPair& a, const FactorPair& b) {
    if (a.factor.degree() != b.factor.degree()) return a.factor.degree() < b.factor.degree();
    if (a.multiplicity != b.multiplicity) return a.multiplicity < b.multiplicity;
    return poly_to_string(a.factor) < poly_to_string(b.factor);
  });
  return out;
}

bool is_irreducible(const Poly<Rat>& p) {
  if (p.degree() <= 0) return false;
  if (p.degree() == 1) return true;
  auto f = factor_squarefree(p);
  return f.factors.size() == 1 && f.factors[0].multiplicity == 1;
}

std::vector<std::pair<Rat, int>> rational_roots(const Poly<Rat>& p) {
  std::vector<std::pair<Rat, int>> out;
  auto f = factor_squarefree(p);
  for (const auto& [g, mult] : f.factors) {
    if (g.degree() == 1) out.emplace_back(-g.coeff(0) / g.coeff(1), mult);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace fuchs
