#pragma once

// Dense univariate polynomials over an exact field (Rat or NFElem).
// Coefficients are stored lowest degree first; the invariant after every
// operation is that the top coefficient is nonzero (zero polynomial = empty).

#include <algorithm>
#include <cassert>
#include <string>
#include <utility>
#include <vector>

#include "fuchs/rat.hpp"

namespace fuchs {

template <class T>
struct Poly {
  std::vector<T> c;  // c[i] multiplies x^i

  Poly() = default;
  explicit Poly(std::vector<T> coeffs) : c(std::move(coeffs)) { trim(); }
  Poly(std::initializer_list<T> coeffs) : c(coeffs) { trim(); }
  static Poly constant(const T& v) { return Poly(std::vector<T>{v}); }
  static Poly x() { return Poly(std::vector<T>{T(0), T(1)}); }
  // v * x^k
  static Poly monomial(const T& v, int k) {
    std::vector<T> cs(k + 1, T(0));
    cs[k] = v;
    return Poly(std::move(cs));
  }

  void trim() {
    while (!c.empty() && c.back() == T(0)) c.pop_back();
  }

  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }  // -1 for 0
  const T& lc() const {
    assert(!c.empty());
    return c.back();
  }
  T coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c.size())) return T(0);
    return c[i];
  }

  bool operator==(const Poly& o) const { return c == o.c; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  Poly operator-() const {
    Poly r = *this;
    for (auto& v : r.c) v = -v;
    return r;
  }

  Poly& operator+=(const Poly& o) {
    if (o.c.size() > c.size()) c.resize(o.c.size(), T(0));
    for (size_t i = 0; i < o.c.size(); ++i) c[i] += o.c[i];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c.size() > c.size()) c.resize(o.c.size(), T(0));
    for (size_t i = 0; i < o.c.size(); ++i) c[i] -= o.c[i];
    trim();
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<T> r(a.c.size() + b.c.size() - 1, T(0));
    for (size_t i = 0; i < a.c.size(); ++i) {
      if (a.c[i] == T(0)) continue;
      for (size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
    }
    return Poly(std::move(r));
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  Poly& operator*=(const T& s) {
    if (s == T(0)) {
      c.clear();
      return *this;
    }
    for (auto& v : c) v *= s;
    return *this;
  }
  friend Poly operator*(Poly a, const T& s) { return a *= s; }
  friend Poly operator*(const T& s, Poly a) { return a *= s; }
  Poly& operator/=(const T& s) {
    for (auto& v : c) v = v / s;
    return *this;
  }
  friend Poly operator/(Poly a, const T& s) { return a /= s; }

  // x^k * p
  Poly shifted_up(int k) const {
    if (is_zero()) return Poly();
    std::vector<T> r(c.size() + k, T(0));
    std::copy(c.begin(), c.end(), r.begin() + k);
    return Poly(std::move(r));
  }

  Poly derivative() const {
    if (c.size() <= 1) return Poly();
    std::vector<T> r(c.size() - 1);
    for (size_t i = 1; i < c.size(); ++i) r[i - 1] = c[i] * T(static_cast<long>(i));
    return Poly(std::move(r));
  }

  template <class S>
  S eval(const S& x) const {
    if (c.empty()) return S(0);
    S acc(0);
    for (size_t i = c.size(); i-- > 0;) acc = acc * x + S(c[i]);
    return acc;
  }

  // p(x + a), synthetic (repeated Horner) shift.
  Poly taylor_shift(const T& a) const {
    if (a == T(0) || is_zero()) return *this;
    std::vector<T> r = c;
    for (size_t i = 0; i + 1 < r.size(); ++i)
      for (size_t j = r.size() - 1; j > i; --j) r[j - 1] += a * r[j];
    return Poly(std::move(r));
  }

  Poly compose(const Poly& inner) const {
    Poly acc;
    for (size_t i = c.size(); i-- > 0;) acc = acc * inner + constant(c[i]);
    return acc;
  }

  // x^deg * p(1/x)
  Poly reversed() const {
    std::vector<T> r(c.rbegin(), c.rend());
    return Poly(std::move(r));
  }

  Poly pow(int e) const {
    assert(e >= 0);
    Poly r = constant(T(1));
    Poly b = *this;
    while (e) {
      if (e & 1) r *= b;
      b *= b;
      e >>= 1;
    }
    return r;
  }
};

template <class T>
std::pair<Poly<T>, Poly<T>> divrem(const Poly<T>& a, const Poly<T>& b) {
  if (b.is_zero()) throw error("poly divrem: division by zero polynomial");
  if (a.degree() < b.degree()) return {Poly<T>(), a};
  std::vector<T> rem = a.c;
  std::vector<T> quo(a.degree() - b.degree() + 1, T(0));
  const T inv_lc = T(1) / b.lc();
  for (int i = a.degree(); i >= b.degree(); --i) {
    T q = rem[i] * inv_lc;
    if (!(q == T(0))) {
      quo[i - b.degree()] = q;
      for (int j = 0; j <= b.degree(); ++j) rem[i - b.degree() + j] -= q * b.c[j];
    }
  }
  return {Poly<T>(std::move(quo)), Poly<T>(std::move(rem))};
}

template <class T>
Poly<T> operator/(const Poly<T>& a, const Poly<T>& b) {
  auto [q, r] = divrem(a, b);
  if (!r.is_zero()) throw error("poly division not exact");
  return q;
}

template <class T>
Poly<T> operator%(const Poly<T>& a, const Poly<T>& b) {
  return divrem(a, b).second;
}

template <class T>
Poly<T> make_monic(const Poly<T>& p) {
  if (p.is_zero()) return p;
  return p / p.lc();
}

// Monic gcd via the Euclidean algorithm.  Specialized for Rat below (the
// generic version is fine for number fields at the degrees we meet).
template <class T>
Poly<T> gcd_generic(Poly<T> a, Poly<T> b) {
  while (!b.is_zero()) {
    a = a % b;
    std::swap(a, b);
  }
  return make_monic(a);
}

template <class T>
Poly<T> poly_gcd(const Poly<T>& a, const Poly<T>& b) {
  return gcd_generic(a, b);
}

// --- Rat-specific helpers -------------------------------------------------

// Writes q*p with integral, content-free coefficients; returns q's value as a
// side effect only when needed by callers (they recompute from lc signs).
inline Poly<Rat> primitive_part(const Poly<Rat>& p) {
  if (p.is_zero()) return p;
  Int den(1);
  for (const auto& v : p.c) den = rat_lcm(den, v.get_den());
  Int num(0);
  for (const auto& v : p.c) num = rat_gcd(num, v.get_num() * (den / v.get_den()));
  if (num == 0) num = 1;
  Poly<Rat> r = p;
  Rat scale = Rat(den) / Rat(num);
  r *= scale;
  if (r.lc() < 0) r *= Rat(-1);
  return r;
}

// Primitive PRS gcd: keeps coefficient growth under control compared to the
// naive rational Euclid.
inline Poly<Rat> poly_gcd(const Poly<Rat>& a0, const Poly<Rat>& b0) {
  if (a0.is_zero()) return make_monic(b0);
  if (b0.is_zero()) return make_monic(a0);
  Poly<Rat> a = primitive_part(a0), b = primitive_part(b0);
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    // rational remainder, then strip content so coefficients stay small
    Poly<Rat> r = a % b;
    a = b;
    b = r.is_zero() ? Poly<Rat>() : primitive_part(r);
  }
  return make_monic(a);
}

template <class T>
Poly<T> squarefree_part(const Poly<T>& p) {
  if (p.degree() <= 0) return make_monic(p);
  Poly<T> g = poly_gcd(p, p.derivative());
  if (g.degree() <= 0) return make_monic(p);
  return make_monic(p / g);
}

// gcd of many
template <class T>
Poly<T> poly_gcd_all(const std::vector<Poly<T>>& ps) {
  Poly<T> g;
  for (const auto& p : ps) {
    g = g.is_zero() ? p : poly_gcd(g, p);
    if (g.degree() == 0) break;
  }
  return g.is_zero() ? g : make_monic(g);
}

template <class T>
std::string poly_to_string(const Poly<T>& p, const std::string& var = "x");

std::string coeff_to_string(const Rat& v);

inline std::string coeff_to_string(const Rat& v) { return to_string(v); }

template <class T>
std::string poly_to_string(const Poly<T>& p, const std::string& var) {
  if (p.is_zero()) return "0";
  std::string out;
  for (int i = p.degree(); i >= 0; --i) {
    T v = p.coeff(i);
    if (v == T(0)) continue;
    std::string cs = coeff_to_string(v);
    bool neg = !cs.empty() && cs[0] == '-';
    if (out.empty()) {
      out += neg ? "-" : "";
    } else {
      out += neg ? " - " : " + ";
    }
    if (neg) cs = cs.substr(1);
    bool unit = (cs == "1");
    if (i == 0) {
      out += cs;
    } else {
      if (!unit) out += cs + "*";
      out += var;
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

}  // namespace fuchs
