#pragma once

// Rational functions num/den over an exact coefficient field, kept in lowest
// terms with a normalized denominator (monic for number fields, primitive
// with positive leading coefficient over Q).

#include <string>
#include <utility>

#include "fuchs/poly.hpp"

namespace fuchs {

inline void normalize_pair(Poly<Rat>& n, Poly<Rat>& d) {
  if (d.is_zero()) throw error("rational function: zero denominator");
  if (n.is_zero()) {
    d = Poly<Rat>::constant(Rat(1));
    return;
  }
  Poly<Rat> g = poly_gcd(n, d);
  if (g.degree() > 0) {
    n = n / g;
    d = d / g;
  }
  // scale so den is primitive integral with positive lc
  Poly<Rat> dp = primitive_part(d);
  Rat s = d.lc() / dp.lc();
  d = dp;
  n /= s;
}

template <class T>
void normalize_pair(Poly<T>& n, Poly<T>& d) {
  if (d.is_zero()) throw error("rational function: zero denominator");
  if (n.is_zero()) {
    d = Poly<T>::constant(T(1));
    return;
  }
  Poly<T> g = poly_gcd(n, d);
  if (g.degree() > 0) {
    n = n / g;
    d = d / g;
  }
  T s = d.lc();
  if (!(s == T(1))) {
    n /= s;
    d /= s;
  }
}

template <class T>
struct RatFunc {
  Poly<T> num;
  Poly<T> den = Poly<T>::constant(T(1));

  RatFunc() = default;
  RatFunc(Poly<T> n, Poly<T> d) : num(std::move(n)), den(std::move(d)) {
    normalize_pair(num, den);
  }
  explicit RatFunc(Poly<T> n) : num(std::move(n)) {}
  explicit RatFunc(const T& v) : num(Poly<T>::constant(v)) {}

  static RatFunc x() { return RatFunc(Poly<T>::x()); }

  bool is_zero() const { return num.is_zero(); }
  bool is_polynomial() const { return den.degree() == 0; }
  Poly<T> as_polynomial() const {
    if (!is_polynomial()) throw error("rational function is not a polynomial");
    return num / den.lc();
  }

  bool operator==(const RatFunc& o) const {
    return num * o.den == o.num * den;
  }
  bool operator!=(const RatFunc& o) const { return !(*this == o); }

  RatFunc operator-() const {
    RatFunc r = *this;
    r.num = -r.num;
    return r;
  }
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num * b.den - b.num * a.den, a.den * b.den);
  }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num * b.num, a.den * b.den);
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw error("rational function division by zero");
    return RatFunc(a.num * b.den, a.den * b.num);
  }
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

  friend RatFunc operator*(const RatFunc& a, const T& s) { return a * RatFunc(s); }
  friend RatFunc operator*(const T& s, const RatFunc& a) { return a * RatFunc(s); }
  friend RatFunc operator/(const RatFunc& a, const T& s) { return a / RatFunc(s); }

  RatFunc derivative() const {
    return RatFunc(num.derivative() * den - num * den.derivative(), den * den);
  }

  RatFunc inverse() const {
    if (is_zero()) throw error("rational function inverse of zero");
    return RatFunc(den, num);
  }

  // substitute x -> inner (rational function composition)
  RatFunc compose(const RatFunc& inner) const {
    int dn = num.degree() >= 0 ? num.degree() : 0;
    int dd = den.degree() >= 0 ? den.degree() : 0;
    int d = std::max(dn, dd);
    // p(u/v) * v^d is a polynomial in u,v; build both halves
    auto lift = [&](const Poly<T>& p) {
      Poly<T> acc;
      Poly<T> upow = Poly<T>::constant(T(1));
      for (int i = 0; i <= d; ++i) {
        if (i <= p.degree() && !(p.coeff(i) == T(0)))
          acc += Poly<T>::constant(p.coeff(i)) * upow * inner.den.pow(d - i);
        if (i < d) upow *= inner.num;
      }
      return acc;
    };
    return RatFunc(lift(num), lift(den));
  }

  template <class S>
  S eval(const S& x) const {
    S dv = den.template eval<S>(x);
    return num.template eval<S>(x) / dv;
  }

  // pole order at a root a of den (0 if not a pole; negative = zero order)
  int order_at(const T& a) const {
    auto count = [&](const Poly<T>& p) {
      int k = 0;
      Poly<T> q = p;
      Poly<T> lin{-a, T(1)};
      while (!q.is_zero()) {
        auto [quo, rem] = divrem(q, lin);
        if (!rem.is_zero()) break;
        ++k;
        q = quo;
      }
      return k;
    };
    if (is_zero()) return 0;
    return count(den) - count(num);
  }

  std::string to_string(const std::string& var = "x") const {
    if (is_polynomial()) return poly_to_string(as_polynomial(), var);
    return "(" + poly_to_string(num, var) + ")/(" + poly_to_string(den, var) + ")";
  }
};

}  // namespace fuchs
