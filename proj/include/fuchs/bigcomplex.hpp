#pragma once

// Complex arithmetic over BigFloat pairs.  Branch cuts follow the principal
// convention: arg in (-pi, pi], cut along the negative real axis.  Power with
// rational exponent accepts an extra winding count so callers can move to
// other sheets deliberately.

#include <string>
#include <utility>

#include "fuchs/bigfloat.hpp"

namespace fuchs {

struct BigComplex {
  BigFloat re, im;

  explicit BigComplex(mpfr_prec_t prec = 64) : re(prec), im(prec) {}
  BigComplex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}
  BigComplex(long r, mpfr_prec_t prec) : re(r, prec), im(0L, prec) {}
  BigComplex(double r, double i, mpfr_prec_t prec) : re(r, prec), im(i, prec) {}
  BigComplex(const Rat& r, mpfr_prec_t prec) : re(r, prec), im(0L, prec) {}
  BigComplex(const Rat& r, const Rat& i, mpfr_prec_t prec) : re(r, prec), im(i, prec) {}

  mpfr_prec_t precision() const { return std::max(re.precision(), im.precision()); }
  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  double to_double_re() const { return re.to_double(); }
  double to_double_im() const { return im.to_double(); }

  friend BigComplex operator-(const BigComplex& a) { return {-a.re, -a.im}; }
  friend BigComplex operator+(const BigComplex& a, const BigComplex& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend BigComplex operator-(const BigComplex& a, const BigComplex& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend BigComplex operator*(const BigComplex& a, const BigComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend BigComplex operator*(const BigComplex& a, const BigFloat& s) {
    return {a.re * s, a.im * s};
  }
  friend BigComplex operator*(const BigFloat& s, const BigComplex& a) { return a * s; }
  friend BigComplex operator/(const BigComplex& a, const BigComplex& b) {
    BigFloat n = b.re * b.re + b.im * b.im;
    if (n.is_zero()) throw error("complex division by zero");
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
  }
  friend BigComplex operator/(const BigComplex& a, long s) { return {a.re / s, a.im / s}; }
  BigComplex& operator+=(const BigComplex& o) { re += o.re; im += o.im; return *this; }
  BigComplex& operator-=(const BigComplex& o) { re -= o.re; im -= o.im; return *this; }
  BigComplex& operator*=(const BigComplex& o) { return *this = *this * o; }
  BigComplex& operator/=(const BigComplex& o) { return *this = *this / o; }

  friend BigComplex conj(const BigComplex& a) { return {a.re, -a.im}; }
  friend BigFloat abs(const BigComplex& a) { return hypot(a.re, a.im); }
  friend BigFloat arg(const BigComplex& a) { return atan2(a.im, a.re); }

  friend BigComplex exp(const BigComplex& a) {
    BigFloat m = exp(a.re);
    return {m * cos(a.im), m * sin(a.im)};
  }
  // principal log; error at 0
  friend BigComplex log(const BigComplex& a) {
    BigFloat m = abs(a);
    if (m.is_zero()) throw error("complex log of zero");
    return {log(m), arg(a)};
  }
  friend BigComplex sqrt(const BigComplex& a) {
    if (a.is_zero()) return a;
    // cancellation-free half-angle form on either side of the imaginary axis
    BigFloat m = abs(a);
    BigFloat w = sqrt((m + abs(a.re)) / 2L);
    if (a.re.sign() >= 0) return {w, a.im / (w * 2L)};
    BigFloat u = abs(a.im) / (w * 2L);
    return a.im.sign() >= 0 ? BigComplex{u, w} : BigComplex{u, -w};
  }
  friend BigComplex inverse(const BigComplex& a) {
    return BigComplex(1L, a.precision()) / a;
  }

  std::string to_string(size_t digits = 0) const {
    return re.to_string(digits) + (im.sign() < 0 ? " - " : " + ") + abs(im).to_string(digits) + "i";
  }
};

// log with a chosen sheet: principal value + 2*pi*i*winding
inline BigComplex log_branch(const BigComplex& a, long winding) {
  BigComplex l = log(a);
  if (winding != 0) {
    BigFloat twopi = BigFloat::pi(a.precision()) * 2L;
    l.im += twopi * BigFloat(winding, a.precision());
  }
  return l;
}

// a^e for rational e on the sheet given by winding (0 = principal)
inline BigComplex pow_rat(const BigComplex& a, const Rat& e, long winding = 0) {
  if (a.is_zero()) {
    if (e > 0) return BigComplex(a.precision());
    throw error("pow: zero base with non-positive exponent");
  }
  if (is_integer(e) && winding == 0 && fits_long(e)) {
    long n = to_long(e);
    BigComplex r(1L, a.precision());
    BigComplex b = n >= 0 ? a : inverse(a);
    unsigned long k = n >= 0 ? n : -static_cast<unsigned long>(n);
    while (k) {
      if (k & 1) r *= b;
      b *= b;
      k >>= 1;
    }
    return r;
  }
  BigComplex l = log_branch(a, winding);
  BigFloat ef(e, a.precision());
  return exp(BigComplex(l.re * ef, l.im * ef));
}

inline BigComplex pow_cx(const BigComplex& a, const BigComplex& e, long winding = 0) {
  if (a.is_zero()) {
    if (e.re.sign() > 0) return BigComplex(a.precision());
    throw error("pow: zero base with non-positive exponent");
  }
  return exp(log_branch(a, winding) * e);
}

}  // namespace fuchs
