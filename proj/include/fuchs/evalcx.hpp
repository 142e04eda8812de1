#pragma once

// Numeric evaluation of exact polynomials and rational functions at
// BigComplex points (precision taken from the point).

#include "fuchs/bigcomplex.hpp"
#include "fuchs/numberfield.hpp"
#include "fuchs/poly.hpp"
#include "fuchs/ratfunc.hpp"

namespace fuchs {

inline BigComplex eval_cx(const Poly<Rat>& p, const BigComplex& z) {
  mpfr_prec_t prec = z.precision();
  BigComplex acc(prec);
  for (size_t i = p.c.size(); i-- > 0;) acc = acc * z + BigComplex(p.c[i], prec);
  return acc;
}

inline BigComplex eval_cx(const Poly<NFElem>& p, const BigComplex& z) {
  mpfr_prec_t prec = z.precision();
  BigComplex acc(prec);
  for (size_t i = p.c.size(); i-- > 0;) acc = acc * z + p.c[i].to_complex(prec);
  return acc;
}

template <class T>
BigComplex eval_cx(const RatFunc<T>& f, const BigComplex& z) {
  BigComplex d = eval_cx(f.den, z);
  if (d.is_zero()) throw error("eval_cx: pole hit");
  return eval_cx(f.num, z) / d;
}

}  // namespace fuchs
