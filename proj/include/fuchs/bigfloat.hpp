#pragma once

// Arbitrary-precision reals on MPFR.  Precision is explicit: every value
// carries its own precision, binary operations widen to the larger of the
// two, and rounding is always to nearest.

#include <mpfr.h>

#include <string>
#include <utility>

#include "fuchs/rat.hpp"

namespace fuchs {

class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t prec = 64) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  BigFloat(long x, mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_si(v_, x, MPFR_RNDN); }
  BigFloat(double x, mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_d(v_, x, MPFR_RNDN); }
  BigFloat(const Rat& q, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
  }
  BigFloat(const BigFloat& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }
  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  BigFloat& operator=(BigFloat&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  BigFloat rounded(mpfr_prec_t prec) const {
    BigFloat r(prec);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
  }
  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  static BigFloat pi(mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
  }
  static BigFloat from_string(const std::string& s, mpfr_prec_t prec);

  bool is_zero() const { return mpfr_zero_p(v_); }
  int sign() const { return mpfr_sgn(v_); }
  // exponent e with |x| in [2^(e-1), 2^e); 0 for x = 0
  long exponent2() const { return is_zero() ? 0 : mpfr_get_exp(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  std::string to_string(size_t digits = 0) const;

  friend BigFloat operator-(const BigFloat& a) {
    BigFloat r(a.precision());
    mpfr_neg(r.v_, a.v_, MPFR_RNDN);
    return r;
  }

#define FUCHS_BF_BINOP(op, fn)                                          \
  friend BigFloat operator op(const BigFloat& a, const BigFloat& b) {   \
    BigFloat r(std::max(a.precision(), b.precision()));                 \
    fn(r.v_, a.v_, b.v_, MPFR_RNDN);                                    \
    return r;                                                           \
  }                                                                     \
  BigFloat& operator op##=(const BigFloat& b) {                         \
    if (precision() < b.precision()) mpfr_prec_round(v_, b.precision(), MPFR_RNDN); \
    fn(v_, v_, b.v_, MPFR_RNDN);                                        \
    return *this;                                                       \
  }
  FUCHS_BF_BINOP(+, mpfr_add)
  FUCHS_BF_BINOP(-, mpfr_sub)
  FUCHS_BF_BINOP(*, mpfr_mul)
  FUCHS_BF_BINOP(/, mpfr_div)
#undef FUCHS_BF_BINOP

  friend BigFloat operator*(const BigFloat& a, long b) {
    BigFloat r(a.precision());
    mpfr_mul_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator/(const BigFloat& a, long b) {
    BigFloat r(a.precision());
    mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }

  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
  friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }
  friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) == 0; }
  friend bool operator!=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) != 0; }

#define FUCHS_BF_UN(name, fn)                   \
  friend BigFloat name(const BigFloat& a) {     \
    BigFloat r(a.precision());                  \
    fn(r.v_, a.v_, MPFR_RNDN);                  \
    return r;                                   \
  }
  FUCHS_BF_UN(abs, mpfr_abs)
  FUCHS_BF_UN(sqrt, mpfr_sqrt)
  FUCHS_BF_UN(exp, mpfr_exp)
  FUCHS_BF_UN(log, mpfr_log)
  FUCHS_BF_UN(sin, mpfr_sin)
  FUCHS_BF_UN(cos, mpfr_cos)
#undef FUCHS_BF_UN

  friend BigFloat atan2(const BigFloat& y, const BigFloat& x) {
    BigFloat r(std::max(y.precision(), x.precision()));
    mpfr_atan2(r.v_, y.v_, x.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat hypot(const BigFloat& x, const BigFloat& y) {
    BigFloat r(std::max(y.precision(), x.precision()));
    mpfr_hypot(r.v_, x.v_, y.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat pow_si(const BigFloat& a, long e) {
    BigFloat r(a.precision());
    mpfr_pow_si(r.v_, a.v_, e, MPFR_RNDN);
    return r;
  }
  friend BigFloat ldexp2(const BigFloat& a, long e) {
    BigFloat r(a.precision());
    mpfr_mul_2si(r.v_, a.v_, e, MPFR_RNDN);
    return r;
  }
  friend BigFloat min(const BigFloat& a, const BigFloat& b) { return a < b ? a : b; }
  friend BigFloat max(const BigFloat& a, const BigFloat& b) { return a > b ? a : b; }

 private:
  mpfr_t v_;
};

}  // namespace fuchs
