#include "fuchs/bigfloat.hpp"

#include <cstdlib>
#include <cstring>

namespace fuchs {

BigFloat BigFloat::from_string(const std::string& s, mpfr_prec_t prec) {
  BigFloat r(prec);
  if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0)
    throw error("BigFloat: bad literal '" + s + "'");
  return r;
}

std::string BigFloat::to_string(size_t digits) const {
  if (mpfr_nan_p(v_)) return "nan";
  if (mpfr_inf_p(v_)) return sign() > 0 ? "inf" : "-inf";
  if (is_zero()) return "0";
  if (digits == 0) digits = static_cast<size_t>(precision() * 0.30103) + 2;
  mpfr_exp_t e;
  char* raw = mpfr_get_str(nullptr, &e, 10, digits, v_, MPFR_RNDN);
  if (!raw) throw error("BigFloat: mpfr_get_str failed");
  std::string mant(raw);
  mpfr_free_str(raw);
  bool neg = !mant.empty() && mant[0] == '-';
  if (neg) mant = mant.substr(1);
  // strip trailing zeros but keep at least one digit
  size_t last = mant.find_last_not_of('0');
  mant = mant.substr(0, std::max<size_t>(last + 1, 1));
  std::string out;
  // mantissa is 0.d1d2... * 10^e; print positionally when the exponent is tame
  if (e > 0 && static_cast<size_t>(e) <= digits + 4 && static_cast<size_t>(e) >= mant.size()) {
    out = mant + std::string(e - mant.size(), '0');
  } else if (e > 0 && static_cast<size_t>(e) < mant.size() && e <= 40) {
    out = mant.substr(0, e) + "." + mant.substr(e);
  } else if (e <= 0 && e > -6) {
    out = "0." + std::string(-e, '0') + mant;
  } else {
    out = "0." + mant + "e" + std::to_string(e);
  }
  return neg ? "-" + out : out;
}

}  // namespace fuchs
