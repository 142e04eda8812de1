#pragma once

// Exact rational scalars on top of GMP's mpq_class, plus the handful of
// helpers the rest of the library needs (parsing, printing, integrality
// checks, exact square roots).

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace fuchs {

using Rat = mpq_class;
using Int = mpz_class;

struct error : std::runtime_error {
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

inline Rat make_rat(long num, long den) {
  if (den == 0) throw error("make_rat: zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

// Accepts "p", "p/q", and leading '-'.  Whitespace is not tolerated; callers
// strip it.  Throws on malformed input or zero denominator.
inline Rat rat_from_string(const std::string& s) {
  if (s.empty()) throw error("rat_from_string: empty string");
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw error("rat_from_string: bad rational '" + s + "'");
  if (q.get_den() == 0) throw error("rat_from_string: zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rat& q) { return q.get_str(); }

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

inline bool fits_long(const Rat& q) {
  return is_integer(q) && q.get_num().fits_slong_p();
}

inline long to_long(const Rat& q) {
  if (!fits_long(q)) throw error("to_long: " + to_string(q) + " is not a small integer");
  return q.get_num().get_si();
}

inline Rat rat_floor(const Rat& q) {
  Int f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return Rat(f);
}

// Exact square root of a rational if it is a perfect square of one.
inline std::optional<Rat> rat_sqrt(const Rat& q) {
  if (q < 0) return std::nullopt;
  const Int& n = q.get_num();
  const Int& d = q.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t()))
    return std::nullopt;
  Int rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  Rat r(rn, rd);
  r.canonicalize();
  return r;
}

inline Int rat_gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int rat_lcm(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

}  // namespace fuchs
