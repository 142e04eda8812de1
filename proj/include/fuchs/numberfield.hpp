#pragma once

// Number fields Q[t]/(m(t)) with a distinguished complex embedding, selected
// by an isolating box.  Elements with a null field pointer are plain
// rationals; binary operations unify fields and reject mismatches.

#include <memory>
#include <optional>
#include <string>

#include "fuchs/bigcomplex.hpp"
#include "fuchs/poly.hpp"

namespace fuchs {

struct ComplexBox {
  Rat re, im, radius;  // square |Re z - re| <= radius, |Im z - im| <= radius
  bool operator==(const ComplexBox& o) const = default;
  bool contains(const BigComplex& z, mpfr_prec_t prec) const {
    BigFloat r(radius, prec);
    return abs(z.re - BigFloat(re, prec)) <= r && abs(z.im - BigFloat(im, prec)) <= r;
  }
};

class NumberField {
 public:
  // m must be monic of degree >= 2 and irreducible over Q; irreducibility is
  // the caller's contract for internally constructed fields and is checked by
  // the JSON loader for external data.
  static std::shared_ptr<const NumberField> make(Poly<Rat> m, ComplexBox box);

  const Poly<Rat>& minpoly() const { return m_; }
  const ComplexBox& box() const { return box_; }
  int degree() const { return m_.degree(); }

  // The embedding root at the requested precision.  Throws if the box fails
  // to isolate exactly one root of the minimal polynomial.
  BigComplex root(mpfr_prec_t prec) const;

  bool same_field(const NumberField& o) const {
    return m_ == o.m_ && box_ == o.box_;
  }

 private:
  NumberField(Poly<Rat> m, ComplexBox box) : m_(std::move(m)), box_(std::move(box)) {}
  Poly<Rat> m_;
  ComplexBox box_;
  mutable BigComplex cached_root_{2};
  mutable mpfr_prec_t cached_prec_ = 0;
};

using FieldPtr = std::shared_ptr<const NumberField>;

class NFElem {
 public:
  NFElem() = default;
  NFElem(long v) : rep_(Poly<Rat>::constant(Rat(v))) {}  // NOLINT: implicit by design
  NFElem(const Rat& v) : rep_(Poly<Rat>::constant(v)) {}  // NOLINT
  NFElem(FieldPtr F, Poly<Rat> rep) : F_(std::move(F)), rep_(std::move(rep)) {
    reduce();
  }
  // the generator t of F
  static NFElem gen(FieldPtr F) { return NFElem(std::move(F), Poly<Rat>::x()); }

  const FieldPtr& field() const { return F_; }
  const Poly<Rat>& rep() const { return rep_; }
  bool is_zero() const { return rep_.is_zero(); }
  bool is_rational() const { return rep_.degree() <= 0; }
  Rat rat_value() const {
    if (!is_rational()) throw error("NFElem: not rational");
    return rep_.coeff(0);
  }

  bool operator==(const NFElem& o) const {
    if (!compatible(F_, o.F_)) return false;
    return rep_ == o.rep_;
  }
  bool operator!=(const NFElem& o) const { return !(*this == o); }

  NFElem operator-() const { return raw(F_, -rep_); }
  friend NFElem operator+(const NFElem& a, const NFElem& b) {
    return raw(unify(a, b), a.rep_ + b.rep_);
  }
  friend NFElem operator-(const NFElem& a, const NFElem& b) {
    return raw(unify(a, b), a.rep_ - b.rep_);
  }
  friend NFElem operator*(const NFElem& a, const NFElem& b) {
    NFElem r = raw(unify(a, b), a.rep_ * b.rep_);
    r.reduce();
    return r;
  }
  friend NFElem operator/(const NFElem& a, const NFElem& b) { return a * b.inverse(); }
  NFElem& operator+=(const NFElem& o) { return *this = *this + o; }
  NFElem& operator-=(const NFElem& o) { return *this = *this - o; }
  NFElem& operator*=(const NFElem& o) { return *this = *this * o; }
  NFElem& operator/=(const NFElem& o) { return *this = *this / o; }

  NFElem inverse() const;

  BigComplex to_complex(mpfr_prec_t prec) const;

  // image under the map t -> image (image must lie in the same field); used
  // for Galois conjugation.
  NFElem map_generator(const NFElem& image) const;

  // trace of the multiplication-by-this matrix over Q
  Rat trace() const;

  std::string to_string(const std::string& var = "t") const {
    return poly_to_string(rep_, var);
  }

  static bool compatible(const FieldPtr& a, const FieldPtr& b) {
    if (!a || !b) return true;
    return a == b || a->same_field(*b);
  }

 private:
  static NFElem raw(FieldPtr F, Poly<Rat> rep) {
    NFElem e;
    e.F_ = std::move(F);
    e.rep_ = std::move(rep);
    return e;
  }
  static FieldPtr unify(const NFElem& a, const NFElem& b) {
    if (!compatible(a.F_, b.F_)) throw error("NFElem: number field mismatch");
    return a.F_ ? a.F_ : b.F_;
  }
  void reduce() {
    if (F_ && rep_.degree() >= F_->degree()) rep_ = rep_ % F_->minpoly();
  }

  FieldPtr F_;   // null = rational
  Poly<Rat> rep_;  // degree < deg(minpoly) when F_ set
};

// lift a rational polynomial into K_F coefficients
Poly<NFElem> lift_poly(const Poly<Rat>& p, const FieldPtr& F);

// exact square root in the element's field.  `unknown` is only reported for
// fields of degree >= 3, where this library does not attempt full relative
// factorization (callers fall back to numeric screening).
enum class SqrtStatus { found, none, unknown };
struct SqrtResult {
  SqrtStatus status;
  NFElem value;  // meaningful when status == found
};
SqrtResult sqrt_in_field(const NFElem& a);

inline std::string coeff_to_string(const NFElem& v) {
  if (v.is_rational()) return to_string(v.rat_value());
  return "(" + v.to_string() + ")";
}

}  // namespace fuchs
