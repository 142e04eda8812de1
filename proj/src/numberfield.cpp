#include "fuchs/numberfield.hpp"

#include "fuchs/roots.hpp"

namespace fuchs {

std::shared_ptr<const NumberField> NumberField::make(Poly<Rat> m, ComplexBox box) {
  if (m.degree() < 2) throw error("NumberField: minimal polynomial must have degree >= 2");
  if (!(m.lc() == Rat(1))) throw error("NumberField: minimal polynomial must be monic");
  return std::shared_ptr<const NumberField>(new NumberField(std::move(m), std::move(box)));
}

BigComplex NumberField::root(mpfr_prec_t prec) const {
  if (cached_prec_ < prec) {
    // locate: all roots at moderate precision, demand exactly one in the box
    mpfr_prec_t locate_prec = std::max<mpfr_prec_t>(prec, 128);
    auto rs = complex_roots(m_, locate_prec);
    int hits = 0;
    BigComplex found(locate_prec);
    for (const auto& r : rs) {
      if (box_.contains(r, locate_prec)) {
        ++hits;
        found = r;
      }
    }
    if (hits != 1)
      throw error("NumberField: box isolates " + std::to_string(hits) +
                  " roots of " + poly_to_string(m_, "t") + " instead of one");
    // A box centered on the real axis that isolates a single root of a real
    // polynomial pins that root to the axis (complex roots would enter with
    // their conjugates).  Zero the imaginary part exactly so downstream
    // branch decisions cannot hinge on refinement dust; newton_refine only
    // uses field arithmetic and keeps an exact zero intact.
    if (box_.im == Rat(0)) found.im = BigFloat(0L, locate_prec);
    cached_root_ = newton_refine(m_, found, prec);
    cached_prec_ = prec;
  }
  // Round to the request: excess cached precision must not leak, or results
  // would depend on the refinement history of this shared field object.
  return BigComplex(cached_root_.re.rounded(prec), cached_root_.im.rounded(prec));
}

NFElem NFElem::inverse() const {
  if (is_zero()) throw error("NFElem: inverse of zero");
  if (is_rational()) return NFElem(Rat(1) / rat_value());
  // extended Euclid: s*rep + t*m = g with g constant since m is irreducible
  Poly<Rat> r0 = F_->minpoly(), r1 = rep_;
  Poly<Rat> s0, s1 = Poly<Rat>::constant(Rat(1));
  while (r1.degree() > 0) {
    auto [q, r2] = divrem(r0, r1);
    Poly<Rat> s2 = s0 - q * s1;
    r0 = r1;
    r1 = r2;
    s0 = s1;
    s1 = s2;
  }
  if (r1.is_zero())
    throw error("NFElem: minimal polynomial is reducible (inverse failed)");
  return NFElem(F_, s1 / r1.coeff(0));
}

BigComplex NFElem::to_complex(mpfr_prec_t prec) const {
  if (!F_ || is_rational())
    return BigComplex(is_zero() ? Rat(0) : rep_.coeff(0), prec);
  BigComplex t = F_->root(prec + 16);
  BigComplex acc(0L, prec + 16);
  for (size_t i = rep_.c.size(); i-- > 0;)
    acc = acc * t + BigComplex(rep_.c[i], prec + 16);
  return acc;
}

NFElem NFElem::map_generator(const NFElem& image) const {
  if (!F_) return *this;
  if (!compatible(F_, image.field()) && image.field())
    throw error("NFElem: conjugation target lives in a different field");
  NFElem acc(0);
  for (size_t i = rep_.c.size(); i-- > 0;) acc = acc * image + NFElem(rep_.c[i]);
  return acc;
}

Rat NFElem::trace() const {
  if (!F_ || is_rational()) {
    Rat v = is_zero() ? Rat(0) : rep_.coeff(0);
    return v * Rat(F_ ? F_->degree() : 1);
  }
  int k = F_->degree();
  // trace of multiplication matrix: sum over basis monomials t^i of the
  // t^i-coefficient of rep * t^i mod m
  Rat tr(0);
  Poly<Rat> cur = rep_;
  for (int i = 0; i < k; ++i) {
    tr += cur.coeff(i);
    cur = cur.shifted_up(1) % F_->minpoly();
  }
  return tr;
}

Poly<NFElem> lift_poly(const Poly<Rat>& p, const FieldPtr& F) {
  std::vector<NFElem> cs;
  cs.reserve(p.c.size());
  for (const auto& v : p.c) cs.push_back(F ? NFElem(F, Poly<Rat>::constant(v)) : NFElem(v));
  return Poly<NFElem>(std::move(cs));
}

namespace {

std::optional<Rat> sqrt_rat(const Rat& a) { return rat_sqrt(a); }

// y^2 = a over Q[t]/(t^2 + p t + q)
std::optional<NFElem> sqrt_quadratic(const NFElem& a) {
  const FieldPtr& F = a.field();
  Rat p = F->minpoly().coeff(1), q = F->minpoly().coeff(0);
  Rat a0 = a.rep().coeff(0), a1 = a.rep().coeff(1);
  auto make = [&](const Rat& u, const Rat& v) {
    return NFElem(F, Poly<Rat>{u, v});
  };
  auto check = [&](const NFElem& y) -> std::optional<NFElem> {
    if (y * y == a) return y;
    return std::nullopt;
  };
  if (a1 == 0) {
    if (auto u = sqrt_rat(a0)) return make(*u, Rat(0));
    // y = u + v t with 2u = p v: u = pv/2, (p^2/4 - q) v^2 = a0
    Rat denom = p * p / 4 - q;
    if (denom != 0) {
      if (auto v = sqrt_rat(a0 / denom)) {
        if (auto y = check(make(p * *v / 2, *v))) return y;
        if (auto y = check(make(-p * *v / 2, -*v))) return y;
      }
    }
    return std::nullopt;
  }
  // v != 0, u = (a1 + p v^2)/(2 v); w = v^2 solves
  // (p^2 - 4q) w^2 + (2 p a1 - 4 a0) w + a1^2 = 0
  Rat A = p * p - 4 * q, B = 2 * p * a1 - 4 * a0, C = a1 * a1;
  // A = disc(m) != 0 for an irreducible quadratic
  Rat disc = B * B - 4 * A * C;
  auto sd = sqrt_rat(disc);
  if (!sd) return std::nullopt;
  for (int sgn : {1, -1}) {
    Rat w = (-B + Rat(sgn) * *sd) / (2 * A);
    if (w <= 0) continue;
    auto v = sqrt_rat(w);
    if (!v) continue;
    for (int vs : {1, -1}) {
      Rat vv = Rat(vs) * *v;
      Rat u = (a1 + p * vv * vv) / (2 * vv);
      if (auto y = check(make(u, vv))) return y;
    }
  }
  return std::nullopt;
}

}  // namespace

SqrtResult sqrt_in_field(const NFElem& a) {
  if (a.is_zero()) return {SqrtStatus::found, NFElem(0)};
  if (a.is_rational()) {
    auto r = sqrt_rat(a.rat_value());
    if (r) {
      NFElem v = a.field() ? NFElem(a.field(), Poly<Rat>::constant(*r)) : NFElem(*r);
      return {SqrtStatus::found, v};
    }
    // a negative or non-square rational can still be a square of a field
    // element when the field contains the right radical
    if (!a.field()) return {SqrtStatus::none, NFElem(0)};
  }
  if (a.field() && a.field()->degree() == 2) {
    auto y = sqrt_quadratic(a);
    if (y) return {SqrtStatus::found, *y};
    return {SqrtStatus::none, NFElem(0)};
  }
  return {SqrtStatus::unknown, NFElem(0)};
}

}  // namespace fuchs
