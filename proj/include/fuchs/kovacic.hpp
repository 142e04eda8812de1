#pragma once

// Kovacic's algorithm for y'' = r y with r in Q(x): classify the differential
// Galois group into the four cases and produce exact Liouvillian witnesses in
// Cases 1-3.  Conjugate poles of one irreducible denominator factor are
// processed together in Q[t]/(m(t)); candidate exponent sums over such
// families use field traces so the degree bound d stays rational.  Searches
// are exact; the only numeric step is a screening interval that may PRUNE a
// candidate whose degree bound is provably not a non-negative integer, and
// the classifier throws rather than guess when a candidate survives screening
// without exact data (does not occur for poles in fields of degree <= 2).

#include <string>
#include <vector>

#include "fuchs/diffop.hpp"
#include "fuchs/ratfunc.hpp"

namespace fuchs {

// Laurent data of r at one pole site.  A site is an irreducible monic factor
// m of den(r); the conjugate poles over m share the site, with `point` the
// distinguished embedding.
struct PoleData {
  Poly<Rat> m;   // monic irreducible factor of den(r)
  int order = 0; // pole order of r at each root of m
  FieldPtr F;    // non-null iff deg(m) >= 2
  NFElem point;  // the pole: rational value or generator of F
  // r's Laurent coefficients at the pole, exponents -order, -order+1, ...
  std::vector<NFElem> laurent;
  // for even order 2v >= 4 with an exactly representable square root: the
  // principal part of sqrt(r), coefficients of (x-point)^{-v} .. (x-point)^{-2}
  std::vector<NFElem> sqrt_part;
  NFElem sqrt_b;         // following coefficient of r - [sqrt r]^2
  bool sqrt_ok = false;  // sqrt_part/sqrt_b populated

  int family_size() const { return m.degree(); }
};

enum class KovacicCase { Case1 = 1, Case2 = 2, Case3 = 3, Case4 = 4 };
enum class GaloisLabel { Triangular, Dihedral, Finite, SL2, PSL2 };

std::string to_string(KovacicCase c);
std::string to_string(GaloisLabel g);

struct KovacicResult {
  KovacicCase tag = KovacicCase::Case4;
  // minimal polynomial of an algebraic Riccati solution u = y'/y, monic in u,
  // coefficients in F(x) lowest u-degree first; u-degree 1 in Case 1, 2 in
  // Case 2, one of 4/6/12 in Case 3; empty in Case 4
  std::vector<RatFunc<NFElem>> min_poly;
  FieldPtr field;  // coefficient field of the witness (null = Q)

  bool has_witness() const { return !min_poly.empty(); }
  int witness_degree() const { return static_cast<int>(min_poly.size()) - 1; }
  // Case 1 only: the rational Riccati solution u with u' + u^2 = r
  RatFunc<NFElem> riccati() const;
  std::string to_string() const;
};

// Laurent expansions of r at every pole site, `extra` coefficients beyond the
// principal part; deterministic order (factor degree, then coefficients)
std::vector<PoleData> pole_data(const RatFunc<Rat>& r, int extra = 0);

KovacicResult classify(const RatFunc<Rat>& r);

// Galois label of the order-2 equation itself (Case4 -> SL2)
GaloisLabel galois_label(const KovacicResult& res);

// label of the symmetric-square (order 3) system: PSL2 exactly in Case 4
GaloisLabel classify_sym_square(const RatFunc<Rat>& r);

// exact certificate check: dM/dx + dM/du * (r - u^2) == 0 modulo M(u), the
// consistency of the witness minimal polynomial with the Riccati flow
bool verify_witness(const RatFunc<Rat>& r, const KovacicResult& w);

}  // namespace fuchs
