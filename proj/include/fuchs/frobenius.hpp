#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fuchs/bigcomplex.hpp"
#include "fuchs/diffop.hpp"

namespace fuchs {

// One solution of L y = 0 in a slit disc around x0, written in the local
// coordinate w = x - x0 (w = 1/x when x0 is the point at infinity):
//
//   y(w) = w^rho * sum_{a=0}^{log_degree} ( sum_n coeff[a][n] w^n ) log(w)^a
//
// Coefficients are exact number-field elements when every exponent in the
// resonance class is rational; otherwise they are floats at the precision
// local_basis was run with.  Exact coefficients at an algebraic point live in
// that point's field, so a Galois conjugate point reuses the same data with
// the other embedding.
struct LocalSolution {
  AlgebraicPoint point;
  bool at_inf = false;
  bool exact = true;

  Rat exponent;            // valid on the exact path
  BigComplex exponent_cx;  // always valid
  int log_degree = 0;
  long trunc = 0;  // coefficients per log block

  std::vector<std::vector<NFElem>> blocks;       // exact path, [a][n]
  std::vector<std::vector<BigComplex>> nblocks;  // numeric path

  // distance from x0 to the nearest other singular point (radius of
  // convergence of the blocks); +inf when there is none
  BigFloat trust;

  BigComplex coeff_cx(int a, long n, mpfr_prec_t prec) const;
  std::string to_string() const;
};

struct LocalBasis {
  AlgebraicPoint point;
  bool at_inf = false;
  int order = 0;
  BigFloat trust;
  // sorted by (Re rho, Im rho, log_degree); size == order of the operator
  std::vector<LocalSolution> solutions;
};

// Frobenius basis at any point where L is regular (ordinary points included).
// nterms coefficients per log block; prec drives trust radii, the numeric
// path, and exponent grouping.  Throws at irregular singular points, and at
// algebraic points whose indicial polynomial fails to be rational.
LocalBasis local_basis(const DiffOp& L, const AlgebraicPoint& x0, long nterms,
                       mpfr_prec_t prec = 192);

struct LocalValue {
  BigComplex value;
  BigFloat tail;  // heuristic bound on the truncation error
};

// Evaluate at local coordinate w (working precision = w's).  winding selects
// the branch: log(w) + 2 pi i winding enters both the logs and the
// fractional powers.  Throws when |w| is too close to the trust radius for
// the geometric tail estimate to mean anything, and always at infinity.
LocalValue evaluate_local(const LocalSolution& s, const BigComplex& w,
                          long winding = 0);
LocalValue derivative_local(const LocalSolution& s, const BigComplex& w,
                            long winding = 0);
// values of s, s', ..., s^(nder-1) with d/dx = d/dw
std::vector<BigComplex> evaluate_jet(const LocalSolution& s,
                                     const BigComplex& w, long winding,
                                     int nder);

// Filters for picking one solution out of a basis.
struct Constraints {
  bool log_free = false;
  std::optional<Rat> exponent;
  // rescale so the coefficient of w^rho in the log-free block is this
  std::optional<Rat> leading;
};
LocalSolution distinguished_solution(const LocalBasis& basis,
                                     const Constraints& want);

// max |coefficient| of L(s) over the window where every contribution is
// known; exact solutions give an exact zero.  Validation helper.
BigFloat local_residual(const DiffOp& L, const LocalSolution& s,
                        mpfr_prec_t prec = 192);

}  // namespace fuchs
