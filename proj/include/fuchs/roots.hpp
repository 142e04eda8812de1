#pragma once

// Numeric root isolation for squarefree rational polynomials: simultaneous
// (Aberth) iteration with precision escalation, used to seed isolating boxes
// and to refine number field embeddings.

#include <vector>

#include "fuchs/bigcomplex.hpp"
#include "fuchs/poly.hpp"

namespace fuchs {

// All complex roots of a squarefree p, each accurate to roughly 2^-prec
// relative error, sorted by (re, im).  Throws if iteration fails to settle
// after several precision escalations (not observed for the degrees this
// library targets, <= ~64).
std::vector<BigComplex> complex_roots(const Poly<Rat>& p, mpfr_prec_t prec);

// One Newton refinement pass of p at z0 until the step is below 2^-(prec+8),
// at working precision prec + guard.
BigComplex newton_refine(const Poly<Rat>& p, const BigComplex& z0, mpfr_prec_t prec);

}  // namespace fuchs
