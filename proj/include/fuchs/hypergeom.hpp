#pragma once

// Generalized hypergeometric operators pFq and their series/pullbacks.
// Parameters are exact: rationals or number field elements (all sharing one
// field).  The operator in delta form is
//   delta (delta + b_1 - 1) ... (delta + b_q - 1) - x (delta + a_1) ... (delta + a_p)
// acting on sum_n c_n x^n with c_{n+1}/c_n = prod(a_i + n) / (prod(b_j + n) (n + 1)).

#include <string>
#include <vector>

#include "fuchs/diffop.hpp"

namespace fuchs {

struct HypergeomParams {
  std::vector<NFElem> upper;  // a_1..a_p
  std::vector<NFElem> lower;  // b_1..b_q

  int order() const {
    return std::max(static_cast<int>(upper.size()), static_cast<int>(lower.size()) + 1);
  }
  // no lower parameter may be a nonpositive integer (series undefined)
  void validate() const;
  // the common number field of all parameters (null when all rational)
  FieldPtr field() const;
  std::string to_string() const;
  // "pFq:a1,a2;b1" with rational entries; parses plain rationals only
  static HypergeomParams parse(const std::string& spec);
};

// operator annihilating the hypergeometric series, in delta form
DeltaOpT<NFElem> hypergeom_delta(const HypergeomParams& P);

// same operator converted to d/dx form; rational-parameter overload projects
// to Q coefficients
DiffOpT<NFElem> hypergeom_operator(const HypergeomParams& P);
DiffOp hypergeom_operator_q(const HypergeomParams& P);

// truncated series, N coefficients
std::vector<NFElem> hypergeom_series(const HypergeomParams& P, int N);

// annihilator of F(lambda(x)) over Q (rational parameters only)
DiffOp pullback_hypergeom(const HypergeomParams& P, const RatFunc<Rat>& lambda);

}  // namespace fuchs
