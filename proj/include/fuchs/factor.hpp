#pragma once

// Exact factorization over Q: Yun squarefree decomposition plus
// Berlekamp/Hensel/Zassenhaus irreducible factorization.  Tuned for the
// degrees differential operators produce here (up to roughly 64); the
// recombination stage enumerates subsets and refuses pathological modular
// splittings rather than running forever.

#include <utility>
#include <vector>

#include "fuchs/poly.hpp"

namespace fuchs {

struct FactorPair {
  Poly<Rat> factor;  // monic, irreducible over Q
  int multiplicity;
};

struct Factorization {
  Rat constant;  // p = constant * prod factor^multiplicity
  std::vector<FactorPair> factors;
};

// (squarefree part, multiplicity) pairs with distinct multiplicities,
// pairwise coprime monic parts.
std::vector<std::pair<Poly<Rat>, int>> squarefree_decomposition(const Poly<Rat>& p);

// Full irreducible factorization over Q (squarefree decomposition first,
// then one Zassenhaus round per part).
Factorization factor_squarefree(const Poly<Rat>& p);

bool is_irreducible(const Poly<Rat>& p);

// All rational roots with multiplicities, read off the linear factors.
std::vector<std::pair<Rat, int>> rational_roots(const Poly<Rat>& p);

}  // namespace fuchs
