#pragma once

// Named operator registry.  Fixed keys for the operators the test suite and
// CLI exercise repeatedly, plus "hypergeom:pFq:a1,...;b1,..." keys built on
// demand.

#include <string>
#include <vector>

#include "fuchs/diffop.hpp"

namespace fuchs {

// throws on unknown key
DiffOp registry_operator(const std::string& key);

// fixed keys only (hypergeom family excluded)
std::vector<std::string> registry_keys();

}  // namespace fuchs
