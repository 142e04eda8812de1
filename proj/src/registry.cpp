#include "fuchs/registry.hpp"

#include "fuchs/hypergeom.hpp"

namespace fuchs {

namespace {

Poly<Rat> P(std::initializer_list<long> cs) {
  std::vector<Rat> v;
  v.reserve(cs.size());
  for (long c : cs) v.emplace_back(c);
  return Poly<Rat>(std::move(v));
}

// x^2 (x^2 - 34x + 1) y''' + x (6x^2 - 153x + 3) y''
//   + (7x^2 - 112x + 1) y' + (x - 5) y
DiffOp apery3() {
  return DiffOp({P({-5, 1}), P({1, -112, 7}), P({0, 3, -153, 6}), P({0, 0, 1, -34, 1})});
}

// x (x^2 - 34x + 1) y'' + (2x^2 - 51x + 1) y' + 1/4 (x - 10) y
DiffOp dwork2() {
  std::vector<Poly<Rat>> p(3);
  p[0] = Poly<Rat>{make_rat(-10, 4), make_rat(1, 4)};
  p[1] = P({1, -51, 2});
  p[2] = P({0, 1, -34, 1});
  return DiffOp(std::move(p));
}

// 4 x^2 (x^2 - 34x + 1)^2 y'' + (x^4 - 44x^3 + 1206x^2 - 44x + 1) y
DiffOp eq5() {
  std::vector<Poly<Rat>> p(3);
  p[0] = P({1, -44, 1206, -44, 1});
  p[1] = Poly<Rat>();
  p[2] = P({0, 0, 4, -272, 4632, -272, 4});
  return DiffOp(std::move(p));
}

}  // namespace

DiffOp registry_operator(const std::string& key) {
  if (key == "apery3") return apery3();
  if (key == "dwork2") return dwork2();
  if (key == "eq5") return eq5();
  if (key == "eq7-sym2") return sym_square(eq5());
  const std::string hyp = "hypergeom:";
  if (key.rfind(hyp, 0) == 0)
    return hypergeom_operator_q(HypergeomParams::parse(key.substr(hyp.size())));
  throw error("registry: unknown operator key '" + key + "'");
}

std::vector<std::string> registry_keys() {
  return {"apery3", "dwork2", "eq5", "eq7-sym2"};
}

}  // namespace fuchs
